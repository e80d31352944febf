use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::{is_isometry, pair_code};
use crate::divisible::is_maximal;
use crate::error::{Error, Result};
use crate::gf2::{LinearCode, LinearMap};
use crate::symmetry::{double_coset_reps, StabChain};

use super::parts::{PartsDb, PartsEntry};
use super::PipelineOptions;

/// The image of `Aut(C)` in `GL(C/R)`. `R` is determined by `C`, so
/// `Aut(C)` already stabilizes it.
pub fn g0_generators(entry: &PartsEntry) -> Result<Vec<LinearMap>> {
    let ctx = &entry.ctx;
    let mut gens = Vec::new();
    for p in &entry.aut_generators {
        let m = ctx.induced_map(p.images())?;
        if !is_isometry(ctx, ctx, &m) {
            return Err(Error::Precondition(
                "automorphism does not preserve the singular points".into(),
            ));
        }
        if !m.is_identity() && !gens.contains(&m) {
            gens.push(m);
        }
    }
    Ok(gens)
}

fn g1_generators(
    entry: &PartsEntry,
    g0: &[LinearMap],
    opts: &PipelineOptions,
) -> Result<(Vec<LinearMap>, u128)> {
    let s = entry.points.stabilizer_with(g0, opts.set_search_budget)?;
    Ok((s.generators, s.order))
}

fn check_index(
    g1_order: u128,
    b: &StabChain<LinearMap>,
    a: &StabChain<LinearMap>,
    limit: usize,
) -> Result<()> {
    let sub = a.order().max(b.order());
    let index = g1_order / sub;
    if index > limit as u128 {
        return Err(Error::Budget(format!(
            "coset space of size {index} exceeds the limit {limit}"
        )));
    }
    Ok(())
}

/// Result of the doubled construction for one database entry.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DuplexEntry {
    pub constructed: Vec<LinearCode>,
    pub excluded: bool,
}

/// Pair codes `D(g)` for double coset representatives `g` of
/// `G0 \ G1 / G0`; the identity coset is skipped when `dim R = prd`.
pub fn duplex_entry(entry: &PartsEntry, opts: &PipelineOptions) -> Result<DuplexEntry> {
    let ctx = &entry.ctx;
    let k = ctx.quotient_dim();
    let excluded = entry.radical_dim() == entry.prd();
    if k == 0 {
        let constructed = if excluded {
            Vec::new()
        } else {
            vec![ctx.radical.direct_sum(&ctx.radical)]
        };
        return Ok(DuplexEntry {
            constructed,
            excluded,
        });
    }
    let g0 = g0_generators(entry)?;
    let (g1, g1_order) = g1_generators(entry, &g0, opts)?;
    let chain = StabChain::new(LinearMap::identity(k), &g0);
    check_index(g1_order, &chain, &chain, opts.coset_limit)?;
    let mut reps = double_coset_reps(&g1, &chain, &chain, opts.coset_limit)?;
    if excluded {
        reps.remove(0);
    }
    let constructed = reps
        .iter()
        .map(|g| pair_code(ctx, ctx, g))
        .collect::<Result<Vec<_>>>()?;
    Ok(DuplexEntry {
        constructed,
        excluded,
    })
}

/// Maximal codes found, pair codes built, and entries whose identity
/// coset was skipped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DuplexCounts {
    pub maximal: usize,
    pub constructed: usize,
    pub excluded: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HybridCounts {
    pub pairs: usize,
    pub constructed: usize,
    pub maximal: usize,
}

#[derive(Clone, Debug, Default)]
pub struct DuplexOutcome {
    pub counts: DuplexCounts,
    pub maximal: Vec<LinearCode>,
}

#[derive(Clone, Debug, Default)]
pub struct HybridOutcome {
    pub counts: HybridCounts,
    pub maximal: Vec<LinearCode>,
}

pub(crate) fn maximal_only(codes: &[LinearCode]) -> Result<Vec<LinearCode>> {
    let mut out = Vec::new();
    for c in codes {
        if is_maximal(c)? {
            out.push(c.clone());
        }
    }
    Ok(out)
}

/// Runs [`duplex_entry`] over the database. `done` supplies results
/// already computed (by flat index), `on_entry` receives new ones.
pub fn duplex_classify_with(
    db: &PartsDb,
    opts: &PipelineOptions,
    done: &dyn Fn(usize) -> Option<DuplexEntry>,
    on_entry: &(dyn Fn(usize, &DuplexEntry) -> Result<()> + Sync),
) -> Result<DuplexOutcome> {
    let entries: Vec<&PartsEntry> = db.entries().collect();
    let cached: Vec<Option<DuplexEntry>> = (0..entries.len()).map(done).collect();
    let results = opts.install(|| {
        entries
            .par_iter()
            .zip(cached.into_par_iter())
            .enumerate()
            .map(|(i, (e, c))| -> Result<DuplexEntry> {
                if let Some(c) = c {
                    return Ok(c);
                }
                opts.check_deadline("duplex construction")?;
                let r = duplex_entry(e, opts)?;
                on_entry(i, &r)?;
                Ok(r)
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let mut out = DuplexOutcome::default();
    for r in results {
        out.counts.constructed += r.constructed.len();
        out.counts.excluded += r.excluded as usize;
        out.maximal.extend(maximal_only(&r.constructed)?);
    }
    out.counts.maximal = out.maximal.len();
    Ok(out)
}

pub fn duplex_classify(db: &PartsDb, opts: &PipelineOptions) -> Result<DuplexOutcome> {
    duplex_classify_with(db, opts, &|_| None, &|_, _| Ok(()))
}

/// Pairs `i < j` (flat indices) with equal quotient dimension, equal
/// number of singular points and isomorphic singular sets, each with an
/// isometry `C_i/R_i -> C_j/R_j`.
pub fn isometric_pairs(
    db: &PartsDb,
    opts: &PipelineOptions,
) -> Result<Vec<(usize, usize, LinearMap)>> {
    let entries: Vec<&PartsEntry> = db.entries().collect();
    let sigs: Vec<_> = entries.iter().map(|e| e.points.signature()).collect();
    let candidates: Vec<(usize, usize)> = (0..entries.len())
        .flat_map(|i| (i + 1..entries.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| {
            let (a, b) = (&entries[i].ctx, &entries[j].ctx);
            a.quotient_dim() == b.quotient_dim()
                && a.singular.len() == b.singular.len()
                && sigs[i] == sigs[j]
        })
        .collect();
    let found = opts.install(|| {
        candidates
            .par_iter()
            .map(|&(i, j)| -> Result<Option<(usize, usize, LinearMap)>> {
                let h = entries[i]
                    .points
                    .isomorphism_to(&entries[j].points, opts.set_search_budget)?;
                Ok(h.map(|h| (i, j, h)))
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let pairs: Vec<_> = found.into_iter().flatten().collect();
    for (i, j, h) in &pairs {
        if !is_isometry(&entries[*i].ctx, &entries[*j].ctx, h) {
            return Err(Error::Precondition(
                "set isomorphism is not an isometry".into(),
            ));
        }
    }
    Ok(pairs)
}

/// Pair codes `D(h∘g)` for representatives `g` of
/// `(h⁻¹ G0(C2) h) \ G1(C1) / G0(C1)`.
pub fn hybrid_pair(
    e1: &PartsEntry,
    e2: &PartsEntry,
    h: &LinearMap,
    opts: &PipelineOptions,
) -> Result<Vec<LinearCode>> {
    let (c1, c2) = (&e1.ctx, &e2.ctx);
    let k = c1.quotient_dim();
    if k == 0 {
        return Ok(vec![c1.radical.direct_sum(&c2.radical)]);
    }
    let h_inv = h
        .inverse()
        .ok_or_else(|| Error::Precondition("isometry is not invertible".into()))?;
    let a_gens: Vec<LinearMap> = g0_generators(e2)?
        .iter()
        .map(|g| h_inv.compose(&g.compose(h)))
        .collect();
    let b_gens = g0_generators(e1)?;
    let (g1, g1_order) = g1_generators(e1, &b_gens, opts)?;
    let id = LinearMap::identity(k);
    let a = StabChain::new(id.clone(), &a_gens);
    let b = StabChain::new(id, &b_gens);
    check_index(g1_order, &b, &a, opts.coset_limit)?;
    let reps = double_coset_reps(&g1, &a, &b, opts.coset_limit)?;
    reps.iter()
        .map(|g| pair_code(c1, c2, &h.compose(g)))
        .collect()
}

pub fn hybrid_classify(db: &PartsDb, opts: &PipelineOptions) -> Result<HybridOutcome> {
    let entries: Vec<&PartsEntry> = db.entries().collect();
    let pairs = isometric_pairs(db, opts)?;
    let lists = opts.install(|| {
        pairs
            .par_iter()
            .map(|(i, j, h)| {
                opts.check_deadline("hybrid construction")?;
                hybrid_pair(entries[*i], entries[*j], h, opts)
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let mut out = HybridOutcome::default();
    out.counts.pairs = pairs.len();
    for l in lists {
        out.counts.constructed += l.len();
        out.maximal.extend(maximal_only(&l)?);
    }
    out.counts.maximal = out.maximal.len();
    Ok(out)
}
