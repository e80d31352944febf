use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::constructions::{all_desd24, QuotientContext};
use crate::divisible::exists_outside_big_rad;
use crate::error::Result;
use crate::gf2::{LinearCode, WeightEnumerator};
use crate::symmetry::{canonical_form_with, CanonicalForm, Perm, PointSet, QuotientSpace};

use super::PipelineOptions;

/// A doubly even code with `R = C ∩ Rad C`, its quotient data and
/// symmetry.
#[derive(Clone, Debug)]
pub struct PartsEntry {
    pub ctx: QuotientContext,
    pub weight_enumerator: WeightEnumerator,
    pub aut_generators: Vec<Perm>,
    pub aut_order: u128,
    pub canonical_key: Vec<u64>,
    pub points: PointSet,
}

impl PartsEntry {
    pub fn new(code: LinearCode, prd: usize, opts: &PipelineOptions) -> Result<Self> {
        let canon = canonical_form_with(&code, &opts.canon)?;
        Self::with_canonical(code, prd, canon)
    }

    fn with_canonical(code: LinearCode, prd: usize, canon: CanonicalForm) -> Result<Self> {
        let weight_enumerator = code.weight_enumerator()?;
        let ctx = QuotientContext::with_full_radical(code, prd)?;
        let points = PointSet::new(ctx.quotient_dim(), &ctx.singular)?;
        Ok(PartsEntry {
            canonical_key: canon.key(),
            aut_generators: canon.aut_generators,
            aut_order: canon.aut_order,
            weight_enumerator,
            ctx,
            points,
        })
    }

    pub fn code(&self) -> &LinearCode {
        &self.ctx.code
    }

    pub fn dim(&self) -> usize {
        self.ctx.code.dim()
    }

    pub fn radical_dim(&self) -> usize {
        self.ctx.radical.dim()
    }

    pub fn prd(&self) -> usize {
        self.ctx.prd
    }
}

/// Codimension-one subcodes of `C` containing `R`, one per `Aut(C)`-orbit.
/// They are the duals of `<C⊥, x>` for orbit representatives `x` of
/// `R⊥ / C⊥`.
pub fn subcode_step(entry: &PartsEntry) -> Result<Vec<LinearCode>> {
    let c_dual = entry.ctx.code.dual();
    let space = QuotientSpace::new(&entry.ctx.radical.dual(), &c_dual)?;
    space
        .orbit_representatives(&entry.aut_generators)?
        .into_iter()
        .map(|x| Ok(c_dual.extend(&[x])?.dual()))
        .collect()
}

/// The doubly even codes of length 24 containing their triply even
/// radical, by level; `levels[0]` holds the self-dual codes.
#[derive(Clone, Debug, Default)]
pub struct PartsDb {
    pub levels: Vec<Vec<PartsEntry>>,
}

/// Rows: dimension 12 down to 5. Columns: radical dimension 1 to 6.
pub type PartsTable = [[usize; 6]; 8];

impl PartsDb {
    pub fn level_counts(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &PartsEntry> {
        self.levels.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Counts by `(dim C, dim R)`; entries outside the grid are dropped.
    pub fn table(&self) -> PartsTable {
        let mut t = [[0; 6]; 8];
        for e in self.entries() {
            let (d, r) = (e.dim(), e.radical_dim());
            if (5..=12).contains(&d) && (1..=6).contains(&r) {
                t[12 - d][r - 1] += 1;
            }
        }
        t
    }
}

/// Keeps the first code of each equivalence class together with the
/// largest `prd` seen for it.
pub(crate) fn dedup_by_canonical(
    candidates: Vec<(LinearCode, usize)>,
    opts: &PipelineOptions,
) -> Result<Vec<(LinearCode, usize, CanonicalForm)>> {
    let forms: Vec<CanonicalForm> = opts.install(|| {
        candidates
            .par_iter()
            .map(|(c, _)| canonical_form_with(c, &opts.canon))
            .collect::<Result<Vec<_>>>()
    })?;
    let mut index: FxHashMap<Vec<u64>, usize> = FxHashMap::default();
    let mut kept: Vec<(LinearCode, usize, CanonicalForm)> = Vec::new();
    for ((code, prd), form) in candidates.into_iter().zip(forms) {
        match index.get(&form.key()) {
            Some(&i) => kept[i].1 = kept[i].1.max(prd),
            None => {
                index.insert(form.key(), kept.len());
                kept.push((code, prd, form));
            }
        }
    }
    Ok(kept)
}

/// Descends from the self-dual codes of length 24.
pub fn build_parts_db(opts: &PipelineOptions) -> Result<PartsDb> {
    build_parts_db_from(all_desd24(), opts, |_, _| Ok(()))
}

/// Descends from `top` (each with `prd = 0`); `on_level` sees every
/// finished level.
pub fn build_parts_db_from(
    top: Vec<LinearCode>,
    opts: &PipelineOptions,
    mut on_level: impl FnMut(usize, &[PartsEntry]) -> Result<()>,
) -> Result<PartsDb> {
    let first = opts.install(|| {
        top.into_par_iter()
            .map(|c| PartsEntry::new(c, 0, opts))
            .collect::<Result<Vec<_>>>()
    })?;
    on_level(0, &first)?;
    let mut db = PartsDb {
        levels: vec![first],
    };
    resume_parts_db(&mut db, opts, &mut on_level)?;
    Ok(db)
}

/// Continues the descent below the last level of `db`.
pub fn resume_parts_db(
    db: &mut PartsDb,
    opts: &PipelineOptions,
    mut on_level: impl FnMut(usize, &[PartsEntry]) -> Result<()>,
) -> Result<()> {
    while let Some(last) = db.levels.last() {
        if last.is_empty() {
            break;
        }
        opts.check_deadline("building the parts database")?;
        let lists = opts.install(|| {
            last.par_iter()
                .map(|e| {
                    let prd = e.radical_dim();
                    subcode_step(e).map(|v| v.into_iter().map(|c| (c, prd)).collect::<Vec<_>>())
                })
                .collect::<Result<Vec<_>>>()
        })?;
        let candidates: Vec<(LinearCode, usize)> = lists.into_iter().flatten().collect();
        let kept = dedup_by_canonical(candidates, opts)?;
        let level = opts.install(|| {
            kept.into_par_iter()
                .map(|(c, prd, form)| -> Result<Option<PartsEntry>> {
                    if exists_outside_big_rad(&c)? {
                        return Ok(None);
                    }
                    PartsEntry::with_canonical(c, prd, form).map(Some)
                })
                .collect::<Result<Vec<_>>>()
        })?;
        let level: Vec<PartsEntry> = level.into_iter().flatten().collect();
        on_level(db.levels.len(), &level)?;
        db.levels.push(level);
    }
    Ok(())
}
