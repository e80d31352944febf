use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

use super::schreier::{GroupElement, StabChain};

/// The canonical element of the left coset `gB`: the one whose images of
/// `B`'s base are lexicographically smallest.
pub fn coset_canonical<E: GroupElement>(g: &E, b: &StabChain<E>) -> E {
    let mut h = g.clone();
    for l in 0..b.depth() {
        let p = *b
            .basic_orbit(l)
            .iter()
            .min_by_key(|&&p| h.image(p))
            .expect("orbit contains the base point");
        if let Some(u) = b.transversal(l, p) {
            h = h.compose(u);
        }
    }
    h
}

/// A few random subproducts of `gens` generating the same group, or
/// `gens` itself when none are found quickly.
fn few_generators<E: GroupElement>(identity: &E, gens: &[E]) -> Vec<E> {
    let Some(target) = StabChain::new(identity.clone(), gens).order_checked() else {
        return gens.to_vec();
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out: Vec<E> = Vec::new();
    for _ in 0..8 {
        if out.len() >= gens.len() {
            break;
        }
        let mut r = identity.clone();
        for g in gens {
            if rng.gen_bool(0.5) {
                r = r.compose(g);
            }
        }
        if r.is_identity() {
            continue;
        }
        out.push(r);
        if StabChain::new(identity.clone(), &out).order_checked() == Some(target) {
            return out;
        }
    }
    gens.to_vec()
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Representatives of the double cosets `A g B` in `G = <g_gens>`, with
/// the identity's double coset first. At most `limit` left cosets of the
/// smaller of `A`, `B` are enumerated.
pub fn double_coset_reps<E: GroupElement>(
    g_gens: &[E],
    a: &StabChain<E>,
    b: &StabChain<E>,
    limit: usize,
) -> Result<Vec<E>> {
    if a.order() > b.order() {
        let inv_gens: Vec<E> = g_gens.iter().map(|g| g.inverse()).collect();
        let reps = double_coset_reps(&inv_gens, b, a, limit)?;
        return Ok(reps.iter().map(|r| r.inverse()).collect());
    }
    let id = b.identity().clone();
    let g_gens = &few_generators(&id, g_gens)[..];
    let start = coset_canonical(&id, b);
    let mut index: FxHashMap<E, usize> = FxHashMap::default();
    let mut cosets = vec![start.clone()];
    index.insert(start, 0);
    let mut i = 0;
    while i < cosets.len() {
        for s in g_gens {
            let c = coset_canonical(&s.compose(&cosets[i]), b);
            if !index.contains_key(&c) {
                if cosets.len() >= limit {
                    return Err(Error::Budget(format!(
                        "more than {limit} cosets in double coset enumeration"
                    )));
                }
                index.insert(c.clone(), cosets.len());
                cosets.push(c);
            }
        }
        i += 1;
    }
    let a_gens = few_generators(&id, &a.strong_generators());
    let mut parent: Vec<usize> = (0..cosets.len()).collect();
    for (i, c) in cosets.iter().enumerate() {
        for s in &a_gens {
            let d = coset_canonical(&s.compose(c), b);
            let j = index[&d];
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                let (lo, hi) = if ri < rj { (ri, rj) } else { (rj, ri) };
                parent[hi] = lo;
            }
        }
    }
    let mut reps = Vec::new();
    for (i, c) in cosets.iter().enumerate() {
        if find(&mut parent, i) == i {
            reps.push(c.clone());
        }
    }
    Ok(reps)
}
