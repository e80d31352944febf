//! Permutation and matrix groups, canonical forms of codes, set
//! stabilizers in `GL(k, 2)`, and double cosets.

mod canon;
mod dcoset;
mod glset;
mod perm;
mod schreier;

pub use canon::{canonical_form, canonical_form_with, CanonOptions, CanonicalForm};
pub use dcoset::{coset_canonical, double_coset_reps};
pub use glset::{
    gl_set_stabilizer, linear_set_isomorphism, nonzero_orbits, PointSet, SetStabilizer,
};
pub use perm::Perm;
pub use schreier::{orbits, GroupElement, StabChain};

use crate::error::{Error, Result};
use crate::gf2::{Gf2Vector, LinearCode, LinearMap};

/// Order of the permutation group generated by `gens` on `n` points.
pub fn group_order(n: usize, gens: &[Perm]) -> u128 {
    StabChain::new(Perm::identity(n), gens).order()
}

/// A permutation `π` with `c1.permute(π) == c2`, if the codes are
/// equivalent.
pub fn is_equivalent(c1: &LinearCode, c2: &LinearCode) -> Result<Option<Perm>> {
    if c1.length() != c2.length() || c1.dim() != c2.dim() {
        return Ok(None);
    }
    if c1.dim() <= 20 && c1.weight_enumerator()? != c2.weight_enumerator()? {
        return Ok(None);
    }
    let f1 = canonical_form(c1)?;
    let f2 = canonical_form(c2)?;
    if f1.canonical_code != f2.canonical_code {
        return Ok(None);
    }
    let pi = f2.relabeling.inverse().compose(&f1.relabeling);
    if c1.permute(pi.images()) != *c2 {
        return Err(Error::Precondition(
            "canonical labeling produced a bad witness".into(),
        ));
    }
    Ok(Some(pi))
}

/// The quotient `big / small` with coordinates in an echelon complement.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    small: LinearCode,
    lifts: Vec<Gf2Vector>,
    pivots: Vec<usize>,
}

impl QuotientSpace {
    pub fn new(big: &LinearCode, small: &LinearCode) -> Result<Self> {
        let lifts = small.complement_in(big)?;
        if lifts.len() > 20 {
            return Err(Error::Precondition(format!(
                "quotient dimension {} too large",
                lifts.len()
            )));
        }
        let pivots = lifts
            .iter()
            .map(|l| l.leading().expect("nonzero"))
            .collect();
        Ok(QuotientSpace {
            small: small.clone(),
            lifts,
            pivots,
        })
    }

    pub fn dim(&self) -> usize {
        self.lifts.len()
    }

    pub fn lift(&self, q: u32) -> Gf2Vector {
        let mut v = Gf2Vector::zeros(self.small.length());
        for (i, l) in self.lifts.iter().enumerate() {
            if q >> i & 1 == 1 {
                v ^= l;
            }
        }
        v
    }

    /// Coordinates of `v + small`; `v` must lie in `big`.
    pub fn project(&self, v: &Gf2Vector) -> u32 {
        let r = self.small.reduce(v);
        self.pivots
            .iter()
            .enumerate()
            .filter(|(_, &p)| r.get(p))
            .fold(0, |q, (i, _)| q | 1 << i)
    }

    /// The action of a coordinate permutation stabilizing both codes.
    pub fn induced_map(&self, perm: &Perm) -> Result<LinearMap> {
        let cols = self
            .lifts
            .iter()
            .map(|l| self.project(&l.permute(perm.images())))
            .collect();
        let m = LinearMap::from_columns(cols)?;
        if !m.is_invertible() {
            return Err(Error::Precondition(
                "permutation does not stabilize the quotient".into(),
            ));
        }
        Ok(m)
    }

    /// One lift per orbit of `<perms>` on the nonzero quotient vectors,
    /// from the orbit's smallest point.
    pub fn orbit_representatives(&self, perms: &[Perm]) -> Result<Vec<Gf2Vector>> {
        let maps = perms
            .iter()
            .map(|p| self.induced_map(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(nonzero_orbits(self.dim(), &maps)
            .iter()
            .map(|o| self.lift(o[0]))
            .collect())
    }
}
