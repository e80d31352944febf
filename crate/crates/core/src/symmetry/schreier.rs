use std::hash::Hash;

use rustc_hash::FxHashMap;

use crate::gf2::LinearMap;

use super::Perm;

/// A group element acting on points. Composition is function composition:
/// `a.compose(b)` applies `b` first.
pub trait GroupElement: Clone + Eq + Hash + std::fmt::Debug {
    type Point: Copy + Eq + Hash + Ord + std::fmt::Debug;

    fn image(&self, p: Self::Point) -> Self::Point;
    fn compose(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    fn identity_like(&self) -> Self;
    fn is_identity(&self) -> bool;
    /// A base point moved by `self`, or `None` for the identity.
    fn moved_point(&self) -> Option<Self::Point>;
}

impl GroupElement for Perm {
    type Point = usize;

    fn image(&self, p: usize) -> usize {
        self.apply(p)
    }
    fn compose(&self, other: &Self) -> Self {
        Perm::compose(self, other)
    }
    fn inverse(&self) -> Self {
        Perm::inverse(self)
    }
    fn identity_like(&self) -> Self {
        Perm::identity(self.degree())
    }
    fn is_identity(&self) -> bool {
        Perm::is_identity(self)
    }
    fn moved_point(&self) -> Option<usize> {
        (0..self.degree()).find(|&i| self.apply(i) != i)
    }
}

impl GroupElement for LinearMap {
    type Point = u32;

    fn image(&self, p: u32) -> u32 {
        self.apply(p)
    }
    fn compose(&self, other: &Self) -> Self {
        LinearMap::compose(self, other)
    }
    fn inverse(&self) -> Self {
        LinearMap::inverse(self).expect("group elements are invertible")
    }
    fn identity_like(&self) -> Self {
        LinearMap::identity(self.dim())
    }
    fn is_identity(&self) -> bool {
        LinearMap::is_identity(self)
    }
    /// Only unit vectors are used as base points; a map fixing all of them
    /// is the identity.
    fn moved_point(&self) -> Option<u32> {
        (0..self.dim())
            .map(|i| 1u32 << i)
            .find(|&e| self.apply(e) != e)
    }
}

#[derive(Clone, Debug)]
struct Level<E: GroupElement> {
    base: E::Point,
    gens: Vec<E>,
    orbit: Vec<E::Point>,
    /// Point -> (u, u⁻¹) with `u(base) = point`.
    transversal: FxHashMap<E::Point, (E, E)>,
}

impl<E: GroupElement> Level<E> {
    fn new(base: E::Point, id: E) -> Self {
        let mut transversal = FxHashMap::default();
        transversal.insert(base, (id.clone(), id));
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            transversal,
        }
    }

    fn rebuild_orbit(&mut self) {
        let (id, _) = self.transversal[&self.base].clone();
        self.transversal.clear();
        self.transversal.insert(self.base, (id.clone(), id));
        self.orbit = vec![self.base];
        let mut i = 0;
        while i < self.orbit.len() {
            let p = self.orbit[i];
            let up = self.transversal[&p].0.clone();
            for g in &self.gens {
                let q = g.image(p);
                if let std::collections::hash_map::Entry::Vacant(e) = self.transversal.entry(q) {
                    let u = g.compose(&up);
                    let ui = u.inverse();
                    e.insert((u, ui));
                    self.orbit.push(q);
                }
            }
            i += 1;
        }
    }
}

/// Base and strong generating set built by the deterministic incremental
/// Schreier-Sims algorithm.
#[derive(Clone, Debug)]
pub struct StabChain<E: GroupElement> {
    identity: E,
    levels: Vec<Level<E>>,
}

impl<E: GroupElement> StabChain<E> {
    /// Chain of the group generated by `gens`; `identity` fixes the degree.
    pub fn new(identity: E, gens: &[E]) -> Self {
        Self::with_base(identity, gens, &[])
    }

    /// As [`StabChain::new`], with `base` as a prefix of the base.
    pub fn with_base(identity: E, gens: &[E], base: &[E::Point]) -> Self {
        let mut chain = StabChain {
            identity,
            levels: Vec::new(),
        };
        for &b in base {
            chain.levels.push(Level::new(b, chain.identity.clone()));
        }
        let gens: Vec<E> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        // Extend the base until no generator fixes all of it.
        for g in &gens {
            if chain.levels.iter().all(|l| g.image(l.base) == l.base) {
                let p = g.moved_point().expect("non-identity");
                chain.levels.push(Level::new(p, chain.identity.clone()));
            }
        }
        for g in &gens {
            for l in 0..chain.levels.len() {
                let fixes_prefix = chain.levels[..l]
                    .iter()
                    .all(|lv| g.image(lv.base) == lv.base);
                if fixes_prefix {
                    chain.levels[l].gens.push(g.clone());
                }
            }
        }
        for l in &mut chain.levels {
            l.rebuild_orbit();
        }
        chain.complete();
        chain
    }

    /// Sifts `g` from level `start`: returns the residue and the level where
    /// it stopped (`levels.len()` when it passed every level).
    fn strip(&self, g: &E, start: usize) -> (E, usize) {
        let mut h = g.clone();
        for (i, l) in self.levels.iter().enumerate().skip(start) {
            let p = h.image(l.base);
            match l.transversal.get(&p) {
                None => return (h, i),
                Some((_, ui)) => h = ui.compose(&h),
            }
        }
        let n = self.levels.len();
        (h, n)
    }

    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let li = i as usize;
            let orbit = self.levels[li].orbit.clone();
            let gens = self.levels[li].gens.clone();
            for &p in &orbit {
                let up = self.levels[li].transversal[&p].0.clone();
                for s in &gens {
                    let q = s.image(p);
                    let uqi = &self.levels[li].transversal[&q].1;
                    let sch = uqi.compose(&s.compose(&up));
                    if sch.is_identity() {
                        continue;
                    }
                    let (h, j) = self.strip(&sch, li + 1);
                    if j < self.levels.len() || !h.is_identity() {
                        if j == self.levels.len() {
                            let b = h.moved_point().expect("non-identity residue");
                            self.levels.push(Level::new(b, self.identity.clone()));
                        }
                        for l in li + 1..=j {
                            self.levels[l].gens.push(h.clone());
                            self.levels[l].rebuild_orbit();
                        }
                        i = j as isize;
                        continue 'outer;
                    }
                }
            }
            i -= 1;
        }
    }

    /// The group order, or `None` when it does not fit in a `u128`.
    pub fn order_checked(&self) -> Option<u128> {
        self.levels
            .iter()
            .try_fold(1u128, |acc, l| acc.checked_mul(l.orbit.len() as u128))
    }

    /// The group order, saturating at `u128::MAX`.
    pub fn order(&self) -> u128 {
        self.order_checked().unwrap_or(u128::MAX)
    }

    pub fn contains(&self, g: &E) -> bool {
        let (h, j) = self.strip(g, 0);
        j == self.levels.len() && h.is_identity()
    }

    pub fn base(&self) -> Vec<E::Point> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Basic orbit at `level`, in discovery order.
    pub fn basic_orbit(&self, level: usize) -> &[E::Point] {
        &self.levels[level].orbit
    }

    /// `u` with `u(base[level]) = p`, if `p` is in the basic orbit.
    pub fn transversal(&self, level: usize, p: E::Point) -> Option<&E> {
        self.levels[level].transversal.get(&p).map(|(u, _)| u)
    }

    /// Generators of the stabilizer of the first `level` base points.
    pub fn level_generators(&self, level: usize) -> &[E] {
        &self.levels[level].gens
    }

    pub fn strong_generators(&self) -> Vec<E> {
        let mut out: Vec<E> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// All elements; only for small groups.
    pub fn elements(&self) -> Vec<E> {
        let mut out = vec![self.identity.clone()];
        for l in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * l.orbit.len());
            for p in &l.orbit {
                let u = &l.transversal[p].0;
                for g in &out {
                    next.push(u.compose(g));
                }
            }
            out = next;
        }
        out
    }

    pub fn identity(&self) -> &E {
        &self.identity
    }
}

/// Orbits of the group generated by `gens` on `points`, each sorted, listed
/// by smallest element.
pub fn orbits<E: GroupElement>(gens: &[E], points: &[E::Point]) -> Vec<Vec<E::Point>> {
    let index: FxHashMap<E::Point, usize> =
        points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut seen = vec![false; points.len()];
    let mut out = Vec::new();
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by_key(|&i| points[i]);
    for start in order {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orb = vec![points[start]];
        let mut i = 0;
        while i < orb.len() {
            let p = orb[i];
            for g in gens {
                let q = g.image(p);
                let j = *index.get(&q).expect("generators act on the point set");
                if !seen[j] {
                    seen[j] = true;
                    orb.push(q);
                }
            }
            i += 1;
        }
        orb.sort();
        out.push(orb);
    }
    out
}
