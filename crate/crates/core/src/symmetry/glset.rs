//! Linear maps of `F_2^k` preserving a point set: the stabilizer of a set
//! and isomorphisms between two sets.

use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};
use crate::gf2::{LinearMap, SpanU32};

use super::schreier::{orbits, StabChain};

const MAX_POINT_DIM: usize = 20;

fn mix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A point set `X ⊆ F_2^k` with `0 ∈ X`, the span `W = <X>`, a basis of
/// `W` drawn from `X`, and invariant colors on `W`.
#[derive(Clone, Debug)]
pub struct PointSet {
    k: usize,
    /// Basis of `W` from `X`, rarest colors first.
    basis: Vec<u32>,
    /// Completion of `basis` to `F_2^k` by unit vectors.
    complement: Vec<u32>,
    /// Color of each point of `W`; points outside `W` are absent.
    color: FxHashMap<u32, u64>,
    /// Points of `X` by color.
    by_color: FxHashMap<u64, Vec<u32>>,
}

impl PointSet {
    /// Profiles `X`; `0` must be a member.
    pub fn new(k: usize, x: &[u32]) -> Result<Self> {
        let mut span = SpanU32::new();
        for &p in x {
            span.insert(p);
        }
        Self::with_rounds(k, x, rounds_for(span.rank()))
    }

    fn with_rounds(k: usize, x: &[u32], rounds: usize) -> Result<Self> {
        if !x.contains(&0) {
            return Err(Error::Precondition("point set must contain 0".into()));
        }
        if k > MAX_POINT_DIM {
            return Err(Error::Precondition(format!(
                "point dimension {k} too large"
            )));
        }
        if x.iter().any(|&p| k < 32 && p >> k != 0) {
            return Err(Error::Precondition("point outside the space".into()));
        }
        let mut span = SpanU32::new();
        let mut gens = Vec::new();
        for &p in x {
            if span.insert(p) {
                gens.push(p);
            }
        }
        let w = gens.len();
        let mut points = vec![0u32; 1 << w];
        for t in 1usize..1 << w {
            let i = t.trailing_zeros() as usize;
            points[t] = points[t & (t - 1)] ^ gens[i];
        }
        let in_x: FxHashSet<u32> = x.iter().copied().collect();
        let mut color: FxHashMap<u32, u64> = points
            .iter()
            .map(|&p| {
                let c = if p == 0 {
                    1
                } else if in_x.contains(&p) {
                    2
                } else {
                    3
                };
                (p, c)
            })
            .collect();
        for _ in 0..rounds {
            let next: FxHashMap<u32, u64> = points
                .iter()
                .map(|&p| {
                    let mut acc = 0u64;
                    for &q in &points {
                        acc = acc.wrapping_add(mix(color[&q] ^ mix(color[&(p ^ q)])));
                    }
                    (p, mix(color[&p] ^ mix(acc)))
                })
                .collect();
            color = next;
        }
        let mut by_color: FxHashMap<u64, Vec<u32>> = FxHashMap::default();
        for &p in x {
            by_color.entry(color[&p]).or_default().push(p);
        }
        for v in by_color.values_mut() {
            v.sort_unstable();
        }
        let mut sorted: Vec<u32> = x.iter().copied().filter(|&p| p != 0).collect();
        sorted.sort_by_key(|p| (by_color[&color[p]].len(), color[p], *p));
        let mut span = SpanU32::new();
        let mut basis = Vec::new();
        for p in sorted {
            if span.insert(p) {
                basis.push(p);
            }
        }
        let mut complement = Vec::new();
        for j in 0..k {
            if span.insert(1 << j) {
                complement.push(1 << j);
            }
        }
        Ok(PointSet {
            k,
            basis,
            complement,
            color,
            by_color,
        })
    }

    /// Dimension of `<X>`.
    pub fn w(&self) -> usize {
        self.basis.len()
    }

    pub fn len(&self) -> usize {
        self.by_color.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Sorted color class sizes; equal for isomorphic sets.
    pub fn signature(&self) -> Vec<(u64, usize)> {
        self.class_sizes()
    }

    /// A linear bijection `f` with `f(self) = other`, if one exists.
    pub fn isomorphism_to(&self, other: &PointSet, budget: usize) -> Result<Option<LinearMap>> {
        if self.k != other.k || self.w() != other.w() || self.class_sizes() != other.class_sizes() {
            return Ok(None);
        }
        let mut m = Matcher::new(self, other, budget);
        match m.find(&[])? {
            None => Ok(None),
            Some(f) => {
                let pts2 = other.span_points();
                let images: Vec<u32> = (0..self.w())
                    .map(|j| pts2[f.apply(1 << j) as usize])
                    .collect();
                Ok(Some(extend_to_space(self, other, &images)?))
            }
        }
    }

    /// Points of `W` indexed by basis coefficients.
    fn span_points(&self) -> Vec<u32> {
        let w = self.w();
        let mut pts = vec![0u32; 1 << w];
        for t in 1usize..1 << w {
            pts[t] = pts[t & (t - 1)] ^ self.basis[t.trailing_zeros() as usize];
        }
        pts
    }

    fn class_sizes(&self) -> Vec<(u64, usize)> {
        let mut v: Vec<(u64, usize)> = self.by_color.iter().map(|(&c, p)| (c, p.len())).collect();
        v.sort_unstable();
        v
    }
}

/// Depth-first search for linear maps `W1 -> W2` carrying `X1` onto `X2`,
/// in basis coordinates of both spans. Each point carries a hash of the
/// colors on its coset of the span fixed so far; assigning `x -> y`
/// updates all hashes at once, and the two hash multisets must agree.
struct Matcher {
    w: usize,
    color1: Vec<u64>,
    color2: Vec<u64>,
    in_x1: Vec<bool>,
    in_x2: Vec<bool>,
    nodes: usize,
    budget: usize,
}

struct Level {
    dom: Vec<u32>,
    img: Vec<u32>,
    h1: Vec<u64>,
    h2: Vec<u64>,
}

impl Matcher {
    fn new(s1: &PointSet, s2: &PointSet, budget: usize) -> Self {
        let colors = |s: &PointSet| -> (Vec<u64>, Vec<bool>) {
            let pts = s.span_points();
            let x: FxHashSet<u32> = s.by_color.values().flatten().copied().collect();
            (
                pts.iter().map(|p| s.color[p]).collect(),
                pts.iter().map(|p| x.contains(p)).collect(),
            )
        };
        let (color1, in_x1) = colors(s1);
        let (color2, in_x2) = colors(s2);
        Matcher {
            w: s1.w(),
            color1,
            color2,
            in_x1,
            in_x2,
            nodes: 0,
            budget,
        }
    }

    fn root(&self) -> Level {
        Level {
            dom: Vec::new(),
            img: Vec::new(),
            h1: self.color1.clone(),
            h2: self.color2.clone(),
        }
    }

    /// The level after `x -> y`, or `None` when the profiles disagree.
    fn push(&mut self, lv: &Level, x: u32, y: u32) -> Result<Option<Level>> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Budget(format!(
                "set isomorphism search exceeded {} nodes",
                self.budget
            )));
        }
        if lv.h1[x as usize] != lv.h2[y as usize] {
            return Ok(None);
        }
        let step = |h: &[u64], a: u32| -> Vec<u64> {
            (0..h.len())
                .map(|p| mix(h[p] ^ mix(h[p ^ a as usize])))
                .collect()
        };
        let h1 = step(&lv.h1, x);
        let h2 = step(&lv.h2, y);
        let mut a = h1.clone();
        let mut b = h2.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Ok(None);
        }
        let mut dom = lv.dom.clone();
        let mut img = lv.img.clone();
        dom.push(x);
        img.push(y);
        Ok(Some(Level { dom, img, h1, h2 }))
    }

    /// The linear map given by a full assignment, if it carries `X1` onto `X2`.
    fn complete(&self, lv: &Level) -> Result<Option<LinearMap>> {
        let f = LinearMap::from_basis_images(&lv.dom, &lv.img)?;
        for t in 0..1u32 << self.w {
            if self.in_x1[t as usize] != self.in_x2[f.apply(t) as usize] {
                return Ok(None);
            }
        }
        Ok(Some(f))
    }

    fn extend(&mut self, lv: &Level) -> Result<Option<LinearMap>> {
        if lv.dom.len() == self.w {
            return self.complete(lv);
        }
        let mut span = SpanU32::new();
        for &d in &lv.dom {
            span.insert(d);
        }
        // Smallest class of unassigned points of X1, by current hash.
        let mut count: FxHashMap<u64, usize> = FxHashMap::default();
        for t in 0..lv.h1.len() {
            if self.in_x1[t] {
                *count.entry(lv.h1[t]).or_insert(0) += 1;
            }
        }
        let mut best: Option<(usize, u32)> = None;
        for t in 0..lv.h1.len() as u32 {
            if !self.in_x1[t as usize] || span.contains(t) {
                continue;
            }
            let n = count[&lv.h1[t as usize]];
            if best.is_none_or(|(m, _)| n < m) {
                best = Some((n, t));
            }
        }
        let Some((_, x)) = best else {
            return Ok(None);
        };
        let h = lv.h1[x as usize];
        for y in 0..lv.h2.len() as u32 {
            if lv.h2[y as usize] != h || !self.in_x2[y as usize] {
                continue;
            }
            if let Some(next) = self.push(lv, x, y)? {
                if let Some(f) = self.extend(&next)? {
                    return Ok(Some(f));
                }
            }
        }
        Ok(None)
    }

    /// A map in coordinates sending unit vector `i` to `prefix[i]`, if any.
    fn find(&mut self, prefix: &[u32]) -> Result<Option<LinearMap>> {
        let mut lv = self.root();
        for (i, &y) in prefix.iter().enumerate() {
            match self.push(&lv, 1 << i, y)? {
                Some(next) => lv = next,
                None => return Ok(None),
            }
        }
        self.extend(&lv)
    }
}

fn extend_to_space(s1: &PointSet, s2: &PointSet, images: &[u32]) -> Result<LinearMap> {
    let mut dom = s1.basis.clone();
    dom.extend_from_slice(&s1.complement);
    let mut img = images.to_vec();
    img.extend_from_slice(&s2.complement);
    LinearMap::from_basis_images(&dom, &img)
}

/// Number of refinement rounds for sets of span dimension `w`.
fn rounds_for(w: usize) -> usize {
    if w <= 8 {
        3
    } else {
        2
    }
}

/// Generators and order of `{f ∈ GL(k, 2) : f(X) = X}` for a point set
/// containing `0`.
#[derive(Clone, Debug)]
pub struct SetStabilizer {
    pub generators: Vec<LinearMap>,
    /// Saturates at `u128::MAX`.
    pub order: u128,
    /// Order of the part acting on `<X>`.
    pub span_part_order: u128,
}

fn pow2(e: usize) -> u128 {
    1u128.checked_shl(e as u32).unwrap_or(u128::MAX)
}

fn gl_order(m: usize) -> u128 {
    if m >= 128 {
        return u128::MAX;
    }
    let q = 1u128 << m;
    (0..m).fold(1u128, |acc, i| acc.saturating_mul(q - (1u128 << i)))
}

pub fn gl_set_stabilizer(k: usize, x: &[u32], budget: usize) -> Result<SetStabilizer> {
    PointSet::new(k, x)?.stabilizer(budget)
}

fn orbit_of(p: u32, gens: &[LinearMap]) -> FxHashSet<u32> {
    let mut seen = FxHashSet::default();
    seen.insert(p);
    let mut stack = vec![p];
    while let Some(q) = stack.pop() {
        for g in gens {
            let r = g.apply(q);
            if seen.insert(r) {
                stack.push(r);
            }
        }
    }
    seen
}

impl PointSet {
    pub fn stabilizer(&self, budget: usize) -> Result<SetStabilizer> {
        self.stabilizer_with(&[], budget)
    }

    /// The set stabilizer, given some of its elements to start from.
    pub fn stabilizer_with(&self, known: &[LinearMap], budget: usize) -> Result<SetStabilizer> {
        let w = self.w();
        let pts = self.span_points();
        let coord: FxHashMap<u32, u32> = pts
            .iter()
            .enumerate()
            .map(|(t, &p)| (p, t as u32))
            .collect();
        let to_span_coords = |images: &[u32]| -> Result<LinearMap> {
            let cols = images
                .iter()
                .map(|p| {
                    coord
                        .get(p)
                        .copied()
                        .ok_or_else(|| Error::Precondition("map does not preserve <X>".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            LinearMap::from_columns(cols)
        };
        // Maps on W in basis coordinates; base points are the unit vectors.
        let mut gens = Vec::new();
        for f in known {
            let images: Vec<u32> = self.basis.iter().map(|&b| f.apply(b)).collect();
            let g = to_span_coords(&images)?;
            if !g.is_identity() {
                gens.push(g);
            }
        }
        let id = LinearMap::identity(w);
        let base: Vec<u32> = (0..w).map(|i| 1u32 << i).collect();
        let mut chain = StabChain::with_base(id.clone(), &gens, &base);
        let mut m = Matcher::new(self, self, budget);
        for j in (0..w).rev() {
            let target = self.basis[j];
            let mut failed: FxHashSet<u32> = FxHashSet::default();
            for &y in &self.by_color[&self.color[&target]] {
                let yc = coord[&y];
                if chain.transversal(j, yc).is_some() || failed.contains(&yc) {
                    continue;
                }
                let mut prefix: Vec<u32> = (0..j).map(|i| 1u32 << i).collect();
                prefix.push(yc);
                match m.find(&prefix)? {
                    Some(f) => {
                        gens.push(f);
                        chain = StabChain::with_base(id.clone(), &gens, &base);
                    }
                    None => failed.extend(orbit_of(yc, chain.level_generators(j))),
                }
            }
        }
        let span_order = chain.order();
        let c = self.complement.len();
        let mut dom = self.basis.clone();
        dom.extend_from_slice(&self.complement);
        let mut generators = Vec::new();
        for g in chain.strong_generators() {
            let mut img: Vec<u32> = (0..w).map(|i| pts[g.apply(1 << i) as usize]).collect();
            img.extend_from_slice(&self.complement);
            generators.push(LinearMap::from_basis_images(&dom, &img)?);
        }
        let with_image = |from: usize, add: u32| -> Result<LinearMap> {
            let mut img = dom.clone();
            img[w + from] ^= add;
            LinearMap::from_basis_images(&dom, &img)
        };
        for a in 0..c {
            for b in 0..c {
                if a != b {
                    generators.push(with_image(a, self.complement[b])?);
                }
            }
            for &bv in &self.basis {
                generators.push(with_image(a, bv)?);
            }
        }
        let order = span_order
            .saturating_mul(gl_order(c))
            .saturating_mul(pow2(w * c));
        Ok(SetStabilizer {
            generators,
            order,
            span_part_order: span_order,
        })
    }
}

/// A linear bijection `f` of `F_2^k` with `f(X1) = X2`, if one exists.
pub fn linear_set_isomorphism(
    k: usize,
    x1: &[u32],
    x2: &[u32],
    budget: usize,
) -> Result<Option<LinearMap>> {
    if x1.len() != x2.len() {
        return Ok(None);
    }
    PointSet::new(k, x1)?.isomorphism_to(&PointSet::new(k, x2)?, budget)
}

/// Orbits of the group generated by `gens` on the nonzero vectors of
/// `F_2^k`, each listed from its smallest point.
pub fn nonzero_orbits(k: usize, gens: &[LinearMap]) -> Vec<Vec<u32>> {
    let points: Vec<u32> = (1u32..1 << k).collect();
    orbits(gens, &points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::StabChain;

    #[test]
    fn whole_space_gives_gl() {
        let x: Vec<u32> = (0..8).collect();
        let s = gl_set_stabilizer(3, &x, 100_000).unwrap();
        assert_eq!(s.order, 168);
        let chain = StabChain::new(LinearMap::identity(3), &s.generators);
        assert_eq!(chain.order(), 168);
    }

    #[test]
    fn line_in_plane_space() {
        // X = {0, e1, e2, e1+e2} in F_2^3: stabilizer of a plane.
        let s = gl_set_stabilizer(3, &[0, 1, 2, 3], 100_000).unwrap();
        assert_eq!(s.order, 6 * 4);
        let chain = StabChain::new(LinearMap::identity(3), &s.generators);
        assert_eq!(chain.order(), 24);
        for g in &s.generators {
            for p in 0..4 {
                assert!(g.apply(p) < 4);
            }
        }
    }

    #[test]
    fn isomorphism_between_frames() {
        let f = linear_set_isomorphism(3, &[0, 1, 2], &[0, 5, 6], 1000)
            .unwrap()
            .unwrap();
        let mut im: Vec<u32> = [1, 2].iter().map(|&p| f.apply(p)).collect();
        im.sort();
        assert_eq!(im, vec![5, 6]);
        assert!(linear_set_isomorphism(3, &[0, 1, 2], &[0, 1, 2, 3], 1000)
            .unwrap()
            .is_none());
        assert!(linear_set_isomorphism(3, &[0, 1, 2], &[0, 1, 6], 1000)
            .unwrap()
            .is_some());
    }
}
