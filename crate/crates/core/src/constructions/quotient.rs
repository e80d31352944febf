use crate::divisible::{is_doubly_even, is_triply_even, meet_big_rad};
use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector, LinearCode, LinearMap, SpanU32, MAX_MAP_DIM};

/// A doubly even code `C` with a subcode `R ⊆ C ∩ Rad C`, and the quotient
/// `C/R` in lift coordinates.
///
/// Quotient vectors are packed into `u32`: bit `i` is the coefficient of
/// `lifts[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientContext {
    pub code: LinearCode,
    pub radical: LinearCode,
    /// Echelon complement of `R` in `C`; each lift is reduced modulo `R`.
    pub lifts: Vec<Gf2Vector>,
    lift_pivots: Vec<usize>,
    /// Singular points, ascending; the zero vector comes first.
    pub singular: Vec<u32>,
    /// Dependencies among the singular points, coordinates in `singular` order.
    pub check_code: LinearCode,
    /// Largest radical dimension among the codes this one was cut from.
    pub prd: usize,
}

impl QuotientContext {
    /// Builds the context after checking `R ⊆ C ∩ Rad C`.
    pub fn new(code: LinearCode, radical: LinearCode, prd: usize) -> Result<Self> {
        let big = meet_big_rad(&code)?;
        if !radical.is_subcode_of(&big) {
            return Err(Error::Precondition("R is not inside C ∩ Rad C".into()));
        }
        Self::new_unchecked(code, radical, prd)
    }

    /// Builds the context with `R = C ∩ Rad C`.
    pub fn with_full_radical(code: LinearCode, prd: usize) -> Result<Self> {
        let r = meet_big_rad(&code)?;
        Self::new_unchecked(code, r, prd)
    }

    fn new_unchecked(code: LinearCode, radical: LinearCode, prd: usize) -> Result<Self> {
        let lifts = radical.complement_in(&code)?;
        let k = lifts.len();
        if k > MAX_MAP_DIM || k >= 32 {
            return Err(Error::Precondition(format!(
                "quotient dimension {k} too large"
            )));
        }
        let lift_pivots = lifts
            .iter()
            .map(|l| l.leading().expect("nonzero"))
            .collect();
        let mut singular = Vec::new();
        let mut x = Gf2Vector::zeros(code.length());
        let mut q = 0u32;
        singular.push(0);
        for t in 1u32..(1u32 << k) {
            let i = t.trailing_zeros() as usize;
            x ^= &lifts[i];
            q ^= 1 << i;
            if x.weight().is_multiple_of(8) {
                singular.push(q);
            }
        }
        singular.sort_unstable();
        let rows = (0..k)
            .map(|j| {
                let mut r = Gf2Vector::zeros(singular.len());
                for (c, &s) in singular.iter().enumerate() {
                    if s >> j & 1 == 1 {
                        r.set(c, true);
                    }
                }
                r
            })
            .collect();
        let check_code = Gf2Matrix::new(singular.len(), rows)?.kernel();
        Ok(QuotientContext {
            code,
            radical,
            lifts,
            lift_pivots,
            singular,
            check_code,
            prd,
        })
    }

    pub fn quotient_dim(&self) -> usize {
        self.lifts.len()
    }

    /// Quotient coordinates of a codeword of `C`.
    pub fn project(&self, c: &Gf2Vector) -> u32 {
        let r = self.radical.reduce(c);
        let mut q = 0u32;
        for (i, &p) in self.lift_pivots.iter().enumerate() {
            if r.get(p) {
                q |= 1 << i;
            }
        }
        q
    }

    /// The canonical lift of a quotient vector.
    pub fn lift(&self, q: u32) -> Gf2Vector {
        let mut v = Gf2Vector::zeros(self.code.length());
        for i in 0..self.lifts.len() {
            if q >> i & 1 == 1 {
                v ^= &self.lifts[i];
            }
        }
        v
    }

    pub fn is_singular(&self, q: u32) -> bool {
        self.singular.binary_search(&q).is_ok()
    }

    pub fn singular_index(&self, q: u32) -> Option<usize> {
        self.singular.binary_search(&q).ok()
    }

    /// The map induced on `C/R` by a coordinate permutation stabilizing
    /// both `C` and `R` (`perm[i]` is the image of coordinate `i`).
    pub fn induced_map(&self, perm: &[usize]) -> Result<LinearMap> {
        let mut cols = Vec::with_capacity(self.lifts.len());
        for l in &self.lifts {
            let img = l.permute(perm);
            if !self.code.contains(&img) {
                return Err(Error::Precondition(
                    "permutation does not stabilize C".into(),
                ));
            }
            cols.push(self.project(&img));
        }
        let m = LinearMap::from_columns(cols)?;
        if !m.is_invertible() {
            return Err(Error::Precondition(
                "permutation does not stabilize R".into(),
            ));
        }
        Ok(m)
    }
}

/// Whether `f` is bijective and maps the singular points of `a` onto those
/// of `b`. Codeword weights of doubly even codes are 0 or 4 modulo 8, so
/// this is the weight-mod-8 condition on every coset.
pub fn is_isometry(a: &QuotientContext, b: &QuotientContext, f: &LinearMap) -> bool {
    a.quotient_dim() == b.quotient_dim()
        && f.dim() == a.quotient_dim()
        && a.singular.len() == b.singular.len()
        && f.is_invertible()
        && a.singular.iter().all(|&x| b.is_singular(f.apply(x)))
}

/// `{(x1|x2) : x1 ∈ C1, x2 ∈ f(x1 + R1)}`.
pub fn pair_code(a: &QuotientContext, b: &QuotientContext, f: &LinearMap) -> Result<LinearCode> {
    if a.quotient_dim() != b.quotient_dim() || f.dim() != a.quotient_dim() {
        return Err(Error::Precondition(
            "contexts and map disagree in dimension".into(),
        ));
    }
    let mut code = a.radical.direct_sum(&b.radical);
    let rows: Vec<Gf2Vector> = (0..a.quotient_dim())
        .map(|i| a.lifts[i].concat(&b.lift(f.apply(1 << i))))
        .collect();
    code = code.extend(&rows)?;
    let expect = a.code.dim() + b.radical.dim();
    if code.dim() != expect {
        return Err(Error::Precondition(format!(
            "pair code has dim {} instead of {expect}; map is not bijective",
            code.dim()
        )));
    }
    Ok(code)
}

/// Extends a check-code equivalence to an isometry. `g[i]` is the index in
/// `b.singular` of the image of `a.singular[i]`.
///
/// On `<X1>` the map follows `g`; a basis of `<X1>` is taken greedily from
/// `X1` in ascending order, and it is completed by unit vectors in
/// ascending order on both sides.
pub fn isometry_from_check_equiv(
    a: &QuotientContext,
    b: &QuotientContext,
    g: &[usize],
) -> Result<LinearMap> {
    let k = a.quotient_dim();
    if b.quotient_dim() != k || g.len() != a.singular.len() || a.singular.len() != b.singular.len()
    {
        return Err(Error::Precondition("contexts have different shapes".into()));
    }
    let mut seen = vec![false; g.len()];
    for &j in g {
        if j >= g.len() || std::mem::replace(&mut seen[j], true) {
            return Err(Error::Precondition("g is not a permutation".into()));
        }
    }
    if a.check_code.permute(g) != b.check_code {
        return Err(Error::Precondition(
            "g is not a check-code equivalence".into(),
        ));
    }
    let mut span_a = SpanU32::new();
    let mut span_b = SpanU32::new();
    let mut dom = Vec::new();
    let mut img = Vec::new();
    for (i, &x) in a.singular.iter().enumerate() {
        if span_a.insert(x) {
            dom.push(x);
            let y = b.singular[g[i]];
            if !span_b.insert(y) {
                return Err(Error::Precondition(
                    "g does not preserve independence".into(),
                ));
            }
            img.push(y);
        }
    }
    for j in 0..k {
        if span_a.insert(1 << j) {
            dom.push(1 << j);
        }
    }
    for j in 0..k {
        if span_b.insert(1 << j) {
            img.push(1 << j);
        }
    }
    let f = LinearMap::from_basis_images(&dom, &img)?;
    if !is_isometry(a, b, &f) {
        return Err(Error::Precondition("extension is not an isometry".into()));
    }
    for (i, &x) in a.singular.iter().enumerate() {
        if f.apply(x) != b.singular[g[i]] {
            return Err(Error::Precondition("extension disagrees with g".into()));
        }
    }
    Ok(f)
}

/// The pieces of a triply even code cut along one codeword.
#[derive(Clone, Debug)]
pub struct Split {
    pub first: QuotientContext,
    pub second: QuotientContext,
    pub map: LinearMap,
    /// New coordinate order: the support of the codeword, then the rest.
    pub order: Vec<usize>,
}

/// Cuts `D` along `x`: `C1`, `R1` are the puncturing and shortening on the
/// complement of `supp(x)`, `C2`, `R2` those on `supp(x)`, and the map sends
/// `c1 + R1` to the cosets `x2 + R2` with `(c1|x2)` a codeword.
pub fn split_by_codeword(d: &LinearCode, x: &Gf2Vector) -> Result<Split> {
    let n = d.length();
    if !d.contains(x) {
        return Err(Error::Precondition("x is not a codeword".into()));
    }
    let m1 = x.weight();
    if m1 == 0 || m1 == n {
        return Err(Error::Precondition(
            "x must have weight strictly between 0 and n".into(),
        ));
    }
    if !is_triply_even(d) {
        return Err(Error::Precondition("code is not triply even".into()));
    }
    let s2: Vec<usize> = x.support();
    let s1: Vec<usize> = (0..n).filter(|&i| !x.get(i)).collect();
    let c1 = d.puncture(&s1)?;
    let r1 = d.shorten(&s1)?;
    let c2 = d.puncture(&s2)?;
    let r2 = d.shorten(&s2)?;
    debug_assert!(is_doubly_even(&c1) && is_doubly_even(&c2));
    let first = QuotientContext::new(c1, r1, 0)?;
    let second = QuotientContext::new(c2, r2, 0)?;
    let mut order = s2.clone();
    order.extend(s1.iter().copied());
    let rows: Vec<Gf2Vector> = d.basis().iter().map(|r| r.select(&order)).collect();
    let pd = LinearCode::new(n, rows)?;
    let mut cols = Vec::with_capacity(first.quotient_dim());
    let tail: Vec<usize> = (m1..n).collect();
    for l in &first.lifts {
        let mut v = l.concat(&Gf2Vector::zeros(n - m1));
        for row in pd.basis() {
            let p = row.leading().expect("nonzero");
            if p >= m1 {
                break;
            }
            if v.get(p) {
                v ^= row;
            }
        }
        if v.leading().is_some_and(|p| p < m1) {
            return Err(Error::Precondition("lift is not a projection of D".into()));
        }
        cols.push(second.project(&v.select(&tail)));
    }
    let map = LinearMap::from_columns(cols)?;
    if !is_isometry(&first, &second, &map) {
        return Err(Error::Precondition(
            "recovered map is not an isometry".into(),
        ));
    }
    Ok(Split {
        first,
        second,
        map,
        order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{e8, generalized_doubling};

    #[test]
    fn e8_context() {
        let ctx = QuotientContext::with_full_radical(e8(), 0).unwrap();
        assert_eq!(ctx.quotient_dim(), 3);
        assert_eq!(ctx.singular, vec![0]);
        assert_eq!(ctx.check_code.dim(), 1);
        let f = LinearMap::identity(3);
        let p = pair_code(&ctx, &ctx, &f).unwrap();
        assert_eq!(p.dim(), 5);
        assert_eq!(p, generalized_doubling(&e8()).unwrap());
    }

    #[test]
    fn split_recovers_pieces() {
        let d = generalized_doubling(&e8()).unwrap();
        let x = Gf2Vector::ones(8).concat(&Gf2Vector::zeros(8));
        let s = split_by_codeword(&d, &x).unwrap();
        assert_eq!(s.first.code, e8());
        assert_eq!(s.first.radical, LinearCode::repetition(8));
        let back = pair_code(&s.first, &s.second, &s.map).unwrap();
        assert_eq!(back, d.permute(&inverse_order(&s.order)));
    }

    fn inverse_order(order: &[usize]) -> Vec<usize> {
        let mut inv = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            inv[old] = new;
        }
        inv
    }
}
