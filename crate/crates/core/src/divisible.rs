//! Quadratic, bilinear and trilinear forms on doubly even codes, the two
//! radicals, and maximality of triply even codes.

use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector, LinearCode};

/// Largest subspace dimension scanned vector by vector in this module.
pub const SCAN_CAP_LOG2: usize = 30;

/// `Q(u) = wt(u)/4 mod 2`; `true` means `wt(u) ≡ 4 (mod 8)`.
pub fn q_form(u: &Gf2Vector) -> Result<bool> {
    let w = u.weight();
    if !w.is_multiple_of(4) {
        return Err(Error::Precondition(format!(
            "Q needs weight divisible by 4, got {w}"
        )));
    }
    Ok(w % 8 == 4)
}

/// `B(u, v) = wt(u∗v)/2 mod 2`.
pub fn b_form(u: &Gf2Vector, v: &Gf2Vector) -> Result<bool> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    let m = u.meet_weight(v);
    if !m.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "B needs an even intersection, got {m}"
        )));
    }
    Ok(m % 4 == 2)
}

/// `T(u, v, w) = wt(u∗v∗w) mod 2`.
pub fn t_form(u: &Gf2Vector, v: &Gf2Vector, w: &Gf2Vector) -> Result<bool> {
    if u.len() != v.len() || v.len() != w.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: if u.len() != v.len() { v.len() } else { w.len() },
        });
    }
    Ok(u.meet_weight3(v, w) % 2 == 1)
}

/// Basis test: weights divisible by 4 and pairwise even intersections.
pub fn is_doubly_even(c: &LinearCode) -> bool {
    let b = c.basis();
    b.iter().all(|u| u.weight() % 4 == 0)
        && (0..b.len()).all(|i| (i + 1..b.len()).all(|j| b[i].meet_weight(&b[j]).is_multiple_of(2)))
}

/// Basis test on singles, pairs and triples.
pub fn is_triply_even(c: &LinearCode) -> bool {
    let b = c.basis();
    let k = b.len();
    if !b.iter().all(|u| u.weight() % 8 == 0) {
        return false;
    }
    for i in 0..k {
        for j in i + 1..k {
            let uv = &b[i] & &b[j];
            if !uv.weight().is_multiple_of(4) {
                return false;
            }
            for w in &b[j + 1..] {
                if !uv.meet_weight(w).is_multiple_of(2) {
                    return false;
                }
            }
        }
    }
    true
}

/// `(C∗C)⊥`.
pub fn star_dual(c: &LinearCode) -> LinearCode {
    c.star_code(c).expect("same length").dual()
}

/// The linear pieces of the radicals of a doubly even code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalSummary {
    pub code: LinearCode,
    /// `D = (C∗C)⊥ ∩ C`.
    pub star_dual_meet: LinearCode,
    /// `C ∩ rad C`.
    pub meet_rad: LinearCode,
    /// `C ∩ Rad C`.
    pub meet_big_rad: LinearCode,
    /// Whether `Rad C ⊆ C`.
    pub contains_big_rad: bool,
}

/// `φ(x) = (B(x, c_i))_i` over the basis of `c`, packed little-endian.
fn phi(c: &LinearCode, x: &Gf2Vector) -> u64 {
    let mut bits = 0u64;
    for (i, ci) in c.basis().iter().enumerate() {
        if x.meet_weight(ci) % 4 == 2 {
            bits |= 1 << i;
        }
    }
    bits
}

fn require_doubly_even(c: &LinearCode) -> Result<()> {
    if !is_doubly_even(c) {
        return Err(Error::Precondition("code is not doubly even".into()));
    }
    if c.dim() > 64 {
        return Err(Error::Precondition("dimension above 64".into()));
    }
    Ok(())
}

/// Returns `(D, C ∩ rad C, C ∩ Rad C)`.
fn meet_radicals(c: &LinearCode) -> (LinearCode, LinearCode, LinearCode) {
    let d = star_dual(c).meet(c).expect("same length");
    let k = c.dim();
    let db = d.basis();
    // Row i collects B(c_i, d_j) over j; its kernel gives combinations of D.
    let rows = (0..k)
        .map(|i| {
            let mut r = Gf2Vector::zeros(db.len());
            for (j, dj) in db.iter().enumerate() {
                if dj.meet_weight(&c.basis()[i]) % 4 == 2 {
                    r.set(j, true);
                }
            }
            r
        })
        .collect();
    let combos = Gf2Matrix::new(db.len(), rows).expect("rows sized").kernel();
    let combine = |a: &Gf2Vector| {
        let mut v = Gf2Vector::zeros(c.length());
        for j in a.ones_iter() {
            v ^= &db[j];
        }
        v
    };
    let rad_rows: Vec<Gf2Vector> = combos.basis().iter().map(combine).collect();
    let meet_rad = LinearCode::new(c.length(), rad_rows).expect("lengths");
    // Q is linear on C ∩ rad C; take its kernel.
    let rb = meet_rad.basis();
    let qrow = {
        let mut r = Gf2Vector::zeros(rb.len());
        for (j, v) in rb.iter().enumerate() {
            if v.weight() % 8 == 4 {
                r.set(j, true);
            }
        }
        r
    };
    let qk = Gf2Matrix::new(rb.len(), vec![qrow])
        .expect("sized")
        .kernel();
    let big_rows = qk
        .basis()
        .iter()
        .map(|a| {
            let mut v = Gf2Vector::zeros(c.length());
            for j in a.ones_iter() {
                v ^= &rb[j];
            }
            v
        })
        .collect();
    let meet_big_rad = LinearCode::new(c.length(), big_rows).expect("lengths");
    (d, meet_rad, meet_big_rad)
}

/// `C ∩ Rad C` for a doubly even code.
pub fn meet_big_rad(c: &LinearCode) -> Result<LinearCode> {
    require_doubly_even(c)?;
    Ok(meet_radicals(c).2)
}

/// `C ∩ rad C` for a doubly even code.
pub fn meet_rad(c: &LinearCode) -> Result<LinearCode> {
    require_doubly_even(c)?;
    Ok(meet_radicals(c).1)
}

pub fn radical_summary(c: &LinearCode) -> Result<RadicalSummary> {
    require_doubly_even(c)?;
    let (d, meet_rad, meet_big_rad) = meet_radicals(c);
    let contains_big_rad = !exists_outside_big_rad(c)?;
    Ok(RadicalSummary {
        code: c.clone(),
        star_dual_meet: d,
        meet_rad,
        meet_big_rad,
        contains_big_rad,
    })
}

/// `rad C` by direct evaluation over `(C∗C)⊥`, testing `B` against every
/// codeword.
pub fn rad_brute(c: &LinearCode) -> Result<Vec<Gf2Vector>> {
    require_doubly_even(c)?;
    let words: Vec<Gf2Vector> = c.words()?.collect();
    let space = star_dual(c);
    let mut out = Vec::new();
    for y in space.words()? {
        if words.iter().all(|x| x.meet_weight(&y) % 4 == 0) {
            out.push(y);
        }
    }
    out.sort();
    Ok(out)
}

/// `Rad C` by direct evaluation: members of `rad C` of weight divisible by 8.
pub fn big_rad_brute(c: &LinearCode) -> Result<Vec<Gf2Vector>> {
    Ok(rad_brute(c)?
        .into_iter()
        .filter(|y| y.weight() % 8 == 0)
        .collect())
}

/// Canonical reduced representatives of the nonzero cosets of
/// `(C∗C)⊥ / ((C∗C)⊥ ∩ C)`, in Gray-code order of the complement basis.
fn outside_cosets(c: &LinearCode) -> Result<(LinearCode, Vec<Gf2Vector>)> {
    let space = star_dual(c);
    let d = space.meet(c)?;
    let comp = d.complement_in(&space)?;
    if comp.len() > SCAN_CAP_LOG2 {
        return Err(Error::EnumerationCap {
            dim: comp.len(),
            cap_log2: SCAN_CAP_LOG2,
        });
    }
    Ok((d, comp))
}

fn for_each_nonzero_combo(basis: &[Gf2Vector], len: usize, mut f: impl FnMut(&Gf2Vector) -> bool) {
    let mut x = Gf2Vector::zeros(len);
    for t in 1u64..(1u64 << basis.len()) {
        x ^= &basis[t.trailing_zeros() as usize];
        if f(&x) {
            return;
        }
    }
}

/// One representative per orbit of the group generated by `gens` (coordinate
/// permutations stabilizing `C`, with `gens[g][i]` the image of coordinate
/// `i`) on the nonzero cosets of `(C∗C)⊥` modulo `(C∗C)⊥ ∩ C`. Each
/// representative is the smallest reduced coset representative in its orbit.
pub fn outside_vectors(c: &LinearCode, gens: &[Vec<usize>]) -> Result<Vec<Gf2Vector>> {
    let (d, comp) = outside_cosets(c)?;
    let mut reps = Vec::new();
    for_each_nonzero_combo(&comp, c.length(), |x| {
        reps.push(x.clone());
        false
    });
    reps.sort();
    let index: std::collections::HashMap<Gf2Vector, usize> = reps
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();
    let mut seen = vec![false; reps.len()];
    let mut out = Vec::new();
    for start in 0..reps.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        out.push(reps[start].clone());
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for g in gens {
                let img = d.reduce(&reps[i].permute(g));
                let j = *index
                    .get(&img)
                    .ok_or_else(|| Error::Precondition("generator does not stabilize C".into()))?;
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    Ok(out)
}

/// Whether `Rad C ⊄ C`.
///
/// With `1 ∈ C` and length divisible by 8 this scans the cosets of
/// `(C∗C)⊥` modulo `D = (C∗C)⊥ ∩ C` using the map `φ`; otherwise it falls
/// back to [`big_rad_brute`].
pub fn exists_outside_big_rad(c: &LinearCode) -> Result<bool> {
    require_doubly_even(c)?;
    let n = c.length();
    if !n.is_multiple_of(8) || !c.contains(&Gf2Vector::ones(n)) {
        return Ok(big_rad_brute(c)?.iter().any(|y| !c.contains(y)));
    }
    let (d, comp) = outside_cosets(c)?;
    let (_, meet_rad, meet_big_rad) = meet_radicals(c);
    let b1 = meet_rad.dim() != meet_big_rad.dim();
    // Image of φ on D, with a preimage tracked for each echelon row.
    let mut rows: Vec<(u64, Gf2Vector)> = Vec::new();
    for dv in d.basis() {
        let mut key = phi(c, dv);
        let mut pre = dv.clone();
        for (k, p) in &rows {
            if key ^ k < key {
                key ^= k;
                pre ^= p;
            }
        }
        if key != 0 {
            rows.push((key, pre));
            rows.sort_by_key(|r| std::cmp::Reverse(r.0));
        }
    }
    let mut found = false;
    for_each_nonzero_combo(&comp, n, |x| {
        let mut key = phi(c, x);
        let mut y = x.clone();
        for (k, p) in &rows {
            if key ^ k < key {
                key ^= k;
                y ^= p;
            }
        }
        if key == 0 && (b1 || y.weight() % 8 == 0) {
            found = true;
        }
        found
    });
    Ok(found)
}

fn require_triply_even(c: &LinearCode) -> Result<()> {
    if !is_triply_even(c) {
        return Err(Error::Precondition("code is not triply even".into()));
    }
    Ok(())
}

/// Reduced vectors `x` outside `C` with `<C, x>` triply even, scanned over
/// the pivot complement of `C` in `(C∗C)⊥`. Stops early when `first_only`.
fn extension_candidates(c: &LinearCode, first_only: bool) -> Result<Vec<Gf2Vector>> {
    let n = c.length();
    if c.dim() == 0 {
        // Every vector is in (C∗C)⊥; weight-8 vectors exist iff n >= 8.
        if n < 8 {
            return Ok(Vec::new());
        }
        let mut x = Gf2Vector::zeros(n);
        for i in n - 8..n {
            x.set(i, true);
        }
        return Ok(vec![x]);
    }
    let space = star_dual(c);
    let comp = c.complement_in(&space)?;
    if comp.len() > SCAN_CAP_LOG2 {
        return Err(Error::EnumerationCap {
            dim: comp.len(),
            cap_log2: SCAN_CAP_LOG2,
        });
    }
    let basis = c.basis();
    let mut out = Vec::new();
    for_each_nonzero_combo(&comp, n, |x| {
        if x.weight() % 8 == 0 && basis.iter().all(|ci| x.meet_weight(ci) % 4 == 0) {
            out.push(x.clone());
            return first_only;
        }
        false
    });
    Ok(out)
}

/// `C` is maximal among triply even codes iff no `x ∉ C` keeps `<C, x>`
/// triply even.
pub fn is_maximal(c: &LinearCode) -> Result<bool> {
    require_triply_even(c)?;
    Ok(extension_candidates(c, true)?.is_empty())
}

/// Grows a triply even code to a maximal one, each time adjoining the
/// smallest qualifying reduced vector (in [`Gf2Vector`] order).
pub fn maximalize(c: &LinearCode) -> Result<LinearCode> {
    require_triply_even(c)?;
    let mut cur = c.clone();
    loop {
        let cands = extension_candidates(&cur, false)?;
        let Some(x) = cands.into_iter().min() else {
            return Ok(cur);
        };
        cur = cur.extend(&[x])?;
        debug_assert!(is_triply_even(&cur));
    }
}

/// Reduced vectors `x ∉ C` in `C⊥` of weight divisible by 4.
fn doubly_even_extensions(c: &LinearCode, first_only: bool) -> Result<Vec<Gf2Vector>> {
    let comp = c.complement_in(&c.dual())?;
    if comp.len() > SCAN_CAP_LOG2 {
        return Err(Error::EnumerationCap {
            dim: comp.len(),
            cap_log2: SCAN_CAP_LOG2,
        });
    }
    let mut out = Vec::new();
    for_each_nonzero_combo(&comp, c.length(), |x| {
        if x.weight() % 4 == 0 {
            out.push(x.clone());
            return first_only;
        }
        false
    });
    Ok(out)
}

pub fn is_maximal_doubly_even(c: &LinearCode) -> Result<bool> {
    require_doubly_even(c)?;
    Ok(doubly_even_extensions(c, true)?.is_empty())
}

/// Grows a doubly even code to a maximal one with the same tie-break as
/// [`maximalize`].
pub fn maximalize_doubly_even(c: &LinearCode) -> Result<LinearCode> {
    require_doubly_even(c)?;
    let mut cur = c.clone();
    loop {
        let Some(x) = doubly_even_extensions(&cur, false)?.into_iter().min() else {
            return Ok(cur);
        };
        cur = cur.extend(&[x])?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones_blocks(blocks: &[usize]) -> LinearCode {
        let n: usize = blocks.iter().sum();
        let mut rows = Vec::new();
        let mut at = 0;
        for &b in blocks {
            rows.push(Gf2Vector::from_support(n, &(at..at + b).collect::<Vec<_>>()).unwrap());
            at += b;
        }
        LinearCode::new(n, rows).unwrap()
    }

    #[test]
    fn forms_on_small_vectors() {
        assert!(!q_form(&Gf2Vector::ones(8)).unwrap());
        assert!(q_form(&Gf2Vector::ones(4)).unwrap());
        assert!(q_form(&Gf2Vector::ones(6)).is_err());
        let u = Gf2Vector::from_bit_string("1100").unwrap();
        let v = Gf2Vector::from_bit_string("1111").unwrap();
        assert!(b_form(&u, &v).unwrap());
        assert!(!b_form(&v, &v).unwrap());
        let w = Gf2Vector::from_bit_string("11100").unwrap();
        assert!(t_form(&w, &w, &w).unwrap());
    }

    #[test]
    fn two_blocks_of_eight() {
        let c = ones_blocks(&[8, 8]);
        assert!(is_triply_even(&c));
        let s = radical_summary(&c).unwrap();
        assert_eq!(s.meet_big_rad, c);
        assert!(!s.contains_big_rad);
        assert!(!is_maximal(&c).unwrap());
        let m = maximalize(&c).unwrap();
        assert!(is_maximal(&m).unwrap());
        assert_eq!(m.dim(), 5);
    }

    #[test]
    fn doubly_even_maximalization() {
        let m = maximalize_doubly_even(&LinearCode::zero(8)).unwrap();
        assert_eq!(m.dim(), 4);
        assert_eq!(m.dual(), m);
        assert!(is_maximal_doubly_even(&LinearCode::repetition(4)).unwrap());
        assert!(!is_maximal_doubly_even(&LinearCode::repetition(8)).unwrap());
    }

    #[test]
    fn zero_code_maximality() {
        assert!(is_maximal(&LinearCode::zero(7)).unwrap());
        assert!(!is_maximal(&LinearCode::zero(8)).unwrap());
    }
}
