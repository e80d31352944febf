use std::fmt;

use crate::error::{Error, Result};

use super::matrix::rref_rows;
use super::{Gf2Matrix, Gf2Vector, WeightEnumerator};

/// Default enumeration cap: codes of dimension above this many bits are not
/// enumerated word by word unless the caller raises the cap.
pub const DEFAULT_ENUMERATION_CAP_LOG2: usize = 24;

/// A binary linear code, stored as its reduced echelon basis.
///
/// The basis is canonical for the subspace, so two codes are equal as sets
/// exactly when the structs compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearCode {
    length: usize,
    basis: Vec<Gf2Vector>,
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] code {{", self.length, self.basis.len())?;
        for (i, r) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", r.to_bit_string())?;
        }
        write!(f, "}}")
    }
}

impl LinearCode {
    /// The code spanned by `rows`.
    pub fn new(length: usize, rows: Vec<Gf2Vector>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != length) {
            return Err(Error::LengthMismatch {
                left: length,
                right: r.len(),
            });
        }
        Ok(Self::from_rows_unchecked(length, rows))
    }

    pub(crate) fn from_rows_unchecked(length: usize, rows: Vec<Gf2Vector>) -> Self {
        LinearCode {
            length,
            basis: rref_rows(rows, length),
        }
    }

    /// Spanned by masks; only valid for `length <= 64`.
    pub fn from_u64_rows(length: usize, rows: &[u64]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|&r| Gf2Vector::from_u64(length, r))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_rows_unchecked(length, rows))
    }

    pub fn zero(length: usize) -> Self {
        LinearCode {
            length,
            basis: Vec::new(),
        }
    }

    pub fn full(length: usize) -> Self {
        Gf2Matrix::zeros(0, length).kernel()
    }

    /// `<1_n>`.
    pub fn repetition(length: usize) -> Self {
        if length == 0 {
            return Self::zero(0);
        }
        Self::from_rows_unchecked(length, vec![Gf2Vector::ones(length)])
    }

    #[inline]
    pub fn length(&self) -> usize {
        self.length
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    #[inline]
    pub fn basis(&self) -> &[Gf2Vector] {
        &self.basis
    }

    pub fn generator_matrix(&self) -> Gf2Matrix {
        Gf2Matrix::new(self.length, self.basis.clone()).expect("rows have code length")
    }

    /// Basis rows as masks; `None` when the length exceeds 64.
    pub fn basis_u64(&self) -> Option<Vec<u64>> {
        if self.length > 64 {
            return None;
        }
        Some(self.basis.iter().map(|r| r.as_u64().unwrap_or(0)).collect())
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|r| r.leading().expect("basis rows are nonzero"))
            .collect()
    }

    /// Reduces `v` modulo the code: clears every pivot coordinate. The result
    /// is a canonical coset representative and is zero iff `v` is a codeword.
    pub fn reduce(&self, v: &Gf2Vector) -> Gf2Vector {
        let mut r = v.clone();
        for row in &self.basis {
            let p = row.leading().expect("nonzero");
            if r.get(p) {
                r ^= row;
            }
        }
        r
    }

    /// Coefficients of a codeword in the echelon basis, or `None` when `v` is
    /// not a codeword.
    pub fn coordinates(&self, v: &Gf2Vector) -> Option<Vec<bool>> {
        let mut r = v.clone();
        let mut coeffs = Vec::with_capacity(self.basis.len());
        for row in &self.basis {
            let p = row.leading().expect("nonzero");
            let c = r.get(p);
            if c {
                r ^= row;
            }
            coeffs.push(c);
        }
        r.is_zero().then_some(coeffs)
    }

    pub fn contains(&self, v: &Gf2Vector) -> bool {
        v.len() == self.length && self.reduce(v).is_zero()
    }

    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        self.length == other.length && self.basis.iter().all(|r| other.contains(r))
    }

    fn check_len(&self, other: &LinearCode) -> Result<()> {
        if self.length != other.length {
            Err(Error::LengthMismatch {
                left: self.length,
                right: other.length,
            })
        } else {
            Ok(())
        }
    }

    pub fn dual(&self) -> LinearCode {
        self.generator_matrix().kernel()
    }

    /// `C + D`.
    pub fn sum(&self, other: &LinearCode) -> Result<LinearCode> {
        self.check_len(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Ok(Self::from_rows_unchecked(self.length, rows))
    }

    /// `C ∩ D`.
    pub fn meet(&self, other: &LinearCode) -> Result<LinearCode> {
        self.check_len(other)?;
        Ok(self.dual().sum(&other.dual())?.dual())
    }

    /// Adds the given vectors to the code.
    pub fn extend(&self, extra: &[Gf2Vector]) -> Result<LinearCode> {
        if let Some(r) = extra.iter().find(|r| r.len() != self.length) {
            return Err(Error::LengthMismatch {
                left: self.length,
                right: r.len(),
            });
        }
        let mut rows = self.basis.clone();
        rows.extend(extra.iter().cloned());
        Ok(Self::from_rows_unchecked(self.length, rows))
    }

    /// `C ⊕ D = {(u|v)}`.
    pub fn direct_sum(&self, other: &LinearCode) -> LinearCode {
        let zl = Gf2Vector::zeros(self.length);
        let zr = Gf2Vector::zeros(other.length);
        let mut rows: Vec<Gf2Vector> = self.basis.iter().map(|r| r.concat(&zr)).collect();
        rows.extend(other.basis.iter().map(|r| zl.concat(r)));
        Self::from_rows_unchecked(self.length + other.length, rows)
    }

    /// `{(x|x) : x ∈ C}`.
    pub fn juxtapose_diag(&self) -> LinearCode {
        let rows = self.basis.iter().map(|r| r.concat(r)).collect();
        Self::from_rows_unchecked(2 * self.length, rows)
    }

    fn check_coords(&self, coords: &[usize]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.length];
        for &i in coords {
            if i >= self.length {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    length: self.length,
                });
            }
            mask[i] = true;
        }
        Ok(mask)
    }

    /// Deletes the coordinates in `coords` (0-based) and keeps the rest in order.
    pub fn puncture(&self, coords: &[usize]) -> Result<LinearCode> {
        let mask = self.check_coords(coords)?;
        let keep: Vec<usize> = (0..self.length).filter(|&i| !mask[i]).collect();
        let rows = self.basis.iter().map(|r| r.select(&keep)).collect();
        Ok(Self::from_rows_unchecked(keep.len(), rows))
    }

    /// Keeps the codewords vanishing on `coords`, then deletes `coords`.
    pub fn shorten(&self, coords: &[usize]) -> Result<LinearCode> {
        let mask = self.check_coords(coords)?;
        let dropped: Vec<usize> = (0..self.length).filter(|&i| mask[i]).collect();
        let keep: Vec<usize> = (0..self.length).filter(|&i| !mask[i]).collect();
        let mut order = dropped.clone();
        order.extend(keep.iter().copied());
        let rows = self.basis.iter().map(|r| r.select(&order)).collect();
        let reduced = rref_rows(rows, self.length);
        let tail: Vec<usize> = (dropped.len()..self.length).collect();
        let rows = reduced
            .into_iter()
            .filter(|r| r.leading().expect("nonzero") >= dropped.len())
            .map(|r| r.select(&tail))
            .collect();
        Ok(Self::from_rows_unchecked(keep.len(), rows))
    }

    /// Appends `r` zero coordinates.
    pub fn pad(&self, r: usize) -> LinearCode {
        LinearCode {
            length: self.length + r,
            basis: self.basis.iter().map(|row| row.pad(r)).collect(),
        }
    }

    /// Relabels coordinates: coordinate `i` moves to `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> LinearCode {
        let rows = self.basis.iter().map(|r| r.permute(perm)).collect();
        Self::from_rows_unchecked(self.length, rows)
    }

    /// `C ∗ D`, the span of coordinatewise products.
    pub fn star_code(&self, other: &LinearCode) -> Result<LinearCode> {
        self.check_len(other)?;
        let mut rows = Vec::new();
        if self == other {
            for i in 0..self.basis.len() {
                for j in i..self.basis.len() {
                    rows.push(&self.basis[i] & &self.basis[j]);
                }
            }
        } else {
            for a in &self.basis {
                for b in &other.basis {
                    rows.push(a & b);
                }
            }
        }
        Ok(Self::from_rows_unchecked(self.length, rows))
    }

    /// Basis of the pivot complement of `self` inside `sup`: the echelon basis
    /// of `sup` reduced modulo `self`. Requires `self ⊆ sup`.
    pub fn complement_in(&self, sup: &LinearCode) -> Result<Vec<Gf2Vector>> {
        if !self.is_subcode_of(sup) {
            return Err(Error::Precondition("complement of a non-subcode".into()));
        }
        let rows = sup.basis.iter().map(|r| self.reduce(r)).collect();
        Ok(rref_rows(rows, self.length))
    }

    fn check_cap(&self, cap_log2: usize) -> Result<()> {
        if self.dim() > cap_log2 {
            Err(Error::EnumerationCap {
                dim: self.dim(),
                cap_log2,
            })
        } else {
            Ok(())
        }
    }

    /// All codewords in Gray-code order: word `t` is word `t-1` plus basis
    /// row `trailing_zeros(t)`, starting from zero.
    pub fn words(&self) -> Result<Words<'_>> {
        self.words_with_cap(DEFAULT_ENUMERATION_CAP_LOG2)
    }

    pub fn words_with_cap(&self, cap_log2: usize) -> Result<Words<'_>> {
        self.check_cap(cap_log2)?;
        Ok(Words {
            code: self,
            next: 0,
            total: 1u64 << self.dim(),
            current: Gf2Vector::zeros(self.length),
        })
    }

    /// Calls `f` on each codeword mask (Gray-code order); requires `length <= 64`.
    pub fn for_each_word_u64(&self, cap_log2: usize, mut f: impl FnMut(u64)) -> Result<()> {
        self.check_cap(cap_log2)?;
        let rows = self
            .basis_u64()
            .ok_or_else(|| Error::Precondition("length exceeds 64".into()))?;
        let mut w = 0u64;
        f(w);
        for t in 1u64..(1u64 << rows.len()) {
            w ^= rows[t.trailing_zeros() as usize];
            f(w);
        }
        Ok(())
    }

    pub fn weight_enumerator(&self) -> Result<WeightEnumerator> {
        self.weight_enumerator_with_cap(DEFAULT_ENUMERATION_CAP_LOG2)
    }

    pub fn weight_enumerator_with_cap(&self, cap_log2: usize) -> Result<WeightEnumerator> {
        let mut coeffs = vec![0u64; self.length + 1];
        if self.length <= 64 {
            self.for_each_word_u64(cap_log2, |w| coeffs[w.count_ones() as usize] += 1)?;
        } else {
            for w in self.words_with_cap(cap_log2)? {
                coeffs[w.weight()] += 1;
            }
        }
        Ok(WeightEnumerator::from_coeffs(coeffs))
    }

    /// Smallest nonzero weight, or `None` for the zero code.
    pub fn minimum_weight(&self) -> Result<Option<usize>> {
        let we = self.weight_enumerator()?;
        Ok(we
            .coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &c)| c > 0)
            .map(|(i, _)| i))
    }
}

/// Iterator over all codewords, see [`LinearCode::words`].
pub struct Words<'a> {
    code: &'a LinearCode,
    next: u64,
    total: u64,
    current: Gf2Vector,
}

impl Iterator for Words<'_> {
    type Item = Gf2Vector;

    fn next(&mut self) -> Option<Gf2Vector> {
        if self.next >= self.total {
            return None;
        }
        if self.next > 0 {
            let i = self.next.trailing_zeros() as usize;
            self.current ^= &self.code.basis[i];
        }
        self.next += 1;
        Some(self.current.clone())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = (self.total - self.next) as usize;
        (r, Some(r))
    }
}
