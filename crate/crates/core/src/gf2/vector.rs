use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitXor, BitXorAssign};

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub(crate) type Limbs = SmallVec<[u64; 1]>;

#[inline]
pub(crate) fn limb_count(len: usize) -> usize {
    len.div_ceil(64)
}

/// A vector over the two-element field, packed into 64-bit limbs.
///
/// Coordinate `i` (0-based) lives in limb `i / 64`, bit `i % 64`. Bits at
/// positions `>= len` are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Vector {
    len: usize,
    limbs: Limbs,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Self {
        Gf2Vector {
            len,
            limbs: SmallVec::from_elem(0, limb_count(len)),
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Gf2Vector {
            len,
            limbs: SmallVec::from_elem(!0, limb_count(len)),
        };
        v.mask_tail();
        v
    }

    /// Builds a vector from 0-based support indices.
    pub fn from_support(len: usize, support: &[usize]) -> Result<Self> {
        let mut v = Self::zeros(len);
        for &i in support {
            if i >= len {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    length: len,
                });
            }
            v.set(i, true);
        }
        Ok(v)
    }

    /// Builds a vector of length `len <= 64` from a bit mask (bit `i` = coordinate `i`).
    pub fn from_u64(len: usize, bits: u64) -> Result<Self> {
        if len > 64 || (len < 64 && bits >> len != 0) {
            return Err(Error::ValueOutOfRange {
                value: bits,
                length: len,
            });
        }
        let mut v = Self::zeros(len);
        if len > 0 {
            v.limbs[0] = bits;
        }
        Ok(v)
    }

    pub(crate) fn from_limbs(len: usize, limbs: Limbs) -> Self {
        debug_assert_eq!(limbs.len(), limb_count(len));
        let mut v = Gf2Vector { len, limbs };
        v.mask_tail();
        v
    }

    fn mask_tail(&mut self) {
        let r = self.len % 64;
        if r != 0 {
            if let Some(last) = self.limbs.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn limbs(&self) -> &[u64] {
        &self.limbs
    }

    /// The single limb of a vector of length at most 64.
    #[inline]
    pub fn as_u64(&self) -> Option<u64> {
        match self.limbs.len() {
            0 => Some(0),
            1 => Some(self.limbs[0]),
            _ => None,
        }
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "coordinate {i} out of range {}", self.len);
        self.limbs[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "coordinate {i} out of range {}", self.len);
        let m = 1u64 << (i % 64);
        if bit {
            self.limbs[i / 64] |= m;
        } else {
            self.limbs[i / 64] &= !m;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.limbs[i / 64] ^= 1u64 << (i % 64);
    }

    /// Hamming weight.
    #[inline]
    pub fn weight(&self) -> usize {
        self.limbs.iter().map(|l| l.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&l| l == 0)
    }

    /// Index of the lowest set coordinate.
    pub fn leading(&self) -> Option<usize> {
        self.limbs
            .iter()
            .enumerate()
            .find(|(_, &l)| l != 0)
            .map(|(i, l)| i * 64 + l.trailing_zeros() as usize)
    }

    /// 0-based support, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.ones_iter().collect()
    }

    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.limbs.iter().enumerate().flat_map(|(li, &l)| {
            let mut w = l;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(li * 64 + t)
                }
            })
        })
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.len != other.len {
            Err(Error::LengthMismatch {
                left: self.len,
                right: other.len,
            })
        } else {
            Ok(())
        }
    }

    /// Coordinatewise product: the support is the intersection of supports.
    pub fn star(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        Ok(self & other)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        Ok(self ^ other)
    }

    /// Standard inner product.
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len);
        self.limbs
            .iter()
            .zip(&other.limbs)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            & 1
            == 1
    }

    /// `|support(self) ∩ support(other)|`.
    #[inline]
    pub fn meet_weight(&self, other: &Self) -> usize {
        assert_eq!(self.len, other.len);
        self.limbs
            .iter()
            .zip(&other.limbs)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// `|support(a) ∩ support(b) ∩ support(c)|`.
    pub fn meet_weight3(&self, b: &Self, c: &Self) -> usize {
        assert!(self.len == b.len && b.len == c.len);
        self.limbs
            .iter()
            .zip(&b.limbs)
            .zip(&c.limbs)
            .map(|((x, y), z)| (x & y & z).count_ones() as usize)
            .sum()
    }

    /// `(self | other)`, the concatenation.
    pub fn concat(&self, other: &Self) -> Self {
        let mut v = Self::zeros(self.len + other.len);
        for i in self.ones_iter() {
            v.set(i, true);
        }
        for i in other.ones_iter() {
            v.set(self.len + i, true);
        }
        v
    }

    /// Restriction to the given coordinates, in the given order.
    pub fn select(&self, coords: &[usize]) -> Self {
        let mut v = Self::zeros(coords.len());
        for (j, &i) in coords.iter().enumerate() {
            if self.get(i) {
                v.set(j, true);
            }
        }
        v
    }

    /// Relabels coordinates: bit `i` moves to `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.len);
        let mut v = Self::zeros(self.len);
        for i in self.ones_iter() {
            v.set(perm[i], true);
        }
        v
    }

    /// Appends `r` zero coordinates.
    pub fn pad(&self, r: usize) -> Self {
        let mut limbs = self.limbs.clone();
        limbs.resize(limb_count(self.len + r), 0);
        Gf2Vector {
            len: self.len + r,
            limbs,
        }
    }

    /// Coordinates as a 0/1 string, coordinate 1 first.
    pub fn to_bit_string(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }

    pub fn from_bit_string(s: &str) -> Result<Self> {
        let mut v = Self::zeros(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set(i, true),
                _ => return Err(Error::Parse(format!("bad bit character {ch:?}"))),
            }
        }
        Ok(v)
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vector({})", self.to_bit_string())
    }
}

/// Order by length, then lexicographically by coordinates starting at coordinate 1
/// (a vector with a 1 in an earlier coordinate is larger).
impl Ord for Gf2Vector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for (a, b) in self.limbs.iter().zip(&other.limbs) {
                if a != b {
                    return a.reverse_bits().cmp(&b.reverse_bits());
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Gf2Vector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl BitXorAssign<&Gf2Vector> for Gf2Vector {
    #[inline]
    fn bitxor_assign(&mut self, rhs: &Gf2Vector) {
        assert_eq!(self.len, rhs.len, "length mismatch");
        for (a, b) in self.limbs.iter_mut().zip(&rhs.limbs) {
            *a ^= b;
        }
    }
}

impl BitAndAssign<&Gf2Vector> for Gf2Vector {
    #[inline]
    fn bitand_assign(&mut self, rhs: &Gf2Vector) {
        assert_eq!(self.len, rhs.len, "length mismatch");
        for (a, b) in self.limbs.iter_mut().zip(&rhs.limbs) {
            *a &= b;
        }
    }
}

impl BitXor for &Gf2Vector {
    type Output = Gf2Vector;
    #[inline]
    fn bitxor(self, rhs: &Gf2Vector) -> Gf2Vector {
        let mut v = self.clone();
        v ^= rhs;
        v
    }
}

impl BitAnd for &Gf2Vector {
    type Output = Gf2Vector;
    #[inline]
    fn bitand(self, rhs: &Gf2Vector) -> Gf2Vector {
        let mut v = self.clone();
        v &= rhs;
        v
    }
}
