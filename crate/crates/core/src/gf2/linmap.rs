use crate::error::{Error, Result};

/// Largest dimension a [`LinearMap`] supports.
pub const MAX_MAP_DIM: usize = 32;

/// A linear map `F_2^k -> F_2^k`, `k <= 32`, with vectors packed in `u32`.
/// `cols[i]` is the image of the `i`-th unit vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearMap {
    cols: Vec<u32>,
}

impl LinearMap {
    pub fn identity(k: usize) -> Self {
        assert!(k <= MAX_MAP_DIM);
        LinearMap {
            cols: (0..k).map(|i| 1u32 << i).collect(),
        }
    }

    pub fn from_columns(cols: Vec<u32>) -> Result<Self> {
        let k = cols.len();
        if k > MAX_MAP_DIM {
            return Err(Error::Precondition(format!(
                "map dimension {k} above {MAX_MAP_DIM}"
            )));
        }
        if k < 32 && cols.iter().any(|&c| c >> k != 0) {
            return Err(Error::Precondition("column outside the space".into()));
        }
        Ok(LinearMap { cols })
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[u32] {
        &self.cols
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        let mut y = 0;
        let mut w = x;
        while w != 0 {
            let i = w.trailing_zeros() as usize;
            y ^= self.cols[i];
            w &= w - 1;
        }
        y
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(self.dim(), other.dim());
        LinearMap {
            cols: other.cols.iter().map(|&c| self.apply(c)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.cols.iter().enumerate().all(|(i, &c)| c == 1 << i)
    }

    pub fn rank(&self) -> usize {
        rank_u32(&self.cols)
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.dim()
    }

    pub fn inverse(&self) -> Option<LinearMap> {
        let k = self.dim();
        // Rows of [A | I] where row j of A collects bit j of every column.
        let mut rows: Vec<(u32, u32)> = (0..k)
            .map(|j| {
                let mut a = 0u32;
                for (i, &c) in self.cols.iter().enumerate() {
                    a |= ((c >> j) & 1) << i;
                }
                (a, 1u32 << j)
            })
            .collect();
        for col in 0..k {
            let p = (col..k).find(|&r| rows[r].0 >> col & 1 == 1)?;
            rows.swap(col, p);
            let pivot = rows[col];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != col && row.0 >> col & 1 == 1 {
                    row.0 ^= pivot.0;
                    row.1 ^= pivot.1;
                }
            }
        }
        // rows[i].1 is row i of the inverse matrix.
        let mut cols = vec![0u32; k];
        for (i, row) in rows.iter().enumerate() {
            for (j, c) in cols.iter_mut().enumerate() {
                *c |= ((row.1 >> j) & 1) << i;
            }
        }
        Some(LinearMap { cols })
    }

    /// The map sending `basis[i]` to `images[i]`; `basis` must be a basis.
    pub fn from_basis_images(basis: &[u32], images: &[u32]) -> Result<LinearMap> {
        let k = basis.len();
        if images.len() != k {
            return Err(Error::Precondition("basis and image counts differ".into()));
        }
        let b = LinearMap::from_columns(basis.to_vec())?;
        let binv = b
            .inverse()
            .ok_or_else(|| Error::Precondition("vectors are not a basis".into()))?;
        let img = LinearMap::from_columns(images.to_vec())?;
        Ok(img.compose(&binv))
    }
}

/// Rank of a list of packed vectors.
pub fn rank_u32(vs: &[u32]) -> usize {
    let mut basis: Vec<u32> = Vec::new();
    for &v in vs {
        let mut x = v;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Incremental span membership for packed vectors, keyed by highest bit.
#[derive(Clone, Debug, Default)]
pub struct SpanU32 {
    by_top: [u32; 32],
    rank: usize,
}

impl SpanU32 {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Reduces `v` against the stored rows; zero iff `v` is in the span.
    pub fn reduce(&self, v: u32) -> u32 {
        let mut x = v;
        for t in (0..32).rev() {
            if x >> t & 1 == 1 && self.by_top[t] != 0 {
                x ^= self.by_top[t];
            }
        }
        x
    }

    pub fn contains(&self, v: u32) -> bool {
        self.reduce(v) == 0
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: u32) -> bool {
        let mut x = v;
        for t in (0..32).rev() {
            if x >> t & 1 == 1 {
                if self.by_top[t] == 0 {
                    self.by_top[t] = x;
                    self.rank += 1;
                    return true;
                }
                x ^= self.by_top[t];
            }
        }
        false
    }
}
