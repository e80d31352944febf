use crate::error::{Error, Result};

use super::{Gf2Vector, LinearCode};

/// A dense matrix over the two-element field, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    ncols: usize,
    rows: Vec<Gf2Vector>,
}

impl Gf2Matrix {
    pub fn new(ncols: usize, rows: Vec<Gf2Vector>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::LengthMismatch {
                left: ncols,
                right: r.len(),
            });
        }
        Ok(Gf2Matrix { ncols, rows })
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Gf2Matrix {
            ncols,
            rows: vec![Gf2Vector::zeros(ncols); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| Gf2Vector::from_support(n, &[i]).expect("in range"))
            .collect();
        Gf2Matrix { ncols: n, rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Gf2Vector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Gf2Vector> {
        self.rows
    }

    pub fn transpose(&self) -> Self {
        let mut t = Gf2Matrix::zeros(self.ncols, self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones_iter() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    /// Reduced row echelon form with zero rows removed. Pivots are the lowest
    /// set coordinate of each row and increase down the rows.
    pub fn rref(&self) -> Self {
        Gf2Matrix {
            ncols: self.ncols,
            rows: rref_rows(self.rows.clone(), self.ncols),
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rows.len()
    }

    /// Right null space `{x : M x = 0}` as a code of length `ncols`.
    pub fn kernel(&self) -> LinearCode {
        let r = rref_rows(self.rows.clone(), self.ncols);
        let pivots: Vec<usize> = r
            .iter()
            .map(|row| row.leading().expect("nonzero"))
            .collect();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for f in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut x = Gf2Vector::zeros(self.ncols);
            x.set(f, true);
            for (row, &p) in r.iter().zip(&pivots) {
                if row.get(f) {
                    x.set(p, true);
                }
            }
            basis.push(x);
        }
        LinearCode::from_rows_unchecked(self.ncols, basis)
    }

    /// `M v` for a column vector `v` of length `ncols`.
    pub fn mul_vec(&self, v: &Gf2Vector) -> Gf2Vector {
        let mut out = Gf2Vector::zeros(self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            if r.dot(v) {
                out.set(i, true);
            }
        }
        out
    }
}

/// Gaussian elimination to reduced echelon form; drops zero rows.
pub(crate) fn rref_rows(mut rows: Vec<Gf2Vector>, ncols: usize) -> Vec<Gf2Vector> {
    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(p) = (rank..rows.len()).find(|&i| rows[i].get(col)) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row.get(col) {
                *row ^= &pivot;
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}
