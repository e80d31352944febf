use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weight distribution `a_0..a_n` of a code of length `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightEnumerator {
    coeffs: Vec<u64>,
}

impl WeightEnumerator {
    pub fn from_coeffs(coeffs: Vec<u64>) -> Self {
        assert!(!coeffs.is_empty(), "enumerator needs a_0");
        WeightEnumerator { coeffs }
    }

    /// Length `n`; there are `n + 1` coefficients.
    pub fn length(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn count(&self, weight: usize) -> u64 {
        self.coeffs.get(weight).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    /// Nonzero `(weight, count)` pairs.
    pub fn support(&self) -> Vec<(usize, u64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(w, &c)| (w, c))
            .collect()
    }
}

fn binomial_table(n: usize) -> Vec<Vec<i128>> {
    let mut t = vec![vec![0i128; n + 1]; n + 1];
    for i in 0..=n {
        t[i][0] = 1;
        for j in 1..=i {
            t[i][j] = t[i - 1][j - 1] + if j < i { t[i - 1][j] } else { 0 };
        }
    }
    t
}

/// Krawtchouk values `K_j(i)` for length `n`, indexed `[j][i]`.
fn krawtchouk(n: usize) -> Vec<Vec<i128>> {
    let b = binomial_table(n);
    let mut k = vec![vec![0i128; n + 1]; n + 1];
    for (j, row) in k.iter_mut().enumerate() {
        for (i, cell) in row.iter_mut().enumerate() {
            let mut s = 0i128;
            for t in 0..=j.min(i) {
                if j - t > n - i {
                    continue;
                }
                let term = b[i][t] * b[n - i][j - t];
                s += if t % 2 == 0 { term } else { -term };
            }
            *cell = s;
        }
    }
    k
}

/// MacWilliams transform over the rationals. Accepts hypothetical
/// distributions, so the result need not be integral.
pub fn macwilliams_rational(coeffs: &[Ratio<i128>], dim: u32) -> Vec<Ratio<i128>> {
    let n = coeffs.len() - 1;
    let k = krawtchouk(n);
    let scale = Ratio::from_integer(1i128 << dim);
    (0..=n)
        .map(|j| {
            let s: Ratio<i128> = coeffs
                .iter()
                .enumerate()
                .map(|(i, a)| a * Ratio::from_integer(k[j][i]))
                .sum();
            s / scale
        })
        .collect()
}

/// Enumerator of the dual of an `[n, dim]` code with enumerator `we`.
pub fn macwilliams(we: &WeightEnumerator, dim: u32) -> Result<WeightEnumerator> {
    let input: Vec<Ratio<i128>> = we
        .coeffs
        .iter()
        .map(|&c| Ratio::from_integer(c as i128))
        .collect();
    let out = macwilliams_rational(&input, dim);
    let coeffs = out
        .iter()
        .map(|r| {
            if r.is_integer() && *r.numer() >= 0 {
                Ok(*r.numer() as u64)
            } else {
                Err(Error::Precondition(format!(
                    "transform coefficient {r} is not a count"
                )))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WeightEnumerator::from_coeffs(coeffs))
}
