#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tecode::gf2::{Gf2Vector, LinearCode, LinearMap};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_vector(r: &mut ChaCha8Rng, n: usize) -> Gf2Vector {
    let mut v = Gf2Vector::zeros(n);
    for i in 0..n {
        if r.gen_bool(0.5) {
            v.set(i, true);
        }
    }
    v
}

pub fn random_code(r: &mut ChaCha8Rng, n: usize, k: usize) -> LinearCode {
    let rows = (0..k).map(|_| random_vector(r, n)).collect();
    LinearCode::new(n, rows).unwrap()
}

/// Every codeword, by counting through coefficient vectors.
pub fn all_words(c: &LinearCode) -> Vec<Gf2Vector> {
    let b = c.basis();
    (0u64..1 << b.len())
        .map(|t| {
            let mut v = Gf2Vector::zeros(c.length());
            for (i, row) in b.iter().enumerate() {
                if t >> i & 1 == 1 {
                    v ^= row;
                }
            }
            v
        })
        .collect()
}

pub fn every_weight_divisible(c: &LinearCode, d: usize) -> bool {
    all_words(c).iter().all(|w| w.weight() % d == 0)
}

/// Random doubly even code: random vectors are kept when every word of the
/// enlarged span has weight divisible by 4.
pub fn random_doubly_even(r: &mut ChaCha8Rng, n: usize, with_ones: bool) -> LinearCode {
    let mut c = if with_ones && n.is_multiple_of(4) {
        LinearCode::repetition(n)
    } else {
        LinearCode::zero(n)
    };
    let target = r.gen_range(1..=n / 2);
    for _ in 0..200 {
        if c.dim() >= target {
            break;
        }
        let mut v = random_vector(r, n);
        // Bias towards weights divisible by 4.
        while !v.weight().is_multiple_of(4) {
            let i = r.gen_range(0..n);
            v.flip(i);
        }
        let d = c.extend(&[v]).unwrap();
        if every_weight_divisible(&d, 4) {
            c = d;
        }
    }
    c
}

/// All of `F_2^n` for small `n`.
pub fn space(n: usize) -> Vec<Gf2Vector> {
    all_words(&LinearCode::full(n))
}

pub fn relabel_random(r: &mut ChaCha8Rng, c: &LinearCode) -> (Vec<usize>, LinearCode) {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..c.length()).collect();
    p.shuffle(r);
    let d = c.permute(&p);
    (p, d)
}

/// `rad C` straight from the definition, scanning all of `C⊥`.
pub fn rad_oracle(c: &LinearCode) -> Vec<Gf2Vector> {
    let words = all_words(c);
    let mut out: Vec<Gf2Vector> = all_words(&c.dual())
        .into_iter()
        .filter(|y| words.iter().all(|x| x.meet_weight(y) % 4 == 0))
        .collect();
    out.sort();
    out
}

pub fn big_rad_oracle(c: &LinearCode) -> Vec<Gf2Vector> {
    rad_oracle(c)
        .into_iter()
        .filter(|y| y.weight() % 8 == 0)
        .collect()
}

/// `y` is orthogonal to every `x ∗ z` with `x, z ∈ C`.
pub fn in_star_dual(c: &LinearCode, y: &Gf2Vector) -> bool {
    let words = all_words(c);
    words
        .iter()
        .all(|x| words.iter().all(|z| x.meet_weight3(z, y) % 2 == 0))
}

/// Steps to the next permutation in lexicographic order.
pub fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Every element of `GL(k, 2)`, by filtering all `k × k` matrices.
pub fn all_gl(k: usize) -> Vec<LinearMap> {
    let q = 1u32 << k;
    let total = (q as u64).pow(k as u32);
    (0..total)
        .filter_map(|t| {
            let cols = (0..k)
                .map(|i| (t >> (k as u64 * i as u64) & (q as u64 - 1)) as u32)
                .collect();
            let m = LinearMap::from_columns(cols).unwrap();
            m.is_invertible().then_some(m)
        })
        .collect()
}
