use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::divisible::{maximalize, maximalize_doubly_even};
use crate::error::Result;
use crate::gf2::LinearCode;
use crate::symmetry::{canonical_form_with, orbits, CanonicalForm};

use super::parts::dedup_by_canonical;
use super::PipelineOptions;

/// The classes found at one length.
#[derive(Clone, Debug)]
pub struct ChainLevel {
    pub length: usize,
    pub codes: Vec<LinearCode>,
}

/// One coordinate from each orbit of the automorphism group.
pub fn coordinate_orbit_reps(n: usize, form: &CanonicalForm) -> Vec<usize> {
    let points: Vec<usize> = (0..n).collect();
    orbits(&form.aut_generators, &points)
        .into_iter()
        .map(|o| o[0])
        .collect()
}

/// Shortens every code on one coordinate per orbit, completes each result
/// with `complete`, and keeps one code per class.
pub fn shorten_step(
    codes: &[LinearCode],
    complete: fn(&LinearCode) -> Result<LinearCode>,
    opts: &PipelineOptions,
) -> Result<Vec<LinearCode>> {
    let lists = opts.install(|| {
        codes
            .par_iter()
            .map(|c| -> Result<Vec<(LinearCode, usize)>> {
                let form = canonical_form_with(c, &opts.canon)?;
                coordinate_orbit_reps(c.length(), &form)
                    .into_iter()
                    .map(|i| Ok((complete(&c.shorten(&[i])?)?, 0)))
                    .collect()
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let candidates: Vec<(LinearCode, usize)> = lists.into_iter().flatten().collect();
    Ok(dedup_by_canonical(candidates, opts)?
        .into_iter()
        .map(|(c, _, _)| c)
        .collect())
}

fn chain(
    top: Vec<LinearCode>,
    min_length: usize,
    complete: fn(&LinearCode) -> Result<LinearCode>,
    stage: &str,
    opts: &PipelineOptions,
) -> Result<Vec<ChainLevel>> {
    let Some(n) = top.first().map(LinearCode::length) else {
        return Ok(Vec::new());
    };
    let mut out = vec![ChainLevel {
        length: n,
        codes: top,
    }];
    for length in (min_length..n).rev() {
        opts.check_deadline(stage)?;
        let prev = &out.last().expect("nonempty").codes;
        let codes = shorten_step(prev, complete, opts)?;
        out.push(ChainLevel { length, codes });
    }
    Ok(out)
}

/// Maximal triply even codes at every length from that of `top` down to
/// `min_length`.
pub fn shorten_chain(
    top: Vec<LinearCode>,
    min_length: usize,
    opts: &PipelineOptions,
) -> Result<Vec<ChainLevel>> {
    chain(top, min_length, maximalize, "the shortening chain", opts)
}

/// Maximal doubly even codes at every length from that of `top` down to
/// `min_length`.
pub fn doubly_even_chain(
    top: Vec<LinearCode>,
    min_length: usize,
    opts: &PipelineOptions,
) -> Result<Vec<ChainLevel>> {
    chain(
        top,
        min_length,
        maximalize_doubly_even,
        "the doubly even chain",
        opts,
    )
}

/// Number of classes by dimension.
pub fn dim_counts(codes: &[LinearCode]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for c in codes {
        *m.entry(c.dim()).or_insert(0) += 1;
    }
    m
}

/// Number of indecomposable direct summands, ignoring zero coordinates.
/// Rows of the reduced echelon basis of a direct sum stay inside one
/// summand, so summands are the connected parts of the row supports.
pub fn component_count(c: &LinearCode) -> usize {
    let n = c.length();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    let mut used = vec![false; n];
    for row in c.basis() {
        let s = row.support();
        for &i in &s {
            used[i] = true;
        }
        for w in s.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a.max(b)] = a.min(b);
        }
    }
    (0..n)
        .filter(|&i| used[i] && find(&mut parent, i) == i)
        .count()
}
