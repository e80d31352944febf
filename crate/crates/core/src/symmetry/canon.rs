//! Canonical labeling of binary codes of length at most 64 by partition
//! refinement and backtracking, with automorphism pruning.

use std::cmp::Ordering;
use std::hash::Hasher;

use rustc_hash::{FxHashMap, FxHasher};

use crate::error::{Error, Result};
use crate::gf2::LinearCode;

use super::schreier::StabChain;
use super::Perm;

/// Limits for the canonical labeling search.
#[derive(Clone, Debug)]
pub struct CanonOptions {
    /// Search tree nodes before giving up with [`Error::Budget`].
    pub node_budget: usize,
    /// Codes of larger dimension are not canonicalized.
    pub dim_cap_log2: usize,
    /// Optional coordinate colors; equivalences must preserve them.
    pub coloring: Option<Vec<u32>>,
}

impl Default for CanonOptions {
    fn default() -> Self {
        CanonOptions {
            node_budget: 500_000,
            dim_cap_log2: 22,
            coloring: None,
        }
    }
}

/// A canonical representative of a code's equivalence class.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub canonical_code: LinearCode,
    /// Coordinate `i` of the input goes to position `relabeling.apply(i)`.
    pub relabeling: Perm,
    pub aut_generators: Vec<Perm>,
    /// Saturates at `u128::MAX`.
    pub aut_order: u128,
    pub nodes: usize,
}

impl CanonicalForm {
    /// Canonical basis as masks, usable as a hash key.
    pub fn key(&self) -> Vec<u64> {
        self.canonical_code.basis_u64().expect("length at most 64")
    }
}

/// The nonzero codewords of the weight classes taken in order of
/// (class size, weight) until they span the code.
fn distinguishing_words(c: &LinearCode, cap: usize) -> Result<Vec<u64>> {
    let mut by_weight: FxHashMap<u32, Vec<u64>> = FxHashMap::default();
    c.for_each_word_u64(cap, |w| {
        if w != 0 {
            by_weight.entry(w.count_ones()).or_default().push(w);
        }
    })?;
    let mut classes: Vec<(usize, u32, Vec<u64>)> = by_weight
        .into_iter()
        .map(|(w, v)| (v.len(), w, v))
        .collect();
    classes.sort_by_key(|(cnt, w, _)| (*cnt, *w));
    let mut words = Vec::new();
    let mut span: Vec<u64> = Vec::new();
    for (_, _, class) in classes {
        if span.len() == c.dim() {
            break;
        }
        for &w in &class {
            let mut x = w;
            for &b in &span {
                x = x.min(x ^ b);
            }
            if x != 0 {
                span.push(x);
                span.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
        words.extend(class);
    }
    words.sort_unstable();
    Ok(words)
}

fn mix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

struct Leaf {
    invs: Vec<u64>,
    key: Vec<u64>,
    /// Coordinate -> canonical position.
    lab: Vec<usize>,
    path: Vec<usize>,
}

struct Search<'a> {
    n: usize,
    words: Vec<u64>,
    basis: &'a [u64],
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<Perm>,
    nodes: usize,
    budget: usize,
}

impl Search<'_> {
    /// Refines an ordered partition (cells as masks) to equitability with
    /// respect to the coordinate/word incidence. Returns the trace hash.
    fn refine(&self, cells: &mut Vec<u64>) -> u64 {
        let mut trace = FxHasher::default();
        let n = self.n;
        let mut ckey = vec![0u64; n];
        loop {
            ckey.iter_mut().for_each(|k| *k = 0);
            for &w in &self.words {
                let mut h: u64 = 0x51_7CC1_B727_220A;
                for (ci, &c) in cells.iter().enumerate() {
                    let m = (w & c).count_ones() as u64;
                    if m != 0 {
                        h = mix(h ^ ((ci as u64) << 8 | m));
                    }
                }
                let mut bits = w;
                while bits != 0 {
                    let i = bits.trailing_zeros() as usize;
                    ckey[i] = ckey[i].wrapping_add(h);
                    bits &= bits - 1;
                }
            }
            let mut next = Vec::with_capacity(n);
            for &c in cells.iter() {
                if c.count_ones() == 1 {
                    next.push(c);
                    continue;
                }
                let mut members: Vec<(u64, usize)> = Vec::with_capacity(c.count_ones() as usize);
                let mut bits = c;
                while bits != 0 {
                    let i = bits.trailing_zeros() as usize;
                    members.push((ckey[i], i));
                    bits &= bits - 1;
                }
                members.sort_unstable();
                let mut cur = 0u64;
                let mut cur_key = members[0].0;
                for &(k, i) in &members {
                    if k != cur_key {
                        trace.write_u64(cur_key);
                        trace.write_u32(cur.count_ones());
                        next.push(cur);
                        cur = 0;
                        cur_key = k;
                    }
                    cur |= 1 << i;
                }
                if cur != c {
                    trace.write_u64(cur_key);
                    trace.write_u32(cur.count_ones());
                }
                next.push(cur);
            }
            let split = next.len() != cells.len();
            *cells = next;
            if !split {
                break;
            }
        }
        trace.write_usize(cells.len());
        trace.finish()
    }

    fn leaf_key(&self, lab: &[usize]) -> Vec<u64> {
        let rows: Vec<u64> = self
            .basis
            .iter()
            .map(|&r| {
                let mut out = 0u64;
                let mut bits = r;
                while bits != 0 {
                    let i = bits.trailing_zeros() as usize;
                    out |= 1 << lab[i];
                    bits &= bits - 1;
                }
                out
            })
            .collect();
        LinearCode::from_u64_rows(self.n, &rows)
            .expect("length at most 64")
            .basis_u64()
            .expect("length at most 64")
    }

    fn record_auto(&mut self, from_lab: &[usize], lab: &[usize]) {
        let mut inv = vec![0usize; self.n];
        for (i, &p) in from_lab.iter().enumerate() {
            inv[p] = i;
        }
        let g = Perm::new(lab.iter().map(|&p| inv[p]).collect()).expect("bijection");
        if !g.is_identity() && !self.autos.contains(&g) {
            self.autos.push(g);
        }
    }

    fn leaf(&mut self, cells: &[u64], invs: &[u64], path: &[usize]) -> Option<usize> {
        let mut lab = vec![0usize; self.n];
        for (pos, &c) in cells.iter().enumerate() {
            lab[c.trailing_zeros() as usize] = pos;
        }
        let key = self.leaf_key(&lab);
        let Some(first) = &self.first else {
            let leaf = Leaf {
                invs: invs.to_vec(),
                key: key.clone(),
                lab: lab.clone(),
                path: path.to_vec(),
            };
            self.first = Some(leaf);
            self.best = Some(Leaf {
                invs: invs.to_vec(),
                key,
                lab,
                path: path.to_vec(),
            });
            return None;
        };
        if first.invs == invs && first.key == key {
            let common = first
                .path
                .iter()
                .zip(path)
                .take_while(|(a, b)| a == b)
                .count();
            let from = first.lab.clone();
            self.record_auto(&from, &lab);
            return Some(common);
        }
        let best = self.best.as_ref().expect("set with first");
        match (invs, &key).cmp(&(&best.invs[..], &best.key)) {
            Ordering::Equal => {
                let from = best.lab.clone();
                self.record_auto(&from, &lab);
            }
            Ordering::Greater => {
                self.best = Some(Leaf {
                    invs: invs.to_vec(),
                    key,
                    lab,
                    path: path.to_vec(),
                });
            }
            Ordering::Less => {}
        }
        None
    }

    fn pruned_by_invariants(&self, invs: &[u64]) -> bool {
        let Some(first) = &self.first else {
            return false;
        };
        if first.invs.len() >= invs.len() && first.invs[..invs.len()] == *invs {
            return false;
        }
        let best = self.best.as_ref().expect("set with first");
        let m = invs.len().min(best.invs.len());
        invs[..m] < best.invs[..m]
    }

    fn in_explored_orbit(&self, v: usize, explored: &[usize], path: &[usize]) -> bool {
        if explored.is_empty() {
            return false;
        }
        let gens: Vec<&Perm> = self
            .autos
            .iter()
            .filter(|g| path.iter().all(|&p| g.apply(p) == p))
            .collect();
        if gens.is_empty() {
            return false;
        }
        let mut seen = 0u64;
        let mut stack: Vec<usize> = explored.to_vec();
        for &e in explored {
            seen |= 1 << e;
        }
        while let Some(p) = stack.pop() {
            for g in &gens {
                let q = g.apply(p);
                if seen >> q & 1 == 0 {
                    seen |= 1 << q;
                    stack.push(q);
                }
            }
        }
        seen >> v & 1 == 1
    }

    fn dfs(
        &mut self,
        cells: Vec<u64>,
        invs: &mut Vec<u64>,
        path: &mut Vec<usize>,
    ) -> Result<Option<usize>> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Budget(format!(
                "canonical labeling exceeded {} nodes",
                self.budget
            )));
        }
        if self.pruned_by_invariants(invs) {
            return Ok(None);
        }
        if cells.len() == self.n {
            return Ok(self.leaf(&cells, invs, path));
        }
        let ti = cells
            .iter()
            .position(|c| c.count_ones() > 1)
            .expect("not discrete");
        let target = cells[ti];
        let depth = path.len();
        let mut explored = Vec::new();
        let mut bits = target;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if self.in_explored_orbit(v, &explored, path) {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..ti]);
            child.push(1u64 << v);
            child.push(target & !(1u64 << v));
            child.extend_from_slice(&cells[ti + 1..]);
            let inv = self.refine(&mut child);
            invs.push(inv);
            path.push(v);
            let r = self.dfs(child, invs, path);
            invs.pop();
            path.pop();
            explored.push(v);
            if let Some(level) = r? {
                if level < depth {
                    return Ok(Some(level));
                }
            }
        }
        Ok(None)
    }
}

pub fn canonical_form(c: &LinearCode) -> Result<CanonicalForm> {
    canonical_form_with(c, &CanonOptions::default())
}

pub fn canonical_form_with(c: &LinearCode, opts: &CanonOptions) -> Result<CanonicalForm> {
    let n = c.length();
    if n > 64 {
        return Err(Error::Precondition(
            "canonical labeling needs length at most 64".into(),
        ));
    }
    let basis = c.basis_u64().expect("length at most 64");
    let words = distinguishing_words(c, opts.dim_cap_log2)?;
    let mut search = Search {
        n,
        words,
        basis: &basis,
        first: None,
        best: None,
        autos: Vec::new(),
        nodes: 0,
        budget: opts.node_budget,
    };
    let mut cells: Vec<u64> = match &opts.coloring {
        None if n == 0 => Vec::new(),
        None => vec![if n == 64 { !0 } else { (1u64 << n) - 1 }],
        Some(colors) => {
            if colors.len() != n {
                return Err(Error::LengthMismatch {
                    left: n,
                    right: colors.len(),
                });
            }
            let mut by: Vec<(u32, usize)> = colors.iter().copied().zip(0..n).collect();
            by.sort_unstable();
            let mut out: Vec<u64> = Vec::new();
            let mut last = None;
            for (col, i) in by {
                if last != Some(col) {
                    out.push(0);
                    last = Some(col);
                }
                *out.last_mut().expect("pushed") |= 1 << i;
            }
            out
        }
    };
    let inv0 = search.refine(&mut cells);
    let mut invs = vec![inv0];
    let mut path = Vec::new();
    search.dfs(cells, &mut invs, &mut path)?;
    let best = search.best.take().expect("search reaches a leaf");
    let canonical_code = LinearCode::from_u64_rows(n, &best.key)?;
    let relabeling = Perm::new(best.lab)?;
    let gens = search.autos;
    for g in &gens {
        debug_assert_eq!(c.permute(g.images()), *c);
    }
    let aut_order = StabChain::new(Perm::identity(n), &gens).order();
    Ok(CanonicalForm {
        canonical_code,
        relabeling,
        aut_generators: gens,
        aut_order,
        nodes: search.nodes,
    })
}
