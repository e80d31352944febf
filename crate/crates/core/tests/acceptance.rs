//! Acceptance run: one line per criterion, exit status 1 if any fails.
//! Every count is compared exactly.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::Rng;
use tecode::constructions::*;
use tecode::divisible::*;
use tecode::gf2::{macwilliams_rational, Gf2Vector, LinearCode, LinearMap};
use tecode::pipeline::*;
use tecode::symmetry::*;

use common::*;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn span(n: usize, vs: &[Gf2Vector]) -> LinearCode {
    LinearCode::new(n, vs.to_vec()).unwrap()
}

fn equivalent(a: &LinearCode, b: &LinearCode) -> bool {
    is_equivalent(a, b).unwrap().is_some()
}

fn t1_forms_and_radicals() -> Check {
    let mut r = rng(101);
    let mut codes = 0;
    for case in 0..200 {
        let n = if case % 2 == 0 {
            16
        } else {
            r.gen_range(4..=12)
        };
        let c = random_doubly_even(&mut r, n, case % 3 != 0);
        let words = all_words(&c);
        let dual = all_words(&c.dual());
        let rad = rad_oracle(&c);
        let big = big_rad_oracle(&c);

        // Form identities on sampled words.
        for _ in 0..4 {
            let x = &words[r.gen_range(0..words.len())];
            let y = &words[r.gen_range(0..words.len())];
            let u = &dual[r.gen_range(0..dual.len())];
            let v = &dual[r.gen_range(0..dual.len())];
            let q = |w: &Gf2Vector| q_form(w).unwrap();
            let b = |a: &Gf2Vector, w: &Gf2Vector| b_form(a, w).unwrap();
            ensure!(
                q(&(x ^ y)) == q(x) ^ q(y) ^ b(x, y),
                "Q is not quadratic with polar B"
            );
            ensure!(
                b(x, &(u ^ v)) == b(x, u) ^ b(x, v) ^ t_form(x, u, v).unwrap(),
                "B fails additivity up to T"
            );
        }
        // rad C ⊆ (C∗C)⊥; closure under adding its members inside C.
        for y in &rad {
            ensure!(in_star_dual(&c, y), "radical vector outside (C*C)^perp");
        }
        let in_c: Vec<&Gf2Vector> = rad.iter().filter(|y| c.contains(y)).collect();
        for x in rad.iter().take(16) {
            for m in &in_c {
                ensure!(
                    rad.binary_search(&(x ^ *m)).is_ok(),
                    "rad C + (C ∩ rad C) not closed"
                );
            }
        }
        for z in big.iter().take(16) {
            for m in big.iter().filter(|y| c.contains(y)) {
                ensure!(
                    big.binary_search(&(z ^ m)).is_ok(),
                    "Rad C + (C ∩ Rad C) not closed"
                );
            }
        }
        // The meets are subspaces and match the library.
        let s = radical_summary(&c).map_err(|e| e.to_string())?;
        let big_in_c: Vec<Gf2Vector> = big.iter().filter(|y| c.contains(y)).cloned().collect();
        let rad_in_c: Vec<Gf2Vector> = in_c.iter().map(|v| (*v).clone()).collect();
        ensure!(
            rad_in_c.len() == 1 << s.meet_rad.dim(),
            "C ∩ rad C is not a subspace"
        );
        ensure!(
            big_in_c.len() == 1 << s.meet_big_rad.dim(),
            "C ∩ Rad C is not a subspace"
        );
        ensure!(s.meet_rad == span(n, &rad_in_c), "C ∩ rad C disagrees");
        ensure!(s.meet_big_rad == span(n, &big_in_c), "C ∩ Rad C disagrees");
        ensure!(rad_brute(&c).unwrap() == rad, "rad_brute disagrees");
        ensure!(big_rad_brute(&c).unwrap() == big, "big_rad_brute disagrees");
        let inside = big.iter().all(|y| c.contains(y));
        ensure!(s.contains_big_rad == inside, "Rad C ⊆ C test disagrees");
        codes += 1;
    }
    Ok(format!("{codes} random doubly even codes, exact agreement"))
}

fn t2_constructions() -> Check {
    let hamming = LinearCode::from_u64_rows(8, &[0xf0, 0xcc, 0xaa, 0xff]).unwrap();
    ensure!(
        equivalent(
            &extended_doubling(&LinearCode::repetition(4).dual()),
            &hamming
        ),
        "extD of the even weight code of length 4 is not e8"
    );
    let td = |c: &LinearCode| generalized_doubling(c).unwrap();
    let dims = [
        td(&e8()).dim(),
        td(&d16_plus()).dim(),
        td(&e8().direct_sum(&e8())).dim(),
    ];
    ensure!(dims == [5, 9, 10], "doubling dims {dims:?}");
    let d24: Vec<usize> = all_desd24().iter().map(|c| td(c).dim()).collect();
    ensure!(
        d24 == [13, 13, 13, 13, 13, 13, 13, 14, 15],
        "length 24 doubling dims {d24:?}"
    );
    for (n, m) in [(6usize, 15usize), (10, 45)] {
        let t = triangular_code(n).unwrap();
        let we = t.weight_enumerator().unwrap();
        let mut expect = vec![0u64; m + 1];
        for l in 0..=(n - 1) / 4 {
            let binom = (0..2 * l).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64);
            expect[2 * l * (n - 2 * l)] += binom;
        }
        ensure!(we.coeffs() == expect, "T({n}) enumerator {:?}", we.coeffs());
        let tt = t.star_code(&t).unwrap().dim();
        ensure!(tt == (n - 1) * (n - 2) / 2, "dim T({n})*T({n}) = {tt}");
    }
    for c in all_desd24() {
        let t = td(&c);
        ensure!(t.star_code(&t).unwrap().dual() == t, "(D*D)^perp != D");
    }
    for (name, c) in representatives() {
        ensure!(is_maximal(&c).unwrap(), "{name} is not maximal");
    }
    ensure!(
        equivalent(&padded_triangular_code(6).unwrap(), &td(&e8())),
        "ttgc(6) is not tildeD(e8)"
    );
    Ok("doublings, triangular codes and representatives exact".into())
}

fn t3_symmetry_small() -> Check {
    let c = e8();
    let mut p: Vec<usize> = (0..8).collect();
    let mut brute = 0u128;
    loop {
        brute += (c.permute(&p) == c) as u128;
        if !next_permutation(&mut p) {
            break;
        }
    }
    let fast = canonical_form(&c).unwrap().aut_order;
    ensure!(
        brute == 1344 && fast == brute,
        "|Aut(e8)| brute {brute} canonical {fast}"
    );

    let mut r = rng(103);
    for k in 2..=4 {
        let gl = all_gl(k);
        for _ in 0..30 {
            let mut x: BTreeSet<u32> = BTreeSet::from([0]);
            for q in 1..1u32 << k {
                if r.gen_bool(0.4) {
                    x.insert(q);
                }
            }
            let pts: Vec<u32> = x.iter().copied().collect();
            let s = gl_set_stabilizer(k, &pts, 1_000_000).map_err(|e| e.to_string())?;
            let count = gl
                .iter()
                .filter(|m| x.iter().all(|&q| x.contains(&m.apply(q))))
                .count() as u128;
            ensure!(
                s.order == count,
                "stabilizer of {pts:?}: {} vs {count}",
                s.order
            );
        }
    }

    for k in 2..=3 {
        let gl = all_gl(k);
        for _ in 0..20 {
            let mut pick = || -> Vec<LinearMap> {
                let n = r.gen_range(0..=2);
                (0..n)
                    .map(|_| gl[r.gen_range(0..gl.len())].clone())
                    .collect()
            };
            let (ga, gb) = (pick(), pick());
            let a = StabChain::new(LinearMap::identity(k), &ga);
            let b = StabChain::new(LinearMap::identity(k), &gb);
            let (ea, eb) = (a.elements(), b.elements());
            let reps = double_coset_reps(&gl, &a, &b, 10_000).map_err(|e| e.to_string())?;
            let mut cover: BTreeSet<Vec<u32>> = BTreeSet::new();
            let mut total = 0;
            for g in &reps {
                let mut dc = BTreeSet::new();
                for u in &ea {
                    for v in &eb {
                        dc.insert(u.compose(&g.compose(v)).columns().to_vec());
                    }
                }
                total += dc.len();
                cover.extend(dc);
            }
            ensure!(
                total == gl.len() && cover.len() == gl.len(),
                "double cosets in GL({k},2) overlap or miss elements"
            );
        }
    }

    let mut corpus = vec![e8(), d16_plus(), desd24(1).unwrap(), desd24(6).unwrap()];
    while corpus.len() < 20 {
        let n = r.gen_range(6..=28);
        let k = r.gen_range(1..=n.min(10));
        corpus.push(random_code(&mut r, n, k));
    }
    for c in &corpus {
        let f = canonical_form(c).unwrap();
        for _ in 0..100 {
            let (_, d) = relabel_random(&mut r, c);
            ensure!(
                canonical_form(&d).unwrap().canonical_code == f.canonical_code,
                "canonical form depends on labels"
            );
        }
    }
    Ok(
        "brute-force agreement for Aut(e8), set stabilizers, double cosets, 2000 relabelings"
            .into(),
    )
}

const LEVELS: [usize; 9] = [9, 42, 160, 377, 437, 220, 36, 1, 0];
const TABLE1: [[usize; 6]; 8] = [
    [7, 1, 1, 0, 0, 0],
    [33, 6, 3, 0, 0, 0],
    [130, 19, 10, 1, 0, 0],
    [308, 40, 23, 5, 0, 1],
    [363, 37, 25, 10, 1, 1],
    [180, 16, 10, 11, 2, 1],
    [27, 2, 0, 4, 2, 1],
    [0, 0, 0, 0, 1, 0],
];

fn t4_table1(db: &PartsDb, elapsed: Duration) -> Check {
    let levels = db.level_counts();
    ensure!(levels == LEVELS, "level counts {levels:?}");
    let t = db.table();
    ensure!(t == TABLE1, "table {t:?}");
    ensure!(db.len() == 1282, "total {}", db.len());
    // Each level drops the dimension by one and never loses radical.
    for (l, level) in db.levels.iter().enumerate() {
        for e in level {
            ensure!(e.dim() == 12 - l, "entry of dim {} at level {l}", e.dim());
            ensure!(e.prd() <= e.radical_dim(), "radical shrank in descent");
            ensure!(is_doubly_even(e.code()), "entry not doubly even");
        }
    }
    ensure!(elapsed < Duration::from_secs(30 * 60), "took {elapsed:?}");
    Ok(format!(
        "levels {levels:?}, 1282 entries in {:.1?}",
        elapsed
    ))
}

fn t5_classification(cl: &Classification, elapsed: Duration) -> Check {
    let rep = &cl.report;
    let d = &rep.duplex;
    ensure!(
        (d.maximal, d.constructed, d.excluded) == (30, 214, 1268),
        "duplex counts {d:?}"
    );
    let h = &rep.hybrid;
    ensure!(
        (h.pairs, h.constructed, h.maximal) == (125, 225, 5),
        "hybrid counts {h:?}"
    );
    ensure!(
        rep.unidentified.is_empty(),
        "{} unidentified codes",
        rep.unidentified.len()
    );
    ensure!(rep.classes.len() == 10, "{} classes", rep.classes.len());
    ensure!(
        rep.class_dims() == [9, 13, 13, 13, 13, 13, 13, 13, 14, 15],
        "class dims {:?}",
        rep.class_dims()
    );
    ensure!(
        rep.classes
            .iter()
            .any(|c| c.label == "ttgc(10)" && c.hybrid_hits == 1),
        "ttgc(10) not reached once by distinct pairs"
    );
    let reps = representatives();
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            ensure!(
                !equivalent(&reps[i].1, &reps[j].1),
                "{} ≅ {}",
                reps[i].0,
                reps[j].0
            );
        }
    }
    // Excluded entries really give non-maximal codes from the identity.
    let mut checked = 0;
    for e in cl
        .db
        .entries()
        .filter(|e| e.radical_dim() == e.prd())
        .take(20)
    {
        let c = pair_code(&e.ctx, &e.ctx, &LinearMap::identity(e.ctx.quotient_dim()))
            .map_err(|x| x.to_string())?;
        ensure!(
            !is_maximal(&c).unwrap(),
            "excluded entry gives a maximal code"
        );
        checked += 1;
    }
    ensure!(elapsed < Duration::from_secs(2 * 3600), "took {elapsed:?}");
    Ok(format!(
        "duplex (30, 214, 1268), hybrid (125, 225, 5), 10 classes, {checked} exclusions rechecked, {:.1?}",
        elapsed
    ))
}

fn t6_shortening(opts: &PipelineOptions) -> Check {
    let start = Instant::now();
    let top: Vec<LinearCode> = representatives().into_iter().map(|(_, c)| c).collect();
    let te = shorten_chain(top, 8, opts).map_err(|e| e.to_string())?;
    let de = doubly_even_chain(all_desd24(), 4, opts).map_err(|e| e.to_string())?;
    let expect: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::from([
        (8, vec![(1, 1)]),
        (16, vec![(5, 1)]),
        (24, vec![(5, 1), (6, 1)]),
        (32, vec![(9, 1), (10, 1)]),
        (40, vec![(9, 7), (10, 2), (11, 1)]),
    ]);
    for (&n, want) in &expect {
        let level = te.iter().find(|l| l.length == n).ok_or("missing length")?;
        let got: Vec<(usize, usize)> = dim_counts(&level.codes).into_iter().collect();
        ensure!(&got == want, "length {n}: {got:?}");
        let half = de
            .iter()
            .find(|l| l.length == n / 2)
            .ok_or("missing half length")?;
        let key = |c: &LinearCode| canonical_form(c).unwrap().key();
        let mut a: Vec<_> = half
            .codes
            .iter()
            .map(|c| key(&generalized_doubling(c).unwrap()))
            .collect();
        let mut b: Vec<_> = level.codes.iter().map(key).collect();
        a.sort();
        a.dedup();
        b.sort();
        ensure!(
            a == b,
            "length {n}: classes are not the doublings of length {}",
            n / 2
        );
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(4 * 3600), "took {elapsed:?}");
    Ok(format!(
        "lengths 8..40 match, all doublings, {:.1?}",
        elapsed
    ))
}

/// Vertex classes of the graph whose edges are the weight-2 words of the
/// dual, found by testing every pair.
fn weight_two_components(c: &LinearCode) -> Vec<usize> {
    let n = c.length();
    let dual = c.dual();
    let mut comp: Vec<usize> = (0..n).collect();
    let mut edges = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let e = Gf2Vector::from_support(n, &[i, j]).unwrap();
            if dual.contains(&e) {
                edges[i][j] = true;
                edges[j][i] = true;
                let (a, b) = (comp[i], comp[j]);
                for x in comp.iter_mut() {
                    if *x == b {
                        *x = a;
                    }
                }
            }
        }
    }
    let mut sizes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &k) in comp.iter().enumerate() {
        sizes.entry(k).or_default().push(v);
    }
    // Components must be cliques.
    for vs in sizes.values() {
        for &a in vs {
            for &b in vs {
                assert!(a == b || edges[a][b], "component is not complete");
            }
        }
    }
    let mut out: Vec<usize> = sizes.values().map(Vec::len).collect();
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn t7_proof_devices() -> Check {
    for (name, c) in representatives() {
        let we = c.weight_enumerator().unwrap();
        ensure!(we.count(24) > 0, "{name} has no word of weight 24");
        let sizes = weight_two_components(&c);
        ensure!(sizes[0] <= 8, "{name}: component of size {}", sizes[0]);
        if sizes[0] > 4 {
            ensure!(
                sizes[1..].iter().all(|&s| s <= 3),
                "{name}: components {sizes:?}"
            );
        }
        let pairs: usize = sizes.iter().map(|s| s * (s - 1) / 2).sum();
        ensure!(pairs <= 72, "{name}: {pairs} dual words of weight 2");
    }
    let t = padded_triangular_code(10).unwrap();
    let dual = t.dual();
    // 1 ∈ ttgc(10), so no coordinate vanishes and the dual has no word of
    // weight 1; the three padding coordinates agree on every codeword.
    ensure!(
        t.contains(&Gf2Vector::ones(48)),
        "ttgc(10) lacks the all-ones word"
    );
    for i in 0..48 {
        ensure!(
            !dual.contains(&Gf2Vector::from_support(48, &[i]).unwrap()),
            "ttgc(10) dual has a weight-1 word"
        );
    }
    ensure!(
        dual.contains(&Gf2Vector::from_support(48, &[45, 46]).unwrap()),
        "ttgc(10) dual lacks a weight-2 word"
    );
    // Dual weight-2 count for a hypothetical code with no weight-24 word.
    for k in 9..=15u32 {
        for a in [0i128, 1, 15] {
            let mut e = vec![Ratio::from_integer(0i128); 49];
            let rest = (1i128 << (k - 1)) - 1 - a;
            e[0] = Ratio::from_integer(1);
            e[48] = Ratio::from_integer(1);
            e[8] = Ratio::from_integer(a);
            e[40] = Ratio::from_integer(a);
            e[16] = Ratio::from_integer(rest);
            e[32] = Ratio::from_integer(rest);
            let b2 = macwilliams_rational(&e, k)[2];
            let pow = |x: i32| Ratio::new(1i128 << x.max(0), 1i128 << (-x).max(0));
            let want = Ratio::from_integer(3 * a) * pow(8 - k as i32)
                + Ratio::from_integer(104)
                + pow(11 - k as i32);
            ensure!(
                b2 == want,
                "dual weight-2 count {b2} vs {want} at k={k}, a={a}"
            );
            ensure!(b2 > Ratio::from_integer(72), "bound fails at k={k}");
        }
    }
    Ok("weight-24 words, weight-2 graphs, ttgc(10) dual minimum weight 2".into())
}

fn main() -> ExitCode {
    let opts = PipelineOptions::default();
    let mut failed = 0;
    let mut report = |id: &str, name: &str, r: Check| match &r {
        Ok(msg) => println!("{id} {name}: PASS ({msg})"),
        Err(msg) => {
            println!("{id} {name}: FAIL ({msg})");
            failed += 1;
        }
    };
    report("T1", "forms and radicals", t1_forms_and_radicals());
    report("T2", "constructions", t2_constructions());
    report("T3", "symmetry (small)", t3_symmetry_small());

    let start = Instant::now();
    match classify48(&opts) {
        Ok(cl) => {
            let elapsed = start.elapsed();
            report("T4", "parts table", t4_table1(&cl.db, elapsed));
            report("T5", "classification", t5_classification(&cl, elapsed));
        }
        Err(e) => {
            report("T4", "parts table", Err(e.to_string()));
            report("T5", "classification", Err(e.to_string()));
        }
    }
    report("T6", "shortening chain", t6_shortening(&opts));
    report("T7", "proof devices", t7_proof_devices());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
