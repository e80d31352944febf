mod common;

use std::fs;
use std::io::Write;

use proptest::prelude::*;
use serde_json::json;
use tecode::constructions::{d16_plus, desd24, e8, generalized_doubling};
use tecode::divisible::{
    exists_outside_big_rad, is_doubly_even, is_maximal, is_triply_even, maximalize,
};
use tecode::gf2::LinearCode;
use tecode::pipeline::*;
use tecode::symmetry::is_equivalent;
use tecode::Error;

use common::{all_words, relabel_random, rng};

fn opts() -> PipelineOptions {
    PipelineOptions::default()
}

/// Keeps one code per class by pairwise equivalence tests.
fn classes(codes: &[LinearCode]) -> Vec<LinearCode> {
    let mut out: Vec<LinearCode> = Vec::new();
    for c in codes {
        if !out.iter().any(|d| is_equivalent(c, d).unwrap().is_some()) {
            out.push(c.clone());
        }
    }
    out
}

fn pairwise_inequivalent(codes: &[LinearCode]) -> bool {
    classes(codes).len() == codes.len()
}

/// Every subcode of codimension one containing `r`: the kernels of the
/// nonzero functionals on `c` that vanish on `r`, found as duals of
/// `<c⊥, x>` for every `x ∈ r⊥ \ c⊥` up to `c⊥`.
fn all_hyperplanes(c: &LinearCode, r: &LinearCode) -> Vec<LinearCode> {
    let cd = c.dual();
    let mut seen: Vec<LinearCode> = Vec::new();
    for x in all_words(&r.dual()) {
        if cd.contains(&x) {
            continue;
        }
        let h = cd.extend(&[x]).unwrap().dual();
        if !seen.contains(&h) {
            seen.push(h);
        }
    }
    seen
}

#[test]
fn subcode_step_matches_brute_force() {
    for c in [e8().direct_sum(&e8()), d16_plus(), e8()] {
        let entry = PartsEntry::new(c.clone(), 0, &opts()).unwrap();
        let fast = subcode_step(&entry).unwrap();
        let all = all_hyperplanes(&c, &entry.ctx.radical);
        let q = entry.ctx.radical.dual().dim() - c.dual().dim();
        assert_eq!(all.len(), (1 << q) - 1);
        for h in &fast {
            assert_eq!(h.dim() + 1, c.dim());
            assert!(entry.ctx.radical.is_subcode_of(h));
            assert!(h.is_subcode_of(&c));
        }
        assert_eq!(fast.len(), classes(&all).len());
        assert!(pairwise_inequivalent(&fast));
    }
}

#[test]
fn small_database_descent() {
    let top = vec![e8().direct_sum(&e8()), d16_plus()];
    let mut seen = Vec::new();
    let db = build_parts_db_from(top, &opts(), |l, e| {
        seen.push((l, e.len()));
        Ok(())
    })
    .unwrap();
    assert_eq!(seen.len(), db.levels.len());
    assert!(db.levels.last().unwrap().is_empty());
    for (l, level) in db.levels.iter().enumerate() {
        let codes: Vec<LinearCode> = level.iter().map(|e| e.code().clone()).collect();
        assert!(pairwise_inequivalent(&codes), "level {l}");
        for e in level {
            assert_eq!(e.dim(), 8 - l);
            assert!(is_doubly_even(e.code()));
            assert!(!exists_outside_big_rad(e.code()).unwrap());
            assert!(is_triply_even(&e.ctx.radical));
            assert!(e.prd() <= e.radical_dim());
        }
    }
    assert_eq!(db.len(), db.level_counts().iter().sum::<usize>());
}

#[test]
fn duplex_entries_are_triply_even() {
    for c in [e8(), d16_plus(), desd24(1).unwrap()] {
        let entry = PartsEntry::new(c.clone(), 0, &opts()).unwrap();
        let d = duplex_entry(&entry, &opts()).unwrap();
        assert!(!d.excluded);
        assert!(!d.constructed.is_empty());
        let t = generalized_doubling(&c).unwrap();
        assert!(is_equivalent(&d.constructed[0], &t).unwrap().is_some());
        for p in &d.constructed {
            assert!(is_triply_even(p));
            assert_eq!(p.dim(), entry.dim() + entry.radical_dim());
        }
        assert!(pairwise_inequivalent(&d.constructed));
    }
    let g0 = g0_generators(&PartsEntry::new(e8(), 0, &opts()).unwrap()).unwrap();
    assert!(!g0.is_empty());
}

#[test]
fn identifier_recognizes_relabeled_representatives() {
    let reps = representatives();
    let id = Identifier::new(reps.clone(), &Default::default()).unwrap();
    assert_eq!(id.labels().len(), 10);
    let mut r = rng(41);
    for (i, (_, c)) in reps.iter().enumerate() {
        let (_, d) = relabel_random(&mut r, c);
        assert_eq!(id.identify(&d).unwrap(), Some(i));
    }
    let dup = vec![reps[0].clone(), ("again".to_string(), reps[0].1.clone())];
    assert!(Identifier::new(dup, &Default::default()).is_err());
    assert_eq!(id.identify(&LinearCode::repetition(48)).unwrap(), None);
}

#[test]
fn shortening_small_chain() {
    let top = vec![generalized_doubling(&e8()).unwrap()];
    let chain = shorten_chain(top.clone(), 12, &opts()).unwrap();
    assert_eq!(
        chain.iter().map(|l| l.length).collect::<Vec<_>>(),
        [16, 15, 14, 13, 12]
    );
    for level in &chain {
        assert!(pairwise_inequivalent(&level.codes));
        for c in &level.codes {
            assert_eq!(c.length(), level.length);
            assert!(is_triply_even(c));
            assert!(is_maximal(c).unwrap());
        }
    }
    // Shortening on every coordinate gives the same classes.
    let t = &top[0];
    let brute: Vec<LinearCode> = (0..16)
        .map(|i| maximalize(&t.shorten(&[i]).unwrap()).unwrap())
        .collect();
    assert_eq!(classes(&brute).len(), chain[1].codes.len());
    let counts = dim_counts(&chain[0].codes);
    assert_eq!(counts.get(&5), Some(&1));
}

#[test]
fn doubly_even_small_chain() {
    let chain = doubly_even_chain(vec![e8()], 4, &opts()).unwrap();
    for level in &chain[1..] {
        for c in &level.codes {
            assert!(is_doubly_even(c));
            assert!(c.dim() <= level.length / 2);
        }
    }
    assert_eq!(chain.last().unwrap().codes.len(), 1);
    assert_eq!(chain.last().unwrap().codes[0].dim(), 1);
}

#[test]
fn component_counts() {
    let e = e8();
    assert_eq!(
        component_count(&e.direct_sum(&d16_plus()).direct_sum(&e)),
        3
    );
    assert_eq!(component_count(&desd24(1).unwrap()), 1);
    assert_eq!(
        component_count(&generalized_doubling(&e.direct_sum(&e)).unwrap()),
        2
    );
}

fn temp_path(dir: &tempfile::TempDir) -> std::path::PathBuf {
    dir.path().join("checkpoint.ndjson")
}

#[test]
fn checkpoint_store_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = temp_path(&dir);
    let lines: Vec<CheckpointLine> = (0..5)
        .map(|i| CheckpointLine::new("note", json!({ "i": i, "s": "x".repeat(i) })))
        .collect();
    {
        let store = CheckpointStore::open(&path).unwrap();
        assert!(store.records().is_empty());
        for l in &lines {
            store.append(l).unwrap();
        }
    }
    let store = CheckpointStore::open(&path).unwrap();
    assert_eq!(store.records(), &lines[..]);
    drop(store);

    // An interrupted final write is discarded and overwritten.
    let mut f = fs::OpenOptions::new().append(true).open(&path).unwrap();
    write!(f, "{{\"kind\":\"no").unwrap();
    drop(f);
    let store = CheckpointStore::open(&path).unwrap();
    assert_eq!(store.records().len(), 5);
    store.append(&lines[0]).unwrap();
    drop(store);
    assert_eq!(CheckpointStore::open(&path).unwrap().records().len(), 6);
}

#[test]
fn checkpoint_tampering_is_detected() {
    let dir = tempfile::tempdir().unwrap();
    let path = temp_path(&dir);
    let store = CheckpointStore::open(&path).unwrap();
    store
        .append(&CheckpointLine::new("note", json!({"v": 10})))
        .unwrap();
    store
        .append(&CheckpointLine::new("note", json!({"v": 11})))
        .unwrap();
    drop(store);
    let text = fs::read_to_string(&path).unwrap();
    fs::write(&path, text.replacen("10", "12", 1)).unwrap();
    assert!(matches!(
        CheckpointStore::open(&path),
        Err(Error::Checkpoint(_))
    ));
    fs::write(&path, "not json\n").unwrap();
    assert!(matches!(
        CheckpointStore::open(&path),
        Err(Error::Checkpoint(_))
    ));
}

#[test]
fn report_json_round_trip() {
    let report = ClassificationReport {
        level_counts: vec![9, 42],
        parts_table: vec![vec![1, 2, 3, 0, 0, 0]],
        duplex: DuplexCounts {
            maximal: 30,
            constructed: 214,
            excluded: 1268,
        },
        hybrid: HybridCounts {
            pairs: 125,
            constructed: 225,
            maximal: 5,
        },
        classes: Vec::new(),
        unidentified: Vec::new(),
        notes: vec!["n".into()],
    };
    let back = ClassificationReport::from_json(&report.to_json()).unwrap();
    assert_eq!(back, report);
    assert!(ClassificationReport::from_json("[]").is_err());
}

#[test]
fn deadline_is_enforced() {
    let o = opts().with_budget(std::time::Duration::ZERO);
    std::thread::sleep(std::time::Duration::from_millis(2));
    assert!(matches!(o.check_deadline("x"), Err(Error::Budget(_))));
    assert!(opts().check_deadline("x").is_ok());
}

proptest! {
    #[test]
    fn checkpoint_lines_round_trip(kind in "[a-z_]{1,12}", xs in proptest::collection::vec(any::<i64>(), 0..10), s in ".*") {
        let l = CheckpointLine::new(&kind, json!({ "xs": xs, "s": s }));
        let text = l.to_line();
        prop_assert!(!text.contains('\n'));
        prop_assert_eq!(CheckpointLine::parse(&text).unwrap(), l);
    }
}
