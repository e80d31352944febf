//! Replays the fuzz corpus seeds through the same properties the fuzz
//! targets assert.

use std::fs;
use std::path::PathBuf;

use tecode::constructions::code_by_name;
use tecode::gf2::hexio::{emit_hex_text, parse_hex_text};
use tecode::gf2::CodeRecord;
use tecode::pipeline::CheckpointLine;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, fs::read_to_string(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn hex_text_seeds() {
    for (name, text) in seeds("hex_text") {
        match parse_hex_text(&text, None) {
            Ok(c) => assert_eq!(parse_hex_text(&emit_hex_text(&c), None).unwrap(), c),
            Err(_) => assert_eq!(name, "too_wide.txt"),
        }
    }
}

#[test]
fn code_record_seeds() {
    for (name, text) in seeds("code_record") {
        let rec = CodeRecord::from_json(&text).unwrap();
        match rec.to_code() {
            Ok(c) => assert_eq!((c.length(), c.dim()), (rec.length, rec.dim)),
            Err(_) => assert_eq!(name, "bad_dim.json"),
        }
    }
}

#[test]
fn checkpoint_line_seeds() {
    for (name, text) in seeds("checkpoint_line") {
        match CheckpointLine::parse(&text) {
            Ok(l) => assert_eq!(CheckpointLine::parse(&l.to_line()).unwrap(), l),
            Err(_) => assert_eq!(name, "tampered"),
        }
    }
}

#[test]
fn code_name_seeds() {
    for (_, name) in seeds("code_name") {
        let c = code_by_name(&name).unwrap();
        assert!(c.dim() <= c.length());
    }
}
