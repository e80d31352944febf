//! Newline-delimited JSON checkpoints. Each line is
//! `{"kind": ..., "payload": ..., "checksum": <sha256 of the payload>}`.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::gf2::hexio::CodeRecord;

use super::pairs::DuplexEntry;
use super::parts::{resume_parts_db, PartsDb, PartsEntry};
use super::PipelineOptions;

/// Lowercase hex SHA-256 of the compact JSON text of `payload`.
pub fn checksum(payload: &Value) -> String {
    let text = serde_json::to_string(payload).expect("values serialize");
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckpointLine {
    pub kind: String,
    pub payload: Value,
    pub checksum: String,
}

impl CheckpointLine {
    pub fn new(kind: &str, payload: Value) -> Self {
        CheckpointLine {
            kind: kind.to_string(),
            checksum: checksum(&payload),
            payload,
        }
    }

    /// Parses one line and verifies its checksum.
    pub fn parse(line: &str) -> Result<Self> {
        let rec: CheckpointLine =
            serde_json::from_str(line).map_err(|e| Error::Checkpoint(format!("bad line: {e}")))?;
        if rec.checksum != checksum(&rec.payload) {
            return Err(Error::Checkpoint(format!(
                "checksum mismatch in {:?} record",
                rec.kind
            )));
        }
        Ok(rec)
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

/// An append-only checkpoint file with its previously written records.
pub struct CheckpointStore {
    path: PathBuf,
    records: Vec<CheckpointLine>,
    file: Mutex<File>,
}

impl CheckpointStore {
    /// Opens or creates `path`. A final line without a newline is an
    /// interrupted write and is dropped; any other bad line is an error.
    pub fn open(path: &Path) -> Result<Self> {
        let mut records = Vec::new();
        let mut keep_bytes = 0u64;
        if path.exists() {
            let mut reader = BufReader::new(File::open(path)?);
            let mut buf = String::new();
            loop {
                buf.clear();
                let n = reader.read_line(&mut buf)?;
                if n == 0 {
                    break;
                }
                if !buf.ends_with('\n') {
                    break;
                }
                let line = buf.trim_end();
                if !line.is_empty() {
                    records.push(CheckpointLine::parse(line)?);
                }
                keep_bytes += n as u64;
            }
        }
        let file = OpenOptions::new()
            .create(true)
            .truncate(false)
            .write(true)
            .open(path)?;
        file.set_len(keep_bytes)?;
        let mut file = file;
        use std::io::Seek;
        file.seek(std::io::SeekFrom::End(0))?;
        Ok(CheckpointStore {
            path: path.to_path_buf(),
            records,
            file: Mutex::new(file),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Records read at open time.
    pub fn records(&self) -> &[CheckpointLine] {
        &self.records
    }

    pub fn append(&self, line: &CheckpointLine) -> Result<()> {
        let mut f = self.file.lock().expect("checkpoint writer");
        writeln!(f, "{}", line.to_line())?;
        f.flush()?;
        Ok(())
    }
}

fn parts_line(level: usize, entries: &[PartsEntry]) -> CheckpointLine {
    let codes: Vec<Value> = entries
        .iter()
        .map(|e| {
            json!({
                "prd": e.prd(),
                "code": CodeRecord::from_code_unenumerated(e.code()),
            })
        })
        .collect();
    CheckpointLine::new("parts_level", json!({ "level": level, "codes": codes }))
}

fn parse_parts_payload(
    payload: &Value,
    opts: &PipelineOptions,
) -> Result<(usize, Vec<PartsEntry>)> {
    let bad = || Error::Checkpoint("malformed parts_level payload".into());
    let level = payload["level"].as_u64().ok_or_else(bad)? as usize;
    let codes = payload["codes"].as_array().ok_or_else(bad)?;
    let mut out = Vec::with_capacity(codes.len());
    for c in codes {
        let prd = c["prd"].as_u64().ok_or_else(bad)? as usize;
        let rec: CodeRecord = serde_json::from_value(c["code"].clone()).map_err(|_| bad())?;
        out.push(PartsEntry::new(rec.to_code()?, prd, opts)?);
    }
    Ok((level, out))
}

/// Levels stored in order `0, 1, ...` are reused; the descent resumes
/// below the last one.
pub(crate) fn load_or_build_parts(
    store: &CheckpointStore,
    opts: &PipelineOptions,
) -> Result<PartsDb> {
    let mut db = PartsDb::default();
    for rec in store.records().iter().filter(|r| r.kind == "parts_level") {
        let (level, entries) = parse_parts_payload(&rec.payload, opts)?;
        if level != db.levels.len() {
            return Err(Error::Checkpoint(format!(
                "parts level {level} out of order"
            )));
        }
        db.levels.push(entries);
    }
    if db.levels.is_empty() {
        return super::build_parts_db_from(crate::constructions::all_desd24(), opts, |l, e| {
            store.append(&parts_line(l, e))
        });
    }
    resume_parts_db(&mut db, opts, |l, e| store.append(&parts_line(l, e)))?;
    Ok(db)
}

pub(crate) fn duplex_line(index: usize, r: &DuplexEntry) -> CheckpointLine {
    let codes: Vec<CodeRecord> = r
        .constructed
        .iter()
        .map(CodeRecord::from_code_unenumerated)
        .collect();
    CheckpointLine::new(
        "duplex_entry",
        json!({ "index": index, "excluded": r.excluded, "constructed": codes }),
    )
}

pub(crate) fn duplex_cache(store: &CheckpointStore) -> Result<FxHashMap<usize, DuplexEntry>> {
    let bad = || Error::Checkpoint("malformed duplex_entry payload".into());
    let mut out = FxHashMap::default();
    for rec in store.records().iter().filter(|r| r.kind == "duplex_entry") {
        let p = &rec.payload;
        let index = p["index"].as_u64().ok_or_else(bad)? as usize;
        let excluded = p["excluded"].as_bool().ok_or_else(bad)?;
        let recs: Vec<CodeRecord> =
            serde_json::from_value(p["constructed"].clone()).map_err(|_| bad())?;
        let constructed = recs
            .iter()
            .map(CodeRecord::to_code)
            .collect::<Result<Vec<_>>>()?;
        out.insert(
            index,
            DuplexEntry {
                constructed,
                excluded,
            },
        );
    }
    Ok(out)
}
