//! The length-48 classification: the database of doubly even length-24
//! codes containing their triply even radical, the pair constructions
//! over it, identification of the maximal codes, and the shortening chain
//! down to length 8.

mod checkpoint;
mod pairs;
mod parts;
mod shorten;

pub use checkpoint::{checksum, CheckpointLine, CheckpointStore};
pub use pairs::{
    duplex_classify, duplex_classify_with, duplex_entry, g0_generators, hybrid_classify,
    hybrid_pair, isometric_pairs, DuplexCounts, DuplexEntry, DuplexOutcome, HybridCounts,
    HybridOutcome,
};
pub use parts::{
    build_parts_db, build_parts_db_from, resume_parts_db, subcode_step, PartsDb, PartsEntry,
    PartsTable,
};
pub use shorten::{
    component_count, coordinate_orbit_reps, dim_counts, doubly_even_chain, shorten_chain,
    shorten_step, ChainLevel,
};

use std::path::Path;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::constructions::{
    all_desd24, generalized_doubling, padded_triangular_code, DESD24_NAMES,
};
use crate::error::{Error, Result};
use crate::gf2::hexio::CodeRecord;
use crate::gf2::LinearCode;
use crate::symmetry::{canonical_form_with, CanonOptions, CanonicalForm};

/// Search limits, deadline and worker pool for the pipeline.
#[derive(Clone, Debug)]
pub struct PipelineOptions {
    pub canon: CanonOptions,
    /// Node budget for one set stabilizer or set isomorphism search.
    pub set_search_budget: usize,
    /// Largest coset space enumerated for one double coset computation.
    pub coset_limit: usize,
    pub deadline: Option<Instant>,
    pool: Option<Arc<rayon::ThreadPool>>,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            canon: CanonOptions::default(),
            set_search_budget: 50_000_000,
            coset_limit: 1_000_000,
            deadline: None,
            pool: None,
        }
    }
}

impl PipelineOptions {
    /// Runs parallel sections on a pool of `jobs` workers.
    pub fn with_jobs(mut self, jobs: usize) -> Result<Self> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| Error::Precondition(format!("cannot start workers: {e}")))?;
        self.pool = Some(Arc::new(pool));
        Ok(self)
    }

    pub fn with_budget(mut self, budget: Duration) -> Self {
        self.deadline = Some(Instant::now() + budget);
        self
    }

    pub(crate) fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match &self.pool {
            Some(p) => p.install(f),
            None => f(),
        }
    }

    pub fn check_deadline(&self, stage: &str) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::Budget(format!(
                "time budget exhausted during {stage}"
            ))),
            _ => Ok(()),
        }
    }
}

/// The ten maximal triply even codes of length 48: the generalized
/// doublings of the nine self-dual codes of length 24 and the padded
/// triangular graph code of `T(10)`.
pub fn representatives() -> Vec<(String, LinearCode)> {
    let mut out: Vec<(String, LinearCode)> = all_desd24()
        .iter()
        .zip(DESD24_NAMES)
        .map(|(c, name)| {
            (
                format!("tildeD({name})"),
                generalized_doubling(c).expect("self-dual codes are doubly even"),
            )
        })
        .collect();
    out.push((
        "ttgc(10)".into(),
        padded_triangular_code(10).expect("valid parameter"),
    ));
    out
}

/// Matches codes against a fixed list of labeled classes.
pub struct Identifier {
    labels: Vec<String>,
    codes: Vec<LinearCode>,
    forms: Vec<CanonicalForm>,
    index: FxHashMap<Vec<u64>, usize>,
    canon: CanonOptions,
}

impl Identifier {
    pub fn new(classes: Vec<(String, LinearCode)>, canon: &CanonOptions) -> Result<Self> {
        let mut id = Identifier {
            labels: Vec::new(),
            codes: Vec::new(),
            forms: Vec::new(),
            index: FxHashMap::default(),
            canon: canon.clone(),
        };
        for (label, code) in classes {
            let f = canonical_form_with(&code, canon)?;
            if id.index.insert(f.key(), id.labels.len()).is_some() {
                return Err(Error::Precondition(format!(
                    "{label} repeats an earlier class"
                )));
            }
            id.labels.push(label);
            id.codes.push(code);
            id.forms.push(f);
        }
        Ok(id)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn code(&self, i: usize) -> &LinearCode {
        &self.codes[i]
    }

    /// Index of the class of `c`, after checking the witness permutation.
    pub fn identify(&self, c: &LinearCode) -> Result<Option<usize>> {
        let f = canonical_form_with(c, &self.canon)?;
        let Some(&i) = self.index.get(&f.key()) else {
            return Ok(None);
        };
        let pi = self.forms[i].relabeling.inverse().compose(&f.relabeling);
        if c.permute(pi.images()) != self.codes[i] {
            return Err(Error::Precondition("identification witness failed".into()));
        }
        Ok(Some(i))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub label: String,
    pub dim: usize,
    pub words_of_weight_8: u64,
    /// Maximal codes from the doubled construction in this class.
    pub duplex_hits: usize,
    /// Maximal codes from distinct pairs in this class.
    pub hybrid_hits: usize,
    pub code: CodeRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub level_counts: Vec<usize>,
    /// Rows dim 12 to 5, columns radical dim 1 to 6.
    pub parts_table: Vec<Vec<usize>>,
    pub duplex: DuplexCounts,
    pub hybrid: HybridCounts,
    /// Classes met by at least one maximal code, in the order of [`representatives`].
    pub classes: Vec<ClassEntry>,
    pub unidentified: Vec<CodeRecord>,
    pub notes: Vec<String>,
}

impl ClassificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Sorted dimensions of the classes found.
    pub fn class_dims(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.classes.iter().map(|c| c.dim).collect();
        v.sort_unstable();
        v
    }
}

/// Everything computed by [`classify48`], for callers that need more than
/// the report.
pub struct Classification {
    pub report: ClassificationReport,
    pub db: PartsDb,
    pub duplex: DuplexOutcome,
    pub hybrid: HybridOutcome,
}

fn assemble(
    db: PartsDb,
    duplex: DuplexOutcome,
    hybrid: HybridOutcome,
    opts: &PipelineOptions,
) -> Result<Classification> {
    let id = Identifier::new(representatives(), &opts.canon)?;
    let mut hits = vec![(0usize, 0usize); id.labels().len()];
    let mut unidentified = Vec::new();
    for (codes, duplex_side) in [(&duplex.maximal, true), (&hybrid.maximal, false)] {
        for c in codes.iter() {
            match id.identify(c)? {
                Some(i) if duplex_side => hits[i].0 += 1,
                Some(i) => hits[i].1 += 1,
                None => unidentified.push(CodeRecord::from_code_unenumerated(c)),
            }
        }
    }
    let mut classes = Vec::new();
    for (i, &(d, h)) in hits.iter().enumerate() {
        if d + h == 0 {
            continue;
        }
        let code = id.code(i);
        let we = code.weight_enumerator()?;
        classes.push(ClassEntry {
            label: id.labels()[i].clone(),
            dim: code.dim(),
            words_of_weight_8: we.count(8),
            duplex_hits: d,
            hybrid_hits: h,
            code: CodeRecord::from_code(code)?,
        });
    }
    let report = ClassificationReport {
        level_counts: db.level_counts(),
        parts_table: db.table().iter().map(|r| r.to_vec()).collect(),
        duplex: duplex.counts.clone(),
        hybrid: hybrid.counts.clone(),
        classes,
        unidentified,
        notes: vec![format!(
            "duplex: {} possibly maximal codes constructed; a count of 216 is sometimes quoted and does not arise here",
            duplex.counts.constructed
        )],
    };
    Ok(Classification {
        report,
        db,
        duplex,
        hybrid,
    })
}

/// Builds the database, runs both pair constructions and identifies every
/// maximal code.
pub fn classify48(opts: &PipelineOptions) -> Result<Classification> {
    let db = build_parts_db(opts)?;
    let duplex = duplex_classify(&db, opts)?;
    let hybrid = hybrid_classify(&db, opts)?;
    assemble(db, duplex, hybrid, opts)
}

/// [`classify48`] with a checkpoint file: finished levels and duplex
/// entries are read back and skipped, new ones appended.
pub fn classify48_checkpointed(opts: &PipelineOptions, path: &Path) -> Result<Classification> {
    let store = CheckpointStore::open(path)?;
    let db = checkpoint::load_or_build_parts(&store, opts)?;
    let done = checkpoint::duplex_cache(&store)?;
    let duplex = duplex_classify_with(&db, opts, &|i| done.get(&i).cloned(), &|i, r| {
        store.append(&checkpoint::duplex_line(i, r))
    })?;
    let hybrid = hybrid_classify(&db, opts)?;
    assemble(db, duplex, hybrid, opts)
}
