//! `tecode`: construct codes, report invariants, run the verification
//! suites and drive the length-48 classification.

mod input;
mod suites;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use tecode::pipeline::{classify48_checkpointed, PipelineOptions};
use tecode::Error;

use input::{emit, load_code};

#[derive(Parser)]
#[command(
    name = "tecode",
    version,
    about = "Binary divisible codes and maximal triply even codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output directory for commands that write files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for the pipeline.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Wall-clock budget; exceeding it exits with status 2.
    #[arg(long, global = true)]
    budget_seconds: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Hex)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Hex,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named code, e.g. `ttgc:10` or `tildeD:desd24:1`.
    Construct { name: String },
    /// Report invariants of a named code or a code file.
    Invariants { input: String },
    /// Run one verification suite.
    Verify {
        #[arg(value_enum)]
        suite: suites::Suite,
    },
    /// Classify maximal triply even codes of length 48.
    Classify,
    /// Shorten the length-48 classes down to length 8 and print the table.
    Shorten,
    /// Check that a code file parses and summarize it.
    Parse { file: PathBuf },
    /// Re-emit a code file in the chosen format.
    Emit { file: PathBuf },
}

/// Failure with the exit status it maps to.
pub enum Failure {
    Verification(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Lib(Error::Budget(_)) => 2,
            Failure::Lib(
                Error::Parse(_)
                | Error::Io(_)
                | Error::ValueOutOfRange { .. }
                | Error::IndexOutOfRange { .. }
                | Error::LengthMismatch { .. },
            ) => 3,
            Failure::Lib(_) => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Verification(m) => write!(f, "verification failed: {m}"),
            Failure::Lib(e) => write!(f, "{e}"),
        }
    }
}

fn options(cli: &Cli) -> Result<PipelineOptions, Failure> {
    let mut o = PipelineOptions::default().with_jobs(cli.jobs)?;
    if let Some(s) = cli.budget_seconds {
        o = o.with_budget(Duration::from_secs(s));
    }
    Ok(o)
}

fn write_file(path: PathBuf, text: &str) -> Result<(), Failure> {
    fs::write(&path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())).into())
}

fn classify(cli: &Cli) -> Result<(), Failure> {
    let out = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&out).map_err(Error::from)?;
    let opts = options(cli)?;
    let cl = classify48_checkpointed(&opts, &out.join("checkpoint.ndjson"))?;
    let report = &cl.report;
    write_file(out.join("report.json"), &(report.to_json() + "\n"))?;
    let mut lines = String::new();
    for c in &report.classes {
        lines.push_str(&serde_json::to_string(c).expect("class entries serialize"));
        lines.push('\n');
    }
    write_file(out.join("classes.ndjson"), &lines)?;
    let d = &report.duplex;
    let h = &report.hybrid;
    println!("parts levels {:?}", report.level_counts);
    println!(
        "duplex: {} maximal, {} constructed, {} excluded",
        d.maximal, d.constructed, d.excluded
    );
    println!(
        "hybrid: {} pairs, {} constructed, {} maximal",
        h.pairs, h.constructed, h.maximal
    );
    for c in &report.classes {
        println!(
            "  {:<20} dim {:>2}  A8 {:>4}",
            c.label, c.dim, c.words_of_weight_8
        );
    }
    println!(
        "{} classes; results in {}",
        report.classes.len(),
        out.display()
    );
    if !report.unidentified.is_empty() {
        return Err(Failure::Verification(format!(
            "{} maximal codes match no known class",
            report.unidentified.len()
        )));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Construct { name } => {
            let c = tecode::constructions::code_by_name(name)?;
            print!("{}", emit(&c, cli.format)?);
            Ok(())
        }
        Command::Invariants { input } => {
            let c = load_code(input)?;
            print!("{}", input::invariants(&c, cli.format));
            Ok(())
        }
        Command::Verify { suite } => suites::run(*suite, &options(cli)?),
        Command::Classify => classify(cli),
        Command::Shorten => {
            let (text, ok) = suites::table2(&options(cli)?)?;
            print!("{text}");
            if let Some(dir) = &cli.out {
                fs::create_dir_all(dir).map_err(Error::from)?;
                write_file(dir.join("table2.txt"), &text)?;
            }
            ok.then_some(()).ok_or_else(|| {
                Failure::Verification("shortening counts differ from the expected table".into())
            })
        }
        Command::Parse { file } => {
            let c = input::load_file(file)?;
            println!("length {}", c.length());
            println!("dim {}", c.dim());
            println!("rows {}", c.basis().len());
            Ok(())
        }
        Command::Emit { file } => {
            let c = input::load_file(file)?;
            print!("{}", emit(&c, cli.format)?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
