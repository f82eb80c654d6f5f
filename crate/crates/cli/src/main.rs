use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use koszul_core::analysis::IdealAnalysis;
use koszul_core::corpus::{self, CorpusReport, IdealFile, IdealReport, ViolationBundle};
use koszul_core::verify::{self, Params, Status, TheoremId, TheoremReport};

mod render;

const EXIT_FAILURE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_HYPOTHESES: u8 = 3;
const EXIT_VIOLATION: u8 = 4;

#[derive(Parser)]
#[command(name = "koszul", version, about = "Koszul homology and duality checks for homogeneous ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print invariants and homology data for one ideal file.
    Compute(ComputeArgs),
    /// Run one checker, or all of them, on one ideal file.
    Verify(VerifyArgs),
    /// Run every checker on every `.kz` file in a directory.
    CorpusRun(CorpusArgs),
}

#[derive(Args)]
struct ComputeArgs {
    file: PathBuf,
    /// Per-index Hilbert functions, Betti tables and generator degrees.
    #[arg(long)]
    homology: bool,
    /// Per-index depth, dimension, Serre level and annihilator.
    #[arg(long)]
    invariants: bool,
    /// Both of the above (the default when neither is given).
    #[arg(long)]
    all: bool,
    /// Write the full report as JSON; `-` means standard output.
    #[arg(long, value_name = "OUT")]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    file: PathBuf,
    /// A theorem id such as THM_A or SD_H_J0, or `all`.
    theorem: String,
    #[arg(long)]
    h: Option<i64>,
    #[arg(long)]
    j: Option<i64>,
    #[arg(long, value_name = "OUT")]
    json: Option<PathBuf>,
    /// Where violation bundles go.
    #[arg(long, value_name = "DIR", default_value = ".")]
    bundle_dir: PathBuf,
}

#[derive(Args)]
struct CorpusArgs {
    dir: PathBuf,
    /// Worker threads; 0 lets the pool decide.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, value_name = "OUT")]
    json: Option<PathBuf>,
    /// Write a bundle for every violation found.
    #[arg(long, value_name = "DIR")]
    bundle_dir: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Compute(args) => compute(args),
        Command::Verify(args) => verify_cmd(args),
        Command::CorpusRun(args) => corpus_run(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_for(&e))
        }
    }
}

#[derive(Debug)]
struct BadInput(String);

impl std::fmt::Display for BadInput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for BadInput {}

fn exit_for(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if let Some(err) = cause.downcast_ref::<koszul_core::Error>() {
            return if err.is_input() { EXIT_INPUT } else { EXIT_FAILURE };
        }
        if cause.is::<std::io::Error>() || cause.is::<BadInput>() {
            return EXIT_INPUT;
        }
    }
    EXIT_FAILURE
}

fn load(path: &Path) -> Result<IdealFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let stem = path.file_stem().and_then(|s| s.to_str());
    Ok(IdealFile::parse(&text, stem)?)
}

fn analyse(file: &IdealFile) -> Result<IdealAnalysis> {
    let ideal = file.ideal()?;
    Ok(IdealAnalysis::new(&file.name, &ideal)?)
}

fn write_json(out: &Path, json: &str) -> Result<()> {
    if out == Path::new("-") {
        println!("{json}");
        Ok(())
    } else {
        fs::write(out, format!("{json}\n")).with_context(|| format!("writing {}", out.display()))
    }
}

fn compute(args: ComputeArgs) -> Result<u8> {
    let file = load(&args.file)?;
    let a = analyse(&file)?;
    let report = corpus::compute_report(&a)?;
    let none = !(args.homology || args.invariants || args.all);
    let to_stdout = args.json.as_deref() == Some(Path::new("-"));
    if !to_stdout {
        print!(
            "{}",
            render::compute(&report, args.homology || args.all || none, args.invariants || args.all || none)
        );
    }
    if let Some(out) = &args.json {
        write_json(out, &serde_json::to_string_pretty(&report)?)?;
    }
    Ok(0)
}

fn verify_cmd(args: VerifyArgs) -> Result<u8> {
    let ids: Vec<TheoremId> = if args.theorem.eq_ignore_ascii_case("all") {
        TheoremId::ALL.to_vec()
    } else {
        vec![args
            .theorem
            .parse::<TheoremId>()
            .map_err(BadInput)?]
    };
    let file = load(&args.file)?;
    let a = analyse(&file)?;
    let params = Params { h: args.h, j: args.j };
    let theorems = ids
        .iter()
        .map(|&id| verify::run(&a, id, params))
        .collect::<koszul_core::Result<Vec<_>>>()?;
    let report = IdealReport {
        ideal: file.name.clone(),
        ring: a.ring().describe(),
        theorems,
        regressions: Vec::new(),
        error: None,
    };
    let to_stdout = args.json.as_deref() == Some(Path::new("-"));
    if !to_stdout {
        for t in &report.theorems {
            print!("{}", render::theorem(t));
        }
    }
    if let Some(out) = &args.json {
        write_json(out, &serde_json::to_string_pretty(&report)?)?;
    }
    for t in report.theorems.iter().filter(|t| t.status == Status::Violation) {
        let path = write_bundle(&args.bundle_dir, &file, t)?;
        eprintln!("violation bundle written to {}", path.display());
    }
    Ok(report.theorems.iter().map(|t| status_code(t.status)).max().unwrap_or(0))
}

fn status_code(s: Status) -> u8 {
    match s {
        Status::Verified => 0,
        Status::HypothesesNotMet => EXIT_HYPOTHESES,
        Status::Violation => EXIT_VIOLATION,
    }
}

fn write_bundle(dir: &Path, file: &IdealFile, t: &TheoremReport) -> Result<PathBuf> {
    let bundle = ViolationBundle::new(file, None, t);
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(bundle.file_name());
    fs::write(&path, serde_json::to_string_pretty(&bundle)?)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

fn corpus_run(args: CorpusArgs) -> Result<u8> {
    let files: Vec<IdealFile> = corpus::load_dir(&args.dir)?.into_iter().map(|(_, f)| f).collect();
    let report = run_with_jobs(&files, args.jobs)?;
    let to_stdout = args.json.as_deref() == Some(Path::new("-"));
    if !to_stdout {
        print!("{}", render::summary(&report));
    }
    if let Some(out) = &args.json {
        write_json(out, &report.to_json())?;
    }
    if let Some(dir) = &args.bundle_dir {
        for r in &report.ideals {
            let file = files.iter().find(|f| f.name == r.ideal).expect("report names come from files");
            for t in r.violations() {
                write_bundle(dir, file, t)?;
            }
        }
    }
    Ok(if report.violation_count() > 0 {
        EXIT_VIOLATION
    } else if report.is_clean() {
        0
    } else {
        EXIT_FAILURE
    })
}

#[cfg(feature = "parallel")]
fn run_with_jobs(files: &[IdealFile], jobs: usize) -> Result<CorpusReport> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    Ok(pool.install(|| corpus::run_corpus(files, Params::default())))
}

#[cfg(not(feature = "parallel"))]
fn run_with_jobs(files: &[IdealFile], _jobs: usize) -> Result<CorpusReport> {
    Ok(corpus::run_corpus(files, Params::default()))
}
