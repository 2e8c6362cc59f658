//! Command-line interface: `algebra`, `silting` and `paper-examples`.

pub mod examples;
pub mod report;
pub mod spec;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use crate::homcore::{BoundOutcome, DEFAULT_CAP};
use crate::pathalg::{build_algebra, PathAlgebra};
use crate::quiverdsl::parse_algebra;
use crate::repmod::DEFAULT_ISO_SEED;

use report::{analyze, analyze_algebra, render_text, report_json, Options, ReportJson};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "silting", version, about = "Endomorphism algebras of two-term silting complexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Maximum number of syzygies computed per resolution.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Emit JSON instead of a text summary.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized isomorphism tests, in hex.
    #[arg(long, global = true, value_parser = parse_seed)]
    pub seed: Option<u64>,
    /// Record wall-clock time in reports.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimension, paths between vertices and global dimension of an algebra.
    Algebra { file: PathBuf },
    /// Silting verdict, End algebra and dimension bounds for a complex.
    Silting {
        file: PathBuf,
        complex: PathBuf,
        /// Module expression to classify against the torsion pair (repeatable).
        #[arg(long = "module")]
        modules: Vec<String>,
    },
    /// Runs the bundled examples and checks their expected values.
    PaperExamples {
        /// Example name such as `ex2`, `ex1` or `ex1:n=3`.
        filter: Option<String>,
    },
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let t = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
    u64::from_str_radix(t, 16).map_err(|e| format!("invalid hex seed `{s}`: {e}"))
}

enum Failure {
    Input(String),
    Computation(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Computation(_) => EXIT_FAILURE,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Computation(m) => m,
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_algebra(text: &str, origin: &str, cap: usize) -> Result<PathAlgebra, Failure> {
    let p = parse_algebra(text).map_err(|e| Failure::Input(format!("{origin}: {e}")))?;
    build_algebra(&p, cap).map_err(|e| Failure::Computation(format!("{origin}: {e}")))
}

fn elapsed(start: Instant, timing: bool) -> Option<u128> {
    timing.then(|| start.elapsed().as_millis())
}

struct Outcome {
    reports: Vec<ReportJson>,
    failed: bool,
}

fn run_algebra(file: &Path, opts: Options, timing: bool) -> Result<Outcome, Failure> {
    let start = Instant::now();
    let a = load_algebra(&read(file)?, &file.display().to_string(), opts.cap)?;
    let an = analyze_algebra(&a, opts);
    Ok(Outcome { reports: vec![report_json(None, &an, Vec::new(), elapsed(start, timing))], failed: false })
}

fn run_silting(file: &Path, complex: &Path, modules: &[String], opts: Options, timing: bool) -> Result<Outcome, Failure> {
    let start = Instant::now();
    let a = load_algebra(&read(file)?, &file.display().to_string(), opts.cap)?;
    let summands =
        spec::parse_complex(&read(complex)?, &a).map_err(|e| Failure::Input(format!("{}: {e}", complex.display())))?;
    let p = spec::total_complex(&summands);
    let mods = modules
        .iter()
        .map(|t| spec::parse_module(t, &a).map(|m| (t.clone(), m)).map_err(|e| Failure::Input(format!("--module {t}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let an = analyze(&a, &p, &mods, opts).map_err(|e| Failure::Computation(e.to_string()))?;
    let failed = an.silting.as_ref().is_some_and(|s| s.bounds.iter().any(|b| b.outcome == BoundOutcome::Fail));
    Ok(Outcome { reports: vec![report_json(None, &an, Vec::new(), elapsed(start, timing))], failed })
}

fn run_examples(filter: Option<&str>, opts: Options, timing: bool) -> Result<Outcome, Failure> {
    let selected = examples::select(filter);
    if selected.is_empty() {
        return Err(Failure::Input(format!("no bundled example matches `{}`", filter.unwrap_or(""))));
    }
    let results: Vec<Result<(ReportJson, bool), Failure>> = selected
        .par_iter()
        .map(|ex| {
            let start = Instant::now();
            let a = load_algebra(&ex.quiver, &ex.name, opts.cap)?;
            let an = match &ex.complex {
                None => analyze_algebra(&a, opts),
                Some(c) => {
                    let p = spec::total_complex(
                        &spec::parse_complex(c, &a).map_err(|e| Failure::Computation(format!("{}: {e}", ex.name)))?,
                    );
                    let mods = ex
                        .modules
                        .iter()
                        .map(|t| {
                            spec::parse_module(t, &a)
                                .map(|m| (t.clone(), m))
                                .map_err(|e| Failure::Computation(format!("{}: {e}", ex.name)))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    analyze(&a, &p, &mods, opts).map_err(|e| Failure::Computation(format!("{}: {e}", ex.name)))?
                }
            };
            let checks = ex.checks(&an);
            let failed = checks.iter().any(|c| !c.pass)
                || an.silting.as_ref().is_some_and(|s| s.bounds.iter().any(|b| b.outcome == BoundOutcome::Fail));
            Ok((report_json(Some(&ex.name), &an, checks, elapsed(start, timing)), failed))
        })
        .collect();
    let mut out = Outcome { reports: Vec::new(), failed: false };
    for r in results {
        let (rep, failed) = r?;
        out.failed |= failed;
        out.reports.push(rep);
    }
    Ok(out)
}

/// Runs the CLI on `args` and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    let opts = Options { cap: cli.cap, seed: cli.seed.unwrap_or(DEFAULT_ISO_SEED) };
    let (result, many) = match &cli.command {
        Command::Algebra { file } => (run_algebra(file, opts, cli.timing), false),
        Command::Silting { file, complex, modules } => (run_silting(file, complex, modules, opts, cli.timing), false),
        Command::PaperExamples { filter } => (run_examples(filter.as_deref(), opts, cli.timing), true),
    };
    match result {
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message());
            f.code()
        }
        Ok(o) => {
            let text = if cli.json {
                let v = if many { serde_json::to_string_pretty(&o.reports) } else { serde_json::to_string_pretty(&o.reports[0]) };
                v.expect("report serializes") + "\n"
            } else {
                o.reports.iter().map(render_text).collect::<Vec<_>>().join("\n")
            };
            let _ = stdout.write_all(text.as_bytes());
            if o.failed {
                let _ = writeln!(stderr, "error: a check failed");
                EXIT_FAILURE
            } else {
                EXIT_OK
            }
        }
    }
}
