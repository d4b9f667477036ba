//! Command-line interface: argument parsing, dispatch, output rendering and
//! the optional series cache.
//!
//! Every command builds its entire output in memory (an [`Outcome`]) before
//! anything is printed, which keeps the interface fully testable in-process;
//! [`main_entry`] is the only function that touches stdout/stderr.
//!
//! Exit codes: 0 success, 1 internal inconsistency, 2 bad usage or invalid
//! parameters, 3 a resource cap (or the cache lock) refused the job, 4 a
//! `check` run found disagreeing values.

mod cache;
mod render;

pub use cache::{CacheFile, CacheLock, SCHEMA_VERSION};
pub use render::{
    CheckJson, CheckReport, CheckRow, CheckRowJson, DimJson, Format, OrbitJson, OrbitTermJson,
    SeriesJson,
};

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::counting::Backend;
use crate::error::{Error, Result};
use crate::poincare;
use crate::weyl;
use crate::Limits;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

/// Dimensions and Poincare series of algebras of invariants of n-ary forms.
#[derive(Debug, Parser)]
#[command(name = "invariant-series", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "plain")]
    pub format: Format,

    /// Series cache file (versioned JSON); also read from the environment.
    #[arg(long, global = true, env = "INVARIANT_SERIES_CACHE")]
    pub cache: Option<PathBuf>,

    /// Largest allowed number of variables n.
    #[arg(long, global = true, default_value_t = Limits::default().max_rank)]
    pub max_rank: usize,

    /// Cap on coefficient-table cells for the fast counting method.
    #[arg(long, global = true, default_value_t = Limits::default().max_dp_cells)]
    pub max_dp_cells: u64,

    /// Cap on search nodes for the brute-force counting method.
    #[arg(long, global = true, default_value_t = Limits::default().max_bruteforce_nodes)]
    pub max_brute_nodes: u64,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Dimension of the space of degree-k invariants of n-ary d-forms.
    Dim {
        /// Number of variables (at least 2).
        #[arg(long)]
        n: usize,
        /// Degree of the forms (at least 1).
        #[arg(long)]
        d: u32,
        /// Degree of the invariants.
        #[arg(long)]
        k: u32,
    },
    /// All dimensions for k = 0..=K, as a truncated Poincare series.
    Series {
        /// Number of variables (at least 2).
        #[arg(long)]
        n: usize,
        /// Degree of the forms (at least 1).
        #[arg(long)]
        d: u32,
        /// Truncation degree.
        #[arg(long = "K")]
        max_degree: u32,
    },
    /// The aggregated signed orbit terms used by every dimension at rank n.
    Orbit {
        /// Number of variables (at least 2).
        #[arg(long)]
        n: usize,
    },
    /// Recompute k = 0..=K with every available method and compare.
    Check {
        /// Number of variables (at least 2).
        #[arg(long)]
        n: usize,
        /// Degree of the forms (at least 1).
        #[arg(long)]
        d: u32,
        /// Largest degree to compare.
        #[arg(long = "K")]
        max_degree: u32,
        /// Perturb the fast method at this degree (self-test of `check`).
        #[arg(long, hide = true)]
        inject_fault: Option<u32>,
    },
}

/// A fully resolved job: what to run, how to render it, and the caps that
/// bound it. Parameter validation happens before any computation starts.
#[derive(Debug, Clone)]
pub struct JobSpec {
    pub command: Command,
    pub format: Format,
    pub cache: Option<PathBuf>,
    pub limits: Limits,
}

impl Cli {
    pub fn into_job(self) -> JobSpec {
        JobSpec {
            command: self.command,
            format: self.format,
            cache: self.cache,
            limits: Limits {
                max_rank: self.max_rank,
                max_dp_cells: self.max_dp_cells,
                max_bruteforce_nodes: self.max_brute_nodes,
            },
        }
    }
}

/// Everything a finished command wants to tell the caller.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn success(stdout: String, notes: Vec<String>) -> Outcome {
        Outcome {
            stdout,
            stderr: join_notes(notes),
            code: EXIT_OK,
        }
    }

    fn failure(err: &Error, notes: Vec<String>) -> Outcome {
        let mut stderr = join_notes(notes);
        stderr.push_str(&format!("error: {err}\n"));
        Outcome {
            stdout: String::new(),
            stderr,
            code: exit_code_for(err),
        }
    }

    fn busy(message: String) -> Outcome {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
            code: EXIT_RESOURCE,
        }
    }
}

fn join_notes(notes: Vec<String>) -> String {
    notes
        .into_iter()
        .map(|n| format!("note: {n}\n"))
        .collect()
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::InvalidRank(_) | Error::InvalidParameter(_) => EXIT_USAGE,
        Error::ResourceLimit { .. } => EXIT_RESOURCE,
        Error::NegativeDimension { .. } => EXIT_FAILURE,
    }
}

fn validate(n: usize, d: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidRank(n));
    }
    if d < 1 {
        return Err(Error::InvalidParameter(format!(
            "form degree d must be at least 1, got {d}"
        )));
    }
    Ok(())
}

/// Run one job to completion without printing anything.
pub fn run(job: JobSpec) -> Outcome {
    match job.command.clone() {
        Command::Dim { n, d, k } => run_dim(&job, n, d, k),
        Command::Series { n, d, max_degree } => run_series(&job, n, d, max_degree),
        Command::Orbit { n } => run_orbit(&job, n),
        Command::Check {
            n,
            d,
            max_degree,
            inject_fault,
        } => run_check(&job, n, d, max_degree, inject_fault),
    }
}

fn run_dim(job: &JobSpec, n: usize, d: u32, k: u32) -> Outcome {
    if let Err(e) = validate(n, d) {
        return Outcome::failure(&e, Vec::new());
    }
    let mut notes = Vec::new();
    if let Some(path) = &job.cache {
        let _lock = match CacheLock::acquire(path) {
            Ok(lock) => lock,
            Err(message) => return Outcome::busy(message),
        };
        let file = CacheFile::load(path);
        if let Some(note) = file.note() {
            notes.push(note.to_string());
        }
        if let Some(value) = file.coefficient(n, d, k) {
            return Outcome::success(render::render_dim(job.format, n, d, k, &value), notes);
        }
        // a lone coefficient is not a series prefix, so a miss computes
        // without writing back
    }
    match poincare::nu_with(n, d, k, Backend::Dp, &job.limits) {
        Ok(value) => Outcome::success(render::render_dim(job.format, n, d, k, &value), notes),
        Err(e) => Outcome::failure(&e, notes),
    }
}

fn run_series(job: &JobSpec, n: usize, d: u32, max_degree: u32) -> Outcome {
    if let Err(e) = validate(n, d) {
        return Outcome::failure(&e, Vec::new());
    }
    let Some(path) = &job.cache else {
        return match poincare::series_truncated_with(n, d, max_degree, Backend::Dp, &job.limits)
        {
            Ok(series) => Outcome::success(
                render::render_series(job.format, n, d, series.coefficients()),
                Vec::new(),
            ),
            Err(e) => Outcome::failure(&e, Vec::new()),
        };
    };

    let _lock = match CacheLock::acquire(path) {
        Ok(lock) => lock,
        Err(message) => return Outcome::busy(message),
    };
    let mut notes = Vec::new();
    let mut file = CacheFile::load(path);
    if let Some(note) = file.note() {
        notes.push(note.to_string());
    }
    if let Some(coefficients) = file.series_prefix(n, d, max_degree) {
        return Outcome::success(
            render::render_series(job.format, n, d, &coefficients),
            notes,
        );
    }
    match poincare::series_truncated_with(n, d, max_degree, Backend::Dp, &job.limits) {
        Ok(series) => {
            file.store_series(n, d, series.coefficients());
            if let Err(e) = file.save(path) {
                notes.push(format!(
                    "cache {} could not be written ({e}); result not cached",
                    path.display()
                ));
            }
            Outcome::success(
                render::render_series(job.format, n, d, series.coefficients()),
                notes,
            )
        }
        Err(e) => Outcome::failure(&e, notes),
    }
}

fn run_orbit(job: &JobSpec, n: usize) -> Outcome {
    if n < 2 {
        return Outcome::failure(&Error::InvalidRank(n), Vec::new());
    }
    match weyl::aggregate_orbit(n, &job.limits) {
        Ok(terms) => Outcome::success(render::render_orbit(job.format, n, &terms), Vec::new()),
        Err(e) => Outcome::failure(&e, Vec::new()),
    }
}

fn run_check(
    job: &JobSpec,
    n: usize,
    d: u32,
    max_degree: u32,
    inject_fault: Option<u32>,
) -> Outcome {
    if let Err(e) = validate(n, d) {
        return Outcome::failure(&e, Vec::new());
    }
    let mut rows = Vec::with_capacity(max_degree as usize + 1);
    for k in 0..=max_degree {
        let mut dp = match poincare::nu_with(n, d, k, Backend::Dp, &job.limits) {
            Ok(v) => v,
            Err(e) => return Outcome::failure(&e, Vec::new()),
        };
        let bruteforce = match poincare::nu_with(n, d, k, Backend::BruteForce, &job.limits) {
            Ok(v) => v,
            Err(e) => return Outcome::failure(&e, Vec::new()),
        };
        if inject_fault == Some(k) {
            dp += 1u32;
        }
        let sylvester = (n == 2).then(|| poincare::sylvester_cayley_binary(d, k));
        let pass = dp == bruteforce && sylvester.as_ref().is_none_or(|s| *s == dp);
        rows.push(CheckRow {
            k,
            dp,
            bruteforce,
            sylvester,
            pass,
        });
    }
    let pass = rows.iter().all(|r| r.pass);
    let report = CheckReport {
        n,
        d,
        max_degree,
        rows,
        pass,
    };
    Outcome {
        stdout: render::render_check(job.format, &report),
        stderr: String::new(),
        code: if pass { EXIT_OK } else { EXIT_MISMATCH },
    }
}

/// Parse arguments from the process environment, run, print, and return the
/// exit code for `std::process::exit`.
pub fn main_entry() -> i32 {
    use std::io::Write;
    let cli = Cli::parse();
    let outcome = run(cli.into_job());
    // a consumer that closed the pipe early is not our error
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    outcome.code
}
