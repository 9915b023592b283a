//! `defdom`: solve, verify, reduce and audit defensive-domination instances.
//!
//! Detail goes to stderr through the logger. The last line on stdout is always
//! `verdict=<..> value=<..> certificate=<path|->`. Exit codes: 0 affirmative,
//! 1 negative, 2 usage or input error, 3 time limit.

mod commands;

use std::path::PathBuf;
use std::process::exit;
use std::sync::mpsc;
use std::thread;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "defdom", version, about = "Defensive domination toolkit")]
struct Cli {
    /// Abort with exit code 3 after this many seconds.
    #[arg(long, global = true, value_name = "SECONDS")]
    time_limit: Option<f64>,
    /// Worker threads for parallel searches.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a defense counters every attack of size at most k.
    Verify(VerifyArgs),
    /// Minimum defense by exhaustive search.
    SolveExact(SolveExactArgs),
    /// Greedy minimum multiset defense on an interval instance.
    Greedy(GreedyArgs),
    /// Build a reduction instance.
    #[command(subcommand)]
    Reduce(ReduceCommand),
    /// Check reduction certificates end to end.
    #[command(subcommand)]
    Audit(AuditCommand),
    /// Decide an exists-forall 3-CNF formula by brute force.
    E2sat(E2satArgs),
    /// Clique node deletion by brute force.
    SolveCnd(SolveCndArgs),
    /// Search for a clique of a given size.
    Clique(CliqueArgs),
    /// Write a generated instance.
    Gen(GenArgs),
}

#[derive(Args)]
pub struct VerifyArgs {
    pub graph: PathBuf,
    /// `<v> <count>` lines (a bare `<v>` counts once).
    pub defense: PathBuf,
    #[arg(short)]
    pub k: usize,
    #[arg(long, default_value = "pruned")]
    pub strategy: String,
    /// Report the defense as a multiset; repeated vertices are accepted either way.
    #[arg(long)]
    pub multiset: bool,
    /// Write the violating attack here.
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

#[derive(Args)]
pub struct SolveExactArgs {
    pub graph: PathBuf,
    #[arg(short)]
    pub k: Option<usize>,
    #[arg(long)]
    pub multiset: bool,
    /// Explicit attack list (one attack per line) instead of all k-attacks.
    #[arg(long)]
    pub attacks: Option<PathBuf>,
    #[arg(long)]
    pub lower: Option<PathBuf>,
    #[arg(long)]
    pub upper: Option<PathBuf>,
    /// Write the optimal defense here.
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

#[derive(Args)]
pub struct GreedyArgs {
    pub intervals: PathBuf,
    #[arg(short)]
    pub k: usize,
    #[arg(long)]
    pub emit_defense: Option<PathBuf>,
    /// Verify the result against every k-attack of the intersection graph.
    #[arg(long)]
    pub check: bool,
    /// Perturb shared endpoints to distinct ones when that keeps the graph.
    #[arg(long)]
    pub normalize: bool,
}

#[derive(Args)]
pub struct CndInput {
    /// Graph file; `s` and `t` come from its `c params` line unless given.
    pub graph: PathBuf,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
}

#[derive(Subcommand)]
pub enum ReduceCommand {
    /// Clique node deletion to defensive domination.
    CndToDds {
        #[command(flatten)]
        input: CndInput,
        #[arg(long, default_value = "proof-consistent")]
        ell_mode: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Exists-forall 3-CNF to clique node deletion.
    E2satToCnd {
        formula: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Allow c <= 6 (for audit cross-checks).
        #[arg(long)]
        downscaled: bool,
    },
}

#[derive(Subcommand)]
pub enum AuditCommand {
    /// Forward direction: the defense built from a deletion set counters
    /// every serious attack and has no violator.
    DdsForward {
        #[command(flatten)]
        input: CndInput,
        deletion: PathBuf,
        #[arg(long, default_value = "proof-consistent")]
        ell_mode: String,
        #[arg(long)]
        emit_defense: Option<PathBuf>,
    },
    /// Backward direction: extraction recovers the deletion set, or a valid
    /// one from a supplied defense.
    DdsRoundtrip {
        #[command(flatten)]
        input: CndInput,
        deletion: PathBuf,
        #[arg(long, default_value = "proof-consistent")]
        ell_mode: String,
        /// Extract from this defense instead of the one built from `deletion`.
        #[arg(long)]
        defense: Option<PathBuf>,
    },
    /// Formula certificates: a winning assignment leaves no K_t, a losing one
    /// yields an explicit K_t.
    CndCertificate {
        formula: PathBuf,
        /// x-assignment as a bit string, x1 first; default: the solver's.
        #[arg(long)]
        nu: Option<String>,
        #[arg(long)]
        downscaled: bool,
    },
    /// Typed clique search on a labeled construction, cross-checked against
    /// generic clique search.
    CliqueTyped {
        graph: PathBuf,
        #[arg(long)]
        t: Option<usize>,
        /// Delete these vertices first.
        #[arg(long)]
        deletion: Option<PathBuf>,
        #[arg(long)]
        no_compare: bool,
    },
}

#[derive(Args)]
pub struct E2satArgs {
    pub formula: PathBuf,
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

#[derive(Args)]
pub struct SolveCndArgs {
    #[command(flatten)]
    pub input: CndInput,
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

#[derive(Args)]
pub struct CliqueArgs {
    pub graph: PathBuf,
    #[arg(short)]
    pub t: usize,
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum GenKind {
    Complete,
    Star,
    Path,
    Cycle,
    Petersen,
    Random,
    Interval,
    Formula,
}

#[derive(Args)]
pub struct GenArgs {
    pub kind: GenKind,
    /// Vertex count (leaf count for `star`, interval count for `interval`).
    #[arg(short, long)]
    pub n: Option<usize>,
    #[arg(short, long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long)]
    pub c: Option<usize>,
    #[arg(short, long)]
    pub output: PathBuf,
}

/// Final summary of a command.
pub struct Outcome {
    pub verdict: &'static str,
    pub value: String,
    pub certificate: Option<PathBuf>,
    pub code: i32,
}

impl Outcome {
    pub fn new(verdict: &'static str, value: impl ToString, code: i32) -> Self {
        Outcome {
            verdict,
            value: value.to_string(),
            certificate: None,
            code,
        }
    }

    pub fn with_certificate(mut self, path: Option<PathBuf>) -> Self {
        self.certificate = path;
        self
    }
}

fn summary(verdict: &str, value: &str, certificate: Option<&PathBuf>) {
    let cert = certificate.map_or_else(|| "-".to_string(), |p| p.display().to_string());
    println!("verdict={verdict} value={value} certificate={cert}");
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .format_target(false)
        .init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage_error = e.use_stderr();
            let _ = e.print();
            if usage_error {
                summary("error", "-", None);
                exit(2);
            }
            exit(0);
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
        {
            log::warn!("could not size the worker pool: {e}");
        }
    }

    let (tx, rx) = mpsc::channel();
    let command = cli.command;
    let worker = thread::Builder::new()
        .stack_size(256 << 20)
        .spawn(move || {
            let _ = tx.send(commands::run(command));
        })
        .expect("spawn worker thread");

    let result = match cli.time_limit {
        Some(secs) => match rx.recv_timeout(Duration::from_secs_f64(secs.max(0.0))) {
            Ok(r) => Some(r),
            Err(mpsc::RecvTimeoutError::Timeout) => {
                log::error!("time limit of {secs} s reached");
                summary("timeout", "-", None);
                exit(3);
            }
            Err(mpsc::RecvTimeoutError::Disconnected) => None,
        },
        None => rx.recv().ok(),
    };
    let _ = worker.join();

    match result {
        Some(Ok(out)) => {
            summary(out.verdict, &out.value, out.certificate.as_ref());
            exit(out.code);
        }
        Some(Err(e)) => {
            log::error!("{e:#}");
            summary("error", "-", None);
            exit(2);
        }
        None => {
            log::error!("internal error");
            summary("error", "-", None);
            exit(2);
        }
    }
}
