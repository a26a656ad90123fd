//! `cms`: solve, analyse, generate and verify conditional minisum profiles.
//!
//! Exit status: 0 success (or decision "yes"), 1 decision "no" or a failed
//! verification, 2 usage, I/O or parse error, 3 no applicable exact solver,
//! 4 internal error or solver disagreement.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cms_core::MethodChoice;

use crate::commands::Failure;

#[derive(Parser, Debug)]
#[command(name = "cms", version, about = "Exact conditional minisum winner determination")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute an optimal outcome.
    Solve(SolveArgs),
    /// Print the structural analysis and the route each component would take.
    Analyze(AnalyzeArgs),
    /// Write a generated profile document.
    Generate(GenerateArgs),
    /// Recompute the dissatisfaction of a solution document.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct SolveArgs {
    profile: PathBuf,
    #[arg(long, default_value = "auto", value_parser = parse_method)]
    method: MethodChoice,
    /// Decision threshold: exit 0 if the optimum is at most this, 1 otherwise.
    #[arg(long, value_name = "S")]
    max_dissat: Option<u64>,
    #[command(flatten)]
    limits: Limits,
    /// Run every applicable solver per component and compare the costs.
    #[arg(long)]
    cross_validate: bool,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Limits {
    #[arg(long, default_value_t = cms_core::analysis::DEFAULT_WIDTH_THRESHOLD, value_parser = positive)]
    width_threshold: usize,
    #[arg(long, default_value_t = cms_core::analysis::DEFAULT_BRUTE_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    brute_budget: u64,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    profile: PathBuf,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
    #[command(flatten)]
    limits: Limits,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReportFormat {
    Text,
    /// `key=value` lines.
    Kv,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[command(subcommand)]
    kind: GenerateKind,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum GenerateKind {
    /// Random profile.
    Random {
        #[arg(long, default_value_t = 6)]
        issues: usize,
        #[arg(long, default_value_t = 4)]
        voters: usize,
        #[arg(long, default_value_t = 2)]
        max_domain: usize,
        #[arg(long, default_value_t = 1)]
        max_in_degree: usize,
        /// Probability that a voter ballots a given issue explicitly.
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        /// Binary issues with group-dichotomous ballots only.
        #[arg(long)]
        dichotomous: bool,
    },
    /// rho x rho grid of binary issues with row and column agreement voters.
    Grid { rho: usize },
    /// Profile from a CNF formula (DIMACS). Without a file a random 3-CNF is drawn.
    Sat {
        cnf: Option<PathBuf>,
        /// Number of issues the variables are spread over.
        #[arg(long)]
        issues: usize,
        #[command(flatten)]
        random: RandomCnf,
    },
    /// Profile from a multicolored clique instance. Without a file a random graph is drawn.
    Clique {
        graph: Option<PathBuf>,
        #[command(flatten)]
        random: RandomGraph,
    },
    /// Profile from a binary CSP. Without a file a random instance is drawn.
    Csp {
        csp: Option<PathBuf>,
        #[command(flatten)]
        random: RandomCsp,
    },
}

#[derive(Args, Debug)]
struct RandomCnf {
    #[arg(long, default_value_t = 6)]
    vars: usize,
    #[arg(long, default_value_t = 24)]
    clauses: usize,
    /// Write the drawn formula here.
    #[arg(long)]
    source_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RandomGraph {
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, default_value_t = 3)]
    c: usize,
    #[arg(long, default_value_t = 0.5)]
    edge_prob: f64,
    #[arg(long)]
    source_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RandomCsp {
    #[arg(long, default_value_t = 4)]
    vars: usize,
    #[arg(long, default_value_t = 3)]
    alphabet: usize,
    #[arg(long, default_value_t = 4)]
    constraints: usize,
    #[arg(long, default_value_t = 0.5)]
    allow_prob: f64,
    #[arg(long)]
    source_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    profile: PathBuf,
    solution: PathBuf,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse() {
        Ok(0) | Err(_) => Err(format!("expected a positive integer, got {s:?}")),
        Ok(v) => Ok(v),
    }
}

fn parse_method(s: &str) -> Result<MethodChoice, String> {
    s.parse()
}

fn init_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("CMS_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::usage(format!("CMS_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::internal(format!("cannot start thread pool: {e}")))
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors by itself.
    let cli = Cli::parse();
    let result = init_threads().and_then(|()| match cli.command {
        Command::Solve(args) => commands::solve(args),
        Command::Analyze(args) => commands::analyze(args),
        Command::Generate(args) => commands::generate(args),
        Command::Verify(args) => commands::verify(args),
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("cms: {}", failure.message);
            if let Some(detail) = &failure.detail {
                eprint!("{detail}");
            }
            ExitCode::from(failure.code)
        }
    }
}
