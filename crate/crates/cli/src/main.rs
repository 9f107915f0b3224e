use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;
use touriso::autgroup::AutGroupError;
use touriso::oracles::{ExecOracle, OracleError, OracleStack};
use touriso::sampling::SamplerConfig;
use touriso::suborbits::{EpsilonPolicy, SuborbitConfig, SuborbitError};
use touriso::TournamentError;

mod commands;
mod instance;
mod stats;

use instance::Family;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    BadParameter(String),
    #[error("cannot read {0}: {1}")]
    Input(String, std::io::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Tournament(#[from] TournamentError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Suborbit(#[from] SuborbitError),
    #[error(transparent)]
    AutGroup(#[from] AutGroupError),
    #[error("{0}")]
    Sampling(String),
    #[error("emitted result failed verification: {0}")]
    Unverified(String),
}

#[derive(Debug, Parser)]
#[command(name = "touriso", version, about = "Tournament isomorphism from an asymmetry oracle")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Seed of the run's random stream.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Error parameter handed to each sampler call.
    #[arg(long, global = true, default_value_t = 0.05)]
    pub epsilon: f64,
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Desk)]
    pub mode: ModeArg,
    /// How the per-call error parameter depends on the instance size.
    #[arg(long, global = true, value_enum, default_value_t = PolicyArg::Fixed)]
    pub epsilon_policy: PolicyArg,
    /// Exponent for the `size` and `budget` policies.
    #[arg(long, global = true, default_value_t = 3)]
    pub exponent: u32,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// `internal`, or `exec:<command>` for an external asymmetry oracle.
    #[arg(long, global = true, default_value = "internal")]
    pub oracle: String,
    #[arg(long, global = true, default_value_t = 60_000)]
    pub oracle_timeout_ms: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Desk,
    Faithful,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    /// `--epsilon` for every call.
    Fixed,
    /// `n^-exponent`.
    Size,
    /// `--epsilon / n^exponent`.
    Budget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Reduction,
    Brute,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Reduction => "reduction",
            Method::Brute => "brute",
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a tournament from a named family.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        /// Prime order of a Paley tournament.
        #[arg(long)]
        q: Option<usize>,
        /// Connection set of a circulant, e.g. 1,2,4.
        #[arg(long, value_delimiter = ',')]
        residues: Option<Vec<usize>>,
        /// Factors of a lexicographic product: c3, transitive:N, paley:Q,
        /// circulant:N, random:N or a file.
        #[arg(long)]
        inner: Option<String>,
        #[arg(long)]
        outer: Option<String>,
        /// Output file; standard output if omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generators and order of the automorphism group.
    Aut {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Reduction)]
        method: Method,
        /// Reuse results for repeated subproblems.
        #[arg(long)]
        memoize: bool,
        /// Check that every group entering an intersection is solvable.
        #[arg(long)]
        check_solvable: bool,
    },
    /// Decide isomorphism and print a verified witness.
    Iso {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Reduction)]
        method: Method,
    },
    /// Invariant suborbits with certificates.
    Suborbits {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Reduction)]
        method: Method,
    },
    /// Characteristic subset of an explicit distribution.
    Sample {
        /// Probabilities of the elements 0, 1, …, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        probs: Vec<f64>,
    },
    /// Sweep sizes of a family and print CSV.
    Bench {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',', value_enum, default_values_t = [Method::Reduction, Method::Brute])]
        methods: Vec<Method>,
        /// Runs per size and method; run r uses seed `--seed + r`.
        #[arg(long, default_value_t = 1)]
        runs: u64,
        /// Inner factor for the lexprod family.
        #[arg(long)]
        inner: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Answer asymmetry queries on stdin with the brute-force oracle.
    #[command(hide = true)]
    OracleServe,
}

impl Common {
    pub fn sampler(&self) -> SamplerConfig {
        match self.mode {
            ModeArg::Desk => SamplerConfig::desk(self.epsilon),
            ModeArg::Faithful => SamplerConfig::faithful(self.epsilon),
        }
    }

    pub fn suborbit_config(&self) -> SuborbitConfig {
        let epsilon = match self.epsilon_policy {
            PolicyArg::Fixed => EpsilonPolicy::Fixed { epsilon: self.epsilon },
            PolicyArg::Size => EpsilonPolicy::PowerOfSize { c: self.exponent },
            PolicyArg::Budget => EpsilonPolicy::RunBudget {
                budget: self.epsilon,
                exponent: self.exponent,
            },
        };
        SuborbitConfig {
            epsilon,
            sampler: self.sampler(),
            ..SuborbitConfig::default()
        }
    }

    pub fn oracle_stack(&self) -> Result<OracleStack, CliError> {
        if self.oracle == "internal" {
            return Ok(OracleStack::brute_force());
        }
        match self.oracle.strip_prefix("exec:") {
            Some(cmd) => {
                let oracle = ExecOracle::spawn(cmd, Duration::from_millis(self.oracle_timeout_ms))?;
                Ok(OracleStack::new(Box::new(oracle)))
            }
            None => Err(CliError::BadParameter(format!(
                "--oracle must be 'internal' or 'exec:<command>', got '{}'",
                self.oracle
            ))),
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        self.sampler().validate().map_err(CliError::BadParameter)
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let common = &cli.common;
    common.validate()?;
    match cli.command {
        Command::Gen {
            family,
            n,
            q,
            residues,
            inner,
            outer,
            output,
        } => {
            let params = instance::FamilyParams {
                n,
                q,
                residues,
                inner,
                outer,
            };
            commands::gen(common, family, &params, output.as_deref())
        }
        Command::Aut {
            input,
            method,
            memoize,
            check_solvable,
        } => commands::aut(common, &input, method, memoize, check_solvable),
        Command::Iso { first, second, method } => commands::iso(common, &first, &second, method),
        Command::Suborbits { input, method } => commands::suborbits(common, &input, method),
        Command::Sample { probs } => commands::sample(common, probs),
        Command::Bench {
            family,
            sizes,
            methods,
            runs,
            inner,
            output,
        } => commands::bench(common, family, &sizes, &methods, runs, inner.as_deref(), output.as_deref()),
        Command::OracleServe => {
            let stdin = std::io::stdin();
            touriso::oracles::serve(stdin.lock(), std::io::stdout())?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
