use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use quantile_welfare::bench::{render_csv, run_bench, BenchConfig};
use quantile_welfare::generate::{generate, GenConfig};
use quantile_welfare::io::{to_json, AllocationFile, InstanceFile};
use quantile_welfare::oracle::{opt_welfare, EnumerationBudget};
use quantile_welfare::{solve, Algorithm, Error, Kind, Objective, Quantile};

/// Welfare-maximizing allocations under quantile valuations.
///
/// Exit codes: 0 success, 1 unsupported or intractable request (including an
/// exceeded oracle budget or a violated bound in `bench`), 2 malformed input.
#[derive(Parser)]
#[command(name = "qwelfare", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a solver and write an allocation file.
    Solve {
        #[command(flatten)]
        target: Target,
        /// auto, greedy, scapegoat, optimistic, matching, frac, third, tau0, tau1, setcover or identical
        #[arg(long, default_value = "auto", value_parser = parse_algorithm)]
        algorithm: Algorithm,
        #[command(flatten)]
        files: Files,
    },
    /// Exact optimum by exhaustive enumeration.
    Oracle {
        #[command(flatten)]
        target: Target,
        /// Maximum number of allocations to enumerate.
        #[arg(long, default_value_t = EnumerationBudget::default().max_allocations)]
        budget: u64,
        #[command(flatten)]
        files: Files,
    },
    /// Write a seeded random instance (PRNG: ChaCha8 from rand_chacha, seeded with --seed).
    Gen {
        #[command(flatten)]
        gen: GenArgs,
        /// Output file (standard output if absent).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare a solver with the oracle on seeded instances and print CSV.
    ///
    /// Columns: seed,algorithm,objective,balanced,alg_value,oracle_value,ratio
    /// where ratio = alg_value / oracle_value with 6 decimals (1 when both are 0).
    /// Trial i uses seed S + i. A final row reads
    /// summary,ALGORITHM,OBJECTIVE,BALANCED,min=MIN,mean=MEAN,MIN.
    Bench {
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[command(flatten)]
        gen: GenArgs,
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value = "auto", value_parser = parse_algorithm)]
        algorithm: Algorithm,
        #[arg(long, default_value_t = EnumerationBudget::default().max_allocations)]
        budget: u64,
        /// Output file (standard output if absent).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Recompute the objective of an allocation file.
    Check {
        #[command(flatten)]
        target: Target,
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        allocation: PathBuf,
    },
}

#[derive(Args)]
struct Target {
    /// usw, esw, usc or esc
    #[arg(long, value_parser = parse_objective)]
    objective: Objective,
    /// Restrict to allocations giving every agent m/n items.
    #[arg(long)]
    balanced: bool,
}

#[derive(Args)]
struct Files {
    #[arg(short, long)]
    input: PathBuf,
    /// Output file (standard output if absent).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    agents: usize,
    #[arg(long)]
    items: usize,
    /// Common quantile as p/q in lowest terms.
    #[arg(long, default_value = "0/1", value_parser = parse_quantile)]
    tau: Quantile,
    /// goods or chores
    #[arg(long, default_value = "goods", value_parser = parse_kind)]
    kind: Kind,
    #[arg(long, default_value_t = 9)]
    max_value: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Draw values from {0, 1}.
    #[arg(long)]
    binary: bool,
    /// Give every agent the first agent's row.
    #[arg(long)]
    identical: bool,
    /// Comma-separated per-agent quantiles, cycled over the agents.
    #[arg(long, value_delimiter = ',', value_parser = parse_quantile)]
    hetero_taus: Option<Vec<Quantile>>,
}

impl GenArgs {
    fn config(&self) -> GenConfig {
        GenConfig {
            agents: self.agents,
            items: self.items,
            tau: self.tau,
            kind: self.kind,
            max_value: self.max_value,
            seed: self.seed,
            binary: self.binary,
            identical: self.identical,
            hetero_taus: self.hetero_taus.clone(),
        }
    }
}

fn parse_quantile(s: &str) -> Result<Quantile, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_objective(s: &str) -> Result<Objective, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Solver(Error),
    Malformed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Solver(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::IntractableQuantile(_)
        | Error::Unsupported(_)
        | Error::BudgetExceeded { .. }
        | Error::KindMismatch { .. }
        | Error::HeterogeneousQuantiles(_)
        | Error::QuantileMismatch { .. }
        | Error::NoOptimisticAgent
        | Error::TooFewAgents { .. }
        | Error::BoundViolation { .. } => 1,
        Error::InvalidQuantile(_)
        | Error::InvalidInstance(_)
        | Error::InvalidAllocation(_)
        | Error::AgentOutOfRange { .. }
        | Error::ItemOutOfRange { .. }
        | Error::NotDivisible { .. }
        | Error::NotBinary(_)
        | Error::NotIdentical(_)
        | Error::InvalidGraph(_)
        | Error::NotBipartite => 2,
    }
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Malformed(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Solve { target, algorithm, files } => {
            let instance = InstanceFile::read(&files.input)?;
            let report = solve(&instance, target.objective, target.balanced, algorithm)?;
            eprintln!(
                "{}: {} = {}{}",
                report.algorithm,
                target.objective,
                report.welfare,
                if report.feasible { "" } else { " (infeasible)" }
            );
            emit(files.output.as_deref(), &to_json(&AllocationFile::from(&report)))
        }
        Command::Oracle { target, budget, files } => {
            let instance = InstanceFile::read(&files.input)?;
            let (welfare, allocation) =
                opt_welfare(&instance, target.objective, target.balanced, EnumerationBudget::new(budget))?;
            eprintln!("oracle: {} = {welfare}", target.objective);
            let file = AllocationFile {
                welfare: Some(welfare.get()),
                algorithm: Some("oracle".into()),
                feasible: Some(true),
                ..AllocationFile::plain(&allocation)
            };
            emit(files.output.as_deref(), &to_json(&file))
        }
        Command::Gen { gen, output } => {
            let instance = generate(&gen.config())?;
            emit(output.as_deref(), &to_json(&InstanceFile::from(&instance)))
        }
        Command::Bench {
            trials,
            gen,
            target,
            algorithm,
            budget,
            output,
        } => {
            let config = BenchConfig {
                trials,
                seed: gen.seed,
                gen: gen.config(),
                objective: target.objective,
                balanced: target.balanced,
                algorithm,
                budget: EnumerationBudget::new(budget),
            };
            let (rows, summary) = run_bench(&config)?;
            emit(output.as_deref(), &render_csv(&config, &rows, &summary))
        }
        Command::Check {
            target,
            input,
            allocation,
        } => {
            let instance = InstanceFile::read(&input)?;
            let file = AllocationFile::read(&allocation)?;
            let allocation = file.to_allocation(&instance)?;
            if target.balanced && !allocation.is_balanced(instance.agents()) {
                return Err(Failure::Malformed("allocation is not balanced".into()));
            }
            let value = target.objective.evaluate(&instance, &allocation)?;
            if let Some(recorded) = file.welfare {
                if recorded != value.get() {
                    return Err(Failure::Malformed(format!(
                        "recorded welfare {recorded} differs from recomputed {value}"
                    )));
                }
            }
            println!("{} {value}", target.objective);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Solver(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Malformed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
