//! `actalg`: explore, analyse and verify the action algebras of finite worlds.
//!
//! Exit status is 0 on success, 1 when a verification or property check fails or the
//! element cap is hit, and 2 for bad input.

mod commands;
mod structures;

use std::path::PathBuf;
use std::process::ExitCode;

use action_algebra::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "actalg", version, about = "Action algebras of finite worlds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the gallery worlds with their published element counts.
    List(OutputArgs),
    /// Print a world's transition table (rows are states, columns are actions).
    Show {
        #[command(flatten)]
        world: WorldArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Generate the state and action Cayley tables and the class listing.
    Cayley {
        #[command(flatten)]
        world: WorldArgs,
        #[command(flatten)]
        engine: EngineArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Report totality, identity, inverses, associativity, commutativity and orders.
    Analyze {
        #[command(flatten)]
        world: WorldArgs,
        #[command(flatten)]
        engine: EngineArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check the engine (or a recorded partition) against the brute-force closure.
    Verify {
        #[command(flatten)]
        world: WorldArgs,
        #[command(flatten)]
        engine: EngineArgs,
        /// Check this partition file instead of running the engine.
        #[arg(long, value_name = "FILE")]
        classes: Option<PathBuf>,
        /// Compare transforms on every state, not only those reachable from the initial state.
        #[arg(long)]
        unrestricted_oracle: bool,
    },
    /// Check the three world conditions.
    Conditions {
        #[command(flatten)]
        world: WorldArgs,
        #[command(flatten)]
        engine: EngineArgs,
        /// Branching budget per state pair for the homogeneity search.
        #[arg(long, default_value_t = action_algebra::analysis::DEFAULT_WC3_CAP)]
        wc3_cap: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Write the algebra of a world as an action-structure file.
    Structure {
        #[command(flatten)]
        world: WorldArgs,
        #[command(flatten)]
        engine: EngineArgs,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Check that a state map is equivariant between two action structures.
    Equivariance {
        #[arg(long, value_name = "FILE")]
        domain: PathBuf,
        #[arg(long, value_name = "FILE")]
        codomain: PathBuf,
        #[arg(long, value_name = "FILE")]
        eta: PathBuf,
        /// Also require undefined actions to stay undefined.
        #[arg(long)]
        strict: bool,
    },
    /// Build the action induced on a map's codomain and write it as a structure file.
    Quotient {
        #[arg(long, value_name = "FILE")]
        domain: PathBuf,
        #[arg(long, value_name = "FILE")]
        eta: PathBuf,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Check a decomposition, and optionally componentwise equivariance into a second one.
    Disentangle {
        #[arg(long, value_name = "FILE")]
        structure: PathBuf,
        #[arg(long, value_name = "FILE")]
        decomposition: PathBuf,
        #[arg(long, value_name = "FILE", requires_all = ["codomain_decomposition", "component"])]
        codomain: Option<PathBuf>,
        #[arg(long, value_name = "FILE", requires = "codomain")]
        codomain_decomposition: Option<PathBuf>,
        /// Component map for one factor; repeat once per factor, in factor order.
        #[arg(long, value_name = "FILE", requires = "codomain")]
        component: Vec<PathBuf>,
        /// Full map to compare with the assembled components.
        #[arg(long, value_name = "FILE", requires = "codomain")]
        eta: Option<PathBuf>,
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Args, Debug)]
#[group(id = "source", required = true, multiple = false)]
struct Source {
    /// Gallery key, see `actalg list`.
    #[arg(long, value_name = "KEY")]
    world: Option<String>,
    /// World file in TOML.
    #[arg(long, value_name = "FILE")]
    file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct WorldArgs {
    #[command(flatten)]
    source: Source,
    /// Start from this state instead of the world's initial state.
    #[arg(long, value_name = "STATE")]
    initial: Option<String>,
    /// Override how disallowed moves are treated.
    #[arg(long, value_enum)]
    treatment: Option<TreatmentArg>,
}

#[derive(Args, Debug)]
struct EngineArgs {
    /// Stop with exit status 1 once the algebra has more elements than this.
    #[arg(long, default_value_t = 10_000)]
    max_elements: usize,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Output file; for `cayley --format csv` a directory receiving one file per table.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TreatmentArg {
    Identity,
    Masked,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Md,
    Dot,
    Structured,
}

/// What a command hands back to `main`: text already written, and whether checks passed.
pub enum Outcome {
    Pass,
    Fail,
}

fn run(cli: Cli) -> action_algebra::Result<Outcome> {
    match cli.command {
        Command::List(output) => commands::list(&output),
        Command::Show { world, output } => commands::show(&world, &output),
        Command::Cayley {
            world,
            engine,
            output,
        } => commands::cayley(&world, &engine, &output),
        Command::Analyze {
            world,
            engine,
            output,
        } => commands::analyze(&world, &engine, &output),
        Command::Verify {
            world,
            engine,
            classes,
            unrestricted_oracle,
        } => commands::verify(&world, &engine, classes.as_deref(), unrestricted_oracle),
        Command::Conditions {
            world,
            engine,
            wc3_cap,
            output,
        } => commands::conditions(&world, &engine, wc3_cap, &output),
        Command::Structure { world, engine, out } => {
            commands::structure(&world, &engine, out.as_deref())
        }
        Command::Equivariance {
            domain,
            codomain,
            eta,
            strict,
        } => structures::equivariance(&domain, &codomain, &eta, strict),
        Command::Quotient { domain, eta, out } => {
            structures::quotient(&domain, &eta, out.as_deref())
        }
        Command::Disentangle {
            structure,
            decomposition,
            codomain,
            codomain_decomposition,
            component,
            eta,
            strict,
        } => structures::disentangle(
            &structure,
            &decomposition,
            codomain.as_deref().zip(codomain_decomposition.as_deref()),
            &component,
            eta.as_deref(),
            strict,
        ),
    }
}

/// Cap and closure failures are results of the computation; everything else is bad input.
fn status_for(e: &Error) -> u8 {
    match e {
        Error::Capped { .. } | Error::ClosureViolation(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            if matches!(e, Error::Capped { .. }) {
                eprintln!("actalg: capped: {e}");
            } else {
                eprintln!("actalg: {e}");
            }
            ExitCode::from(status_for(&e))
        }
    }
}
