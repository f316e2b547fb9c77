//! `dupcalc`: checks duplicators, builds duplicated algebras and reproduces
//! the verification tables.
//!
//! Exit codes: 0 when everything passes, 1 when something fails, 2 for usage
//! or input errors, 3 when a budget left something undecided.

mod commands;
mod refs;

use std::fs;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use duplicator_engine::{CheckMode, Verdict};

use commands::{Outcome, Settings};

#[derive(Parser, Debug)]
#[command(name = "dupcalc", version, about = "Duplicator calculator for finite algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// How (L), (M) and (P) are checked.
    #[arg(long, value_enum, global = true, default_value = "witness")]
    mode: ModeArg,
    /// Maximum term depth explored by search.
    #[arg(long, global = true, value_name = "N")]
    depth: Option<usize>,
    /// Resource cap: functions explored by search, homomorphisms listed,
    /// free-algebra elements, or assignments per axiom.
    #[arg(long, global = true, value_name = "N")]
    cap: Option<usize>,
    /// Wall-clock limit for each search, in milliseconds.
    #[arg(long = "budget-ms", global = true, value_name = "N")]
    budget_ms: Option<u64>,
    /// Print a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the output (or the built algebra) to FILE.
    #[arg(short = 'o', long = "output", global = true, value_name = "FILE")]
    output: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Witness,
    Search,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a duplicator and check its conditions over base algebras.
    CheckDuplicator {
        duplicator: String,
        /// Base algebras; defaults to the catalog base class.
        #[arg(long = "base", num_args = 1..)]
        bases: Vec<String>,
        /// Conditions to check (L, L', M, P, D); defaults to L, M and P.
        #[arg(long = "condition", num_args = 1..)]
        conditions: Vec<String>,
    },
    /// Build the duplicated algebra of a base algebra.
    Duplicate { duplicator: String, base: String },
    /// Build the mixed product of one algebra per coordinate.
    DuplicateMixed {
        duplicator: String,
        #[arg(required = true, num_args = 1..)]
        factors: Vec<String>,
    },
    /// Lift a homomorphism A -> B to the duplicated algebras.
    Lift {
        duplicator: String,
        a: String,
        b: String,
        /// Images of 0, 1, … separated by commas.
        #[arg(long, required = true)]
        map: String,
    },
    /// Check an algebra against an axiom suite.
    VerifyAxioms {
        algebra: String,
        /// Suite key; defaults to the catalog algebra's intended suite.
        #[arg(long)]
        suite: Option<String>,
    },
    /// List the congruences of an algebra.
    Congruences {
        algebra: String,
        /// Also compare with the congruence lattice of its duplicate.
        #[arg(long, value_name = "DUPLICATOR")]
        transfer: Option<String>,
    },
    /// Decide subdirect irreducibility.
    Si { algebra: String },
    /// Enumerate homomorphisms A -> B.
    Homs { a: String, b: String },
    /// Search for an isomorphism A -> B.
    Iso {
        a: String,
        b: String,
        /// Compare only these symbols (comma separated).
        #[arg(long)]
        on: Option<String>,
    },
    /// Build the free algebra of the variety generated by a class.
    Free {
        #[arg(required = true, num_args = 1..)]
        class: Vec<String>,
        #[arg(long, default_value_t = 1)]
        gens: usize,
    },
    /// Compute the residuum of a meet operation.
    Residuum {
        algebra: String,
        #[arg(long, default_value = "meet")]
        meet: String,
    },
    /// Check that homomorphisms into a class separate points.
    Separate {
        algebra: String,
        #[arg(long, required = true, num_args = 1..)]
        into: Vec<String>,
    },
    /// Compare homomorphisms, subuniverses and congruences across a duplicator.
    Smoke { duplicator: String, a: String, b: String },
    /// Run every row of a verification table.
    Reproduce {
        /// `table1` or `table2`.
        table: String,
        /// Run only these rows.
        #[arg(long = "row")]
        rows: Vec<String>,
        /// Record per-claim wall-clock times.
        #[arg(long)]
        timings: bool,
        /// Rows run concurrently; defaults to the available parallelism.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Browse the catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    /// List keys, optionally of one kind (algebra, duplicator, axiom-suite).
    List {
        #[arg(long)]
        kind: Option<String>,
    },
    /// Print one entry.
    Show { key: String },
}

fn run(cli: &Cli) -> Result<Outcome> {
    let settings = Settings {
        mode: match cli.mode {
            ModeArg::Witness => CheckMode::Witness,
            ModeArg::Search => CheckMode::Search,
        },
        depth: cli.depth,
        cap: cli.cap,
        budget_ms: cli.budget_ms,
    };
    match &cli.command {
        Command::CheckDuplicator { duplicator, bases, conditions } => {
            commands::check_duplicator(duplicator, bases, conditions, &settings)
        }
        Command::Duplicate { duplicator, base } => commands::duplicate_cmd(duplicator, base),
        Command::DuplicateMixed { duplicator, factors } => commands::duplicate_mixed_cmd(duplicator, factors),
        Command::Lift { duplicator, a, b, map } => {
            commands::lift(duplicator, a, b, &commands::parse_map(map)?)
        }
        Command::VerifyAxioms { algebra, suite } => {
            commands::verify_axioms(algebra, suite.as_deref(), &settings)
        }
        Command::Congruences { algebra, transfer } => commands::congruences(algebra, transfer.as_deref()),
        Command::Si { algebra } => commands::si(algebra),
        Command::Homs { a, b } => commands::homs(a, b, &settings),
        Command::Iso { a, b, on } => commands::iso(a, b, on.as_deref()),
        Command::Free { class, gens } => commands::free(class, *gens, &settings),
        Command::Residuum { algebra, meet } => commands::residuum_cmd(algebra, meet),
        Command::Separate { algebra, into } => commands::separate(algebra, into, &settings),
        Command::Smoke { duplicator, a, b } => commands::smoke(duplicator, a, b),
        Command::Reproduce { table, rows, timings, jobs } => {
            let jobs = jobs
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            commands::reproduce(table, rows, &settings, *timings, jobs)
        }
        Command::Catalog { action } => match action {
            CatalogAction::List { kind } => {
                let kind = kind.as_deref().map(commands::parse_kind).transpose()?;
                Ok(commands::catalog_list(kind))
            }
            CatalogAction::Show { key } => commands::catalog_show(key),
        },
    }
}

/// Resource exhaustion anywhere below the CLI.
fn is_resource(e: &anyhow::Error) -> bool {
    use duplicator_engine::EngineError;
    use finite_algebra::AlgebraError;
    if let Some(v) = e.downcast_ref::<verify_suite::VerifyError>() {
        return v.is_resource();
    }
    if let Some(AlgebraError::Resource { .. }) = e.downcast_ref::<AlgebraError>() {
        return true;
    }
    match e.downcast_ref::<EngineError>() {
        Some(EngineError::Resource { .. }) | Some(EngineError::Algebra(AlgebraError::Resource { .. })) => {
            return true
        }
        _ => {}
    }
    matches!(
        e.downcast_ref::<catalog::CatalogError>(),
        Some(catalog::CatalogError::Algebra(AlgebraError::Resource { .. }))
            | Some(catalog::CatalogError::Engine(EngineError::Resource { .. }))
    )
}

fn exit_code(v: Verdict) -> u8 {
    match v {
        Verdict::Pass => 0,
        Verdict::Fail => 1,
        Verdict::Unknown => 3,
    }
}

fn emit(cli: &Cli, outcome: &Outcome) -> Result<()> {
    let document = outcome.render(cli.json);
    match (&cli.output, &outcome.artifact) {
        (Some(path), Some(artifact)) => {
            fs::write(path, artifact).with_context(|| format!("cannot write `{path}`"))?;
            print!("{document}");
        }
        (Some(path), None) => {
            fs::write(path, &document).with_context(|| format!("cannot write `{path}`"))?;
        }
        (None, Some(artifact)) if !cli.json => print!("{artifact}"),
        (None, _) => print!("{document}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) if is_resource(&e) => {
            eprintln!("dupcalc: undecided: {e:#}");
            return ExitCode::from(3);
        }
        Err(e) => {
            eprintln!("dupcalc: {e:#}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&cli, &outcome) {
        eprintln!("dupcalc: {e:#}");
        return ExitCode::from(2);
    }
    ExitCode::from(exit_code(outcome.verdict))
}
