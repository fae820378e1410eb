use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use chore_division::cli::{self, Algo, CheckOptions, InstanceSource, Property, EXIT_ERROR, EXIT_FALSE, EXIT_OK};
use chore_division::fairness::Beta;
use chore_division::io::parse_allocation;
use chore_division::oracles::DEFAULT_ENUMERATION_BOUND;
use chore_division::Result;

/// Fair and efficient chore division under binary supermodular costs.
#[derive(Parser)]
#[command(name = "chore-division", version)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and print the allocation as JSON.
    Solve {
        /// Instance file, builtin:<name> or random:n=<n>,m=<m>[,identical].
        instance: InstanceSource,
        /// scm | ef1po | mmspo | lorenz | efx-identical
        #[arg(long)]
        algo: Algo,
    },
    /// Check a fairness or efficiency property of an allocation.
    Check {
        instance: InstanceSource,
        /// Allocation document ({"bundles": [[...], ...]}).
        allocation: PathBuf,
        /// ef1 | efx | befkx | mms | po | lorenz-vs:<path>
        #[arg(long)]
        property: Property,
        /// Envy scaling factor for befkx, as NUM/DEN.
        #[arg(long, default_value = "1/1")]
        beta: Beta,
        /// Number of removed chores for befkx.
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Enumeration bound for po.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND)]
        bound: u128,
    },
    /// Print every agent's minimax share.
    Shares { instance: InstanceSource },
    /// Cross-check all solvers against brute force.
    Verify {
        instance: InstanceSource,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND)]
        bound: u128,
        /// Seed for random:… instances.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of consecutive seeds to verify for random:… instances.
        #[arg(long, default_value_t = 1)]
        count: u64,
    },
    /// Write a builtin or random instance file.
    Gen {
        instance: InstanceSource,
        /// Output path; stdout when omitted.
        #[arg(long, short)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn run(args: Args) -> Result<i32> {
    match args.command {
        Command::Solve { instance, algo } => {
            let inst = instance.load(0)?;
            println!("{}", cli::solve(&inst, algo)?.to_json());
            Ok(EXIT_OK)
        }
        Command::Check { instance, allocation, property, beta, k, bound } => {
            let inst = instance.load(0)?;
            let text = fs::read_to_string(&allocation)?;
            let alloc = parse_allocation(&text, &inst)?;
            let outcome = cli::check(&inst, &alloc, &property, CheckOptions { beta, k, bound })?;
            println!("{}", outcome.to_json());
            Ok(outcome.exit_code())
        }
        Command::Shares { instance } => {
            let shares = cli::shares(&instance.load(0)?)?;
            println!("{}", serde_json::to_string(&shares).expect("integers serialize"));
            Ok(EXIT_OK)
        }
        Command::Verify { instance, bound, seed, count } => {
            let seeds = match instance {
                InstanceSource::Random { .. } => seed..seed + count.max(1),
                _ => seed..seed + 1,
            };
            let mut all_passed = true;
            for s in seeds {
                let inst = instance.load(s)?;
                let report = cli::verify(&inst, bound)?;
                if matches!(instance, InstanceSource::Random { .. }) {
                    println!("seed {s}");
                }
                println!("{report}");
                all_passed &= report.passed();
            }
            Ok(if all_passed { EXIT_OK } else { EXIT_FALSE })
        }
        Command::Gen { instance, out, seed } => {
            let text = cli::generate(&instance, seed)?;
            match out {
                Some(path) => fs::write(path, text + "\n")?,
                None => println!("{text}"),
            }
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR as u8 } else { EXIT_OK as u8 });
        }
    };
    match run(args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
