use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use hyperode::fuzz::{run_fuzz, FuzzOptions};
use hyperode::ode::{Family, Ode3};
use hyperode::parse::parse_input;
use hyperode::report::{invariants_json, invariants_text, solve_json, solve_text};
use hyperode::solver::{solve, SolveOptions, SolveOutcome, VerifyMode};
use hyperode::trace::Trace;

#[derive(Parser)]
#[command(
    name = "hyperode",
    version,
    about = "Solve third-order linear ODEs by reduction to 0F2, 1F2, 2F2 and 3F2 equations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyArg {
    Exact,
    Numeric,
    Both,
}

impl From<VerifyArg> for VerifyMode {
    fn from(v: VerifyArg) -> VerifyMode {
        match v {
            VerifyArg::Exact => VerifyMode::Exact,
            VerifyArg::Numeric => VerifyMode::Numeric,
            VerifyArg::Both => VerifyMode::Both,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide equivalence and print a solution basis.
    Solve {
        #[arg(long)]
        json: bool,
        /// Include the stage-by-stage trace.
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value = "both")]
        verify: VerifyArg,
        /// Terms kept when evaluating series for numeric checks.
        #[arg(long, default_value_t = 25)]
        series_order: usize,
        /// Largest acceptable relative residual.
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
        /// Equation or JSON document; stdin when absent.
        file: Option<PathBuf>,
    },
    /// Print the invariants, absolute invariants and singularity profile.
    Invariants {
        #[arg(long)]
        json: bool,
        file: Option<PathBuf>,
    },
    /// Generate random equivalent equations and solve them back.
    Fuzz {
        #[arg(long, default_value_t = 100)]
        cases: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Restrict to one family (0F2, 1F2, 2F2, 3F2).
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        include_degenerate: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn read_ode(file: Option<&PathBuf>) -> Result<Ode3> {
    let text = match file {
        Some(p) => {
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?
        }
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .context("reading stdin")?;
            s
        }
    };
    Ok(parse_input(&text)?)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Solve {
            json,
            trace,
            verify,
            series_order,
            tolerance,
            file,
        } => {
            let ode = read_ode(file.as_ref())?;
            let opts = SolveOptions {
                verify: verify.into(),
                series_order,
                tolerance,
                ..Default::default()
            };
            let mut tr = Trace::new();
            let outcome = solve(&ode, &opts, &mut tr);
            let tr = trace.then_some(&tr);
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&solve_json(&ode, &outcome, tr))?
                );
            } else {
                print!("{}", solve_text(&ode, &outcome, tr));
            }
            Ok(match outcome {
                SolveOutcome::Solved(_) => 0,
                SolveOutcome::NotEquivalent { .. } => 2,
                SolveOutcome::Unsupported { .. } => 3,
            })
        }
        Command::Invariants { json, file } => {
            let ode = read_ode(file.as_ref())?;
            if json {
                println!("{}", serde_json::to_string_pretty(&invariants_json(&ode))?);
            } else {
                print!("{}", invariants_text(&ode));
            }
            Ok(0)
        }
        Command::Fuzz {
            cases,
            seed,
            family,
            include_degenerate,
            json,
            jobs,
        } => {
            let family = match family {
                Some(f) => match Family::parse(&f) {
                    Some(f) => Some(f),
                    None => bail!("unknown family `{f}` (expected 0F2, 1F2, 2F2 or 3F2)"),
                },
                None => None,
            };
            let opts = FuzzOptions {
                family,
                include_degenerate,
                ..Default::default()
            };
            let results = run_fuzz(cases, seed, &opts, &SolveOptions::default(), jobs);
            let failed = results
                .iter()
                .filter(|r| r.outcome != "solved" || !r.exact_ok)
                .count();
            if json {
                println!("{}", serde_json::to_string_pretty(&results)?);
            } else {
                for r in &results {
                    println!(
                        "case {:>4} seed {:>6} {} {}{}",
                        r.index,
                        r.case.rng_seed,
                        r.case.family,
                        r.outcome,
                        r.detail
                            .as_deref()
                            .map(|d| format!(" ({d})"))
                            .unwrap_or_default()
                    );
                }
                println!("{} of {} solved", results.len() - failed, results.len());
            }
            Ok(if failed == 0 { 0 } else { 2 })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
