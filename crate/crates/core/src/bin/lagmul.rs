use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lagmul::cli::{self, HarnessConfig, Method, RunOptions};
use lagmul::{Error, MonomialOrder};

#[derive(Parser)]
#[command(name = "lagmul", version, about = "Milnor-number sums of constrained critical points")]
struct Args {
    /// Monomial order for all Gröbner computations.
    #[arg(long, global = true)]
    order: Option<MonomialOrder>,
    /// Repeat the computation over the rationals.
    #[arg(long, global = true)]
    field_confirm: bool,
    /// Add per-stage wall-clock timings to the report.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the hypotheses of the generating-function count.
    Check {
        /// Problem file, or `-` for stdin.
        file: PathBuf,
    },
    /// Compute the Milnor-number sum.
    Milnor {
        /// Problem file, or `-` for stdin.
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// Build and verify the Eagon-Northcott, Koszul and total complexes.
    En {
        /// Problem file, or `-` for stdin.
        file: PathBuf,
        /// Highest strand degree checked (default max(10, sum(d_i - 1) + 1)).
        #[arg(long)]
        truncate: Option<i64>,
        /// Print the complexes as text instead of the JSON report.
        #[arg(long)]
        dump: bool,
    },
    /// Randomized three-way agreement harness.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        dmax: u32,
        #[arg(long = "char")]
        characteristic: u64,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Print the augmented Jacobian and its maximal minors.
    #[command(hide = true)]
    Jacobian { file: PathBuf },
}

fn read_input(path: &PathBuf) -> Result<String, String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| e.to_string())?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::ReservedVariable(_)
        | Error::TooManyConstraints { .. }
        | Error::TooManyVariables(_)
        | Error::InvalidSystem(_)
        | Error::NotPrime(_)
        | Error::TruncationTooSmall(_) => 2,
        _ => 1,
    }
}

fn run(args: Args) -> Result<(String, i32), (String, u8)> {
    let opts = RunOptions {
        order: args.order,
        field_confirm: args.field_confirm,
        timings: args.timings,
    };
    let fail = |e: Error| (e.to_string(), error_code(&e));
    let load = |file: &PathBuf| -> Result<cli::ProblemSpec, (String, u8)> {
        let text = read_input(file).map_err(|e| (e, 2))?;
        cli::parse_problem(&text).map_err(fail)
    };
    match args.command {
        Command::Check { file } => {
            let r = cli::run_check(&load(&file)?, &opts).map_err(fail)?;
            Ok((r.to_json(), r.exit_code()))
        }
        Command::Milnor { file, method } => {
            let r = cli::run_milnor(&load(&file)?, method, &opts).map_err(fail)?;
            Ok((r.to_json(), r.exit_code()))
        }
        Command::En { file, truncate, dump } => {
            let spec = load(&file)?;
            let r = cli::run_complex_verification(&spec, truncate, &opts).map_err(fail)?;
            if dump {
                let text = cli::complex_dump(&spec, &opts).map_err(fail)?;
                Ok((text.trim_end().to_string(), r.exit_code()))
            } else {
                Ok((r.to_json(), r.exit_code()))
            }
        }
        Command::Random {
            n,
            r,
            dmax,
            characteristic,
            count,
            seed,
        } => {
            let cfg = HarnessConfig {
                n_max: n,
                r_max: r,
                d_max: dmax,
                characteristic,
                count,
                seed,
            };
            let s = cli::run_random_harness(&cfg, &opts).map_err(fail)?;
            Ok((s.to_json(), s.exit_code()))
        }
        Command::Jacobian { file } => {
            let text = cli::jacobian_dump(&load(&file)?, &opts).map_err(fail)?;
            Ok((text.trim_end().to_string(), 0))
        }
    }
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok((out, code)) => {
            // A closed pipe downstream is not an error worth reporting.
            let _ = writeln!(std::io::stdout().lock(), "{out}");
            ExitCode::from(code as u8)
        }
        Err((msg, code)) => {
            let json = serde_json::json!({ "status": "error", "error": msg });
            eprintln!("{json}");
            ExitCode::from(code)
        }
    }
}
