use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use idealkit::cli::eval::{run_script, Kernel};
use idealkit::cli::fuzz::{run_fuzz, FuzzConfig, Suite};
use idealkit::cli::repl::repl;
use idealkit::cli::verify::run_verify;
use idealkit::homology::Characteristic;

#[derive(Parser)]
#[command(name = "idealkit", version, about = "Monomial ideals: decompositions, symbolic powers, Betti numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a script file.
    Run { file: PathBuf },
    /// Run the golden checks.
    Verify {
        #[arg(long)]
        json: bool,
    },
    /// Run randomized checks.
    Fuzz {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        cases: usize,
        /// Suite names separated by commas, or `all`.
        #[arg(long, default_value = "thm38")]
        suite: String,
        /// 0 for the rationals, or a prime.
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u32,
        #[arg(long, default_value_t = 3)]
        max_vars: usize,
        #[arg(long, default_value_t = 4)]
        max_gens: usize,
        #[arg(long, default_value_t = 3)]
        max_exp: u32,
        #[arg(long, default_value_t = 3)]
        max_s: u32,
        #[arg(long)]
        json: bool,
    },
    /// Interactive session.
    Repl,
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { file } => {
            let src = match std::fs::read_to_string(&file) {
                Ok(s) => s,
                Err(e) => return usage_error(format!("{}: {e}", file.display())),
            };
            let out = run_script(&src, Kernel::default());
            for line in &out.lines {
                println!("{line}");
            }
            for f in &out.failures {
                eprintln!("{}: {f}", file.display());
            }
            if let Some(e) = &out.error {
                return usage_error(format!("{}: {e}", file.display()));
            }
            if out.failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Verify { json } => {
            let report = run_verify();
            if json {
                println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            } else {
                print!("{}", report.to_text());
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Fuzz { seed, cases, suite, characteristic, max_vars, max_gens, max_exp, max_s, json } => {
            let suites: Result<Vec<Suite>, _> = if suite == "all" {
                Ok(Suite::ALL.to_vec())
            } else {
                suite.split(',').map(|s| s.trim().parse()).collect()
            };
            let suites = match suites {
                Ok(s) => s,
                Err(e) => return usage_error(e),
            };
            let characteristic = match characteristic {
                0 => Characteristic::Zero,
                p => match Characteristic::prime(p) {
                    Ok(c) => c,
                    Err(e) => return usage_error(e),
                },
            };
            let cfg = FuzzConfig {
                seed,
                max_vars_per_side: max_vars,
                max_generators: max_gens,
                max_exponent: max_exp,
                max_s,
                cases,
                suites,
                characteristic,
            };
            let reports = match run_fuzz(&cfg) {
                Ok(r) => r,
                Err(e) => return usage_error(e),
            };
            if json {
                let text = if reports.len() == 1 {
                    serde_json::to_string_pretty(&reports[0])
                } else {
                    serde_json::to_string_pretty(&reports)
                };
                println!("{}", text.expect("serializable"));
            } else {
                for r in &reports {
                    println!("{}", r.summary());
                }
            }
            if reports.iter().all(|r| r.passed()) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Repl => {
            let stdin = std::io::stdin();
            let interactive = std::io::IsTerminal::is_terminal(&stdin);
            match repl(stdin.lock(), std::io::stdout(), interactive) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => usage_error(e),
            }
        }
    }
}
