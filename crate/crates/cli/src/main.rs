use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nullstrat_cli::{registry, run, Params, RunReport, Verdict};

/// Exit code for unknown scenarios and malformed parameters; 1 and 2 are
/// taken by the verdict contract.
const USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "nullstrat", version, about = "Exact certificates for nullcone strata and rationality constructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the registered scenarios.
    List {
        #[arg(long)]
        json: bool,
    },
    /// Run one scenario and print its certificates.
    Run {
        scenario: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10007)]
        prime: u64,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        /// Group shape such as `SL3` or `SL4 x SL2`.
        #[arg(long)]
        group: Option<String>,
        /// Module such as `0,4`, `0,4-dual`, `sym:4` or `1,0;1` (see README).
        #[arg(long)]
        module: Option<String>,
        /// Single degree for the ledger scenarios.
        #[arg(long)]
        degree: Option<u32>,
        /// Write the certificate JSON to this path (`-` for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn configure_threads() {
    if let Some(n) = std::env::var("NULLSTRAT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            // fails only if a pool already exists
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

/// Printing stops quietly when stdout goes away (e.g. piped into `head`).
fn print_report(report: &RunReport) {
    let mut out = std::io::stdout().lock();
    for c in &report.certificates {
        let tag = match c.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Undetermined => "UNDETERMINED",
            Verdict::Info => "INFO",
        };
        let line = if c.verdict == Verdict::Info {
            writeln!(out, "{tag:<12} {}: {}", c.claim, c.computed)
        } else {
            writeln!(out, "{tag:<12} {}: expected {}, computed {}", c.claim, c.expected, c.computed)
        };
        if line.is_err() {
            return;
        }
    }
    let s = report.summary;
    let _ = writeln!(
        out,
        "{}: {} pass, {} fail, {} undetermined, {} info (input {})",
        report.scenario,
        s.pass,
        s.fail,
        s.undetermined,
        s.info,
        &report.input_hash[..12]
    );
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return if usage { ExitCode::from(USAGE) } else { ExitCode::SUCCESS };
        }
    };
    configure_threads();
    match cli.command {
        Command::List { json } => {
            let mut out = std::io::stdout().lock();
            if json {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(registry()).expect("registry serializes"));
            } else {
                for s in registry() {
                    if writeln!(out, "{:<22} {}", s.name, s.summary).is_err() {
                        break;
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Command::Run { scenario, seed, prime, max_degree, group, module, degree, json } => {
            let params = Params { seed, prime, max_degree, group, module, degree };
            let report = match run(&scenario, &params) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(USAGE);
                }
            };
            let text = serde_json::to_string_pretty(&report).expect("reports serialize");
            match json {
                Some(path) if path.as_os_str() == "-" => {
                    let _ = writeln!(std::io::stdout().lock(), "{text}");
                }
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, text + "\n") {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(USAGE);
                    }
                    print_report(&report);
                }
                None => print_report(&report),
            }
            ExitCode::from(report.exit_code as u8)
        }
    }
}
