use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use symroots::numverify::DEFAULT_SEED;
use symroots_cli::problems;
use symroots_cli::{exit_code, report_code, solve, verify_saved, SolveOptions};

#[derive(Parser)]
#[command(name = "symroots", version, about = "Closed-form roots of symmetric and iterate equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(clap::Args, Clone)]
struct Common {
    /// Unknowns, comma separated (default: x, then y)
    #[arg(long, value_delimiter = ',')]
    unknowns: Option<Vec<String>>,
    /// Parameter binding `name=value`; repeatable
    #[arg(long = "param", value_parser = parse_binding)]
    params: Vec<(String, String)>,
    /// Significant digits for numeric values (15 to 40)
    #[arg(long, default_value_t = 15)]
    precision: u32,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    samples: usize,
    /// Relative residual tolerance
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one equation in x or a system in x, y
    Solve {
        input: String,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Read the equation as f(f(x)) = x, given as `f=<expr>`
        #[arg(long)]
        as_iterate: Option<String>,
        #[arg(long)]
        no_verify: bool,
    },
    /// Run the built-in benchmark problems
    Testproblems {
        /// Problem numbers, comma separated (default: all)
        #[arg(long, value_delimiter = ',')]
        which: Vec<u8>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        no_verify: bool,
    },
    /// Check roots: solve and verify an input, or re-check a saved machine report
    Verify {
        input: Option<String>,
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_binding(s: &str) -> Result<(String, String), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected name=value, got `{s}`"))?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn options(c: &Common, verify: bool, as_iterate: Option<String>) -> SolveOptions {
    SolveOptions {
        unknowns: c.unknowns.clone(),
        params: c.params.clone(),
        precision: c.precision,
        as_iterate,
        verify,
        samples: c.samples,
        tol: c.tol,
        seed: c.seed,
    }
}

fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Solve { input, common, format, as_iterate, no_verify } => {
            let f = match as_iterate.as_deref().map(|s| s.split_once('=')) {
                None => None,
                Some(Some((_, body))) => Some(body.trim().to_string()),
                Some(None) => {
                    eprintln!("error: --as-iterate expects f=<expr>");
                    return 1;
                }
            };
            match solve(&input, &options(&common, !no_verify, f)) {
                Ok(r) => {
                    match format {
                        Format::Text => emit(&r.to_text()),
                        Format::Machine => emit(&format!("{}\n", serde_json::to_string_pretty(&r.to_json()).unwrap())),
                    }
                    report_code(&r)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    exit_code(&e)
                }
            }
        }
        Command::Testproblems { which, format, no_verify } => {
            let base = SolveOptions { verify: !no_verify, ..SolveOptions::default() };
            let rows = problems::run(&which, &base);
            match format {
                Format::Text => emit(&problems::table(&rows)),
                Format::Machine => emit(&format!("{}\n", serde_json::to_string_pretty(&problems::to_json(&rows)).unwrap())),
            }
            if rows.iter().any(|r| r.verified() == Some(false) || r.outcome.is_err()) {
                1
            } else {
                0
            }
        }
        Command::Verify { input, report, common } => {
            let opts = options(&common, true, None);
            match (input, report) {
                (Some(text), None) => match solve(&text, &opts) {
                    Ok(r) => {
                        let v = r.verification.as_ref().expect("verification requested");
                        emit(&format!(
                            "verification {}: {} samples, max relative residual {:.3e}\n",
                            if v.passed { "passed" } else { "FAILED" },
                            v.samples,
                            v.max_residual
                        ));
                        for d in &v.details {
                            emit(&format!("  {d}\n"));
                        }
                        report_code(&r)
                    }
                    Err(e) => {
                        eprintln!("error: {e}");
                        exit_code(&e)
                    }
                },
                (None, Some(path)) => {
                    let doc = match std::fs::read_to_string(&path)
                        .map_err(|e| e.to_string())
                        .and_then(|s| serde_json::from_str(&s).map_err(|e| e.to_string()))
                    {
                        Ok(d) => d,
                        Err(e) => {
                            eprintln!("error: cannot read {}: {e}", path.display());
                            return 1;
                        }
                    };
                    match verify_saved(&doc, &opts.verify_options()) {
                        Ok(v) => {
                            emit(&v.to_string());
                            if v.passed { 0 } else { 1 }
                        }
                        Err(e) => {
                            eprintln!("error: {e}");
                            exit_code(&e)
                        }
                    }
                }
                _ => {
                    eprintln!("error: give either an input or --report, not both");
                    1
                }
            }
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(run(Cli::parse()) as u8)
}
