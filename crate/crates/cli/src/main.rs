use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use tame_measure::dsl::{self, DslError, ErrorKind};
use tame_measure::report::run_transcript;
use tame_measure::suites::{run_suite, SuiteName};

const EXIT_VERIFY: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;

/// Exact product measures on tame subsets of [0,1] x R.
#[derive(Parser)]
#[command(name = "tm", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a query such as `eta(vshift(diag, 1))`; reads stdin when omitted.
    Eval { expr: Option<String> },
    /// Print the verification table for the diagonal and the eta_t family.
    Transcript,
    /// Run a randomized property suite.
    Suite {
        /// additivity, monotonicity, product, shift, oracle-sandwich or membership.
        name: SuiteName,
        #[arg(long, env = "TM_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, env = "TM_CASES", default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        cases: u64,
    },
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json values serialize"));
}

fn dsl_failure(err: &DslError, source: &str, format: Format) -> ExitCode {
    match format {
        Format::Text => eprintln!("{}", err.render(source)),
        Format::Json => print_json(&serde_json::json!({ "query": source, "error": err })),
    }
    ExitCode::from(if err.kind == ErrorKind::Domain { EXIT_DOMAIN } else { EXIT_PARSE })
}

fn eval(expr: Option<String>, format: Format) -> ExitCode {
    let source = match expr {
        Some(e) => e,
        None => {
            let mut buf = String::new();
            if let Err(e) = std::io::stdin().read_to_string(&mut buf) {
                eprintln!("error: cannot read stdin: {e}");
                return ExitCode::from(EXIT_PARSE);
            }
            buf.trim_end().to_string()
        }
    };
    match dsl::run(&source) {
        Ok(out) => {
            match format {
                Format::Text => {
                    println!("{} = {}", out.echo, out.value);
                    for d in &out.diagnostics {
                        println!("  {d}");
                    }
                }
                Format::Json => print_json(&serde_json::json!({
                    "query": source,
                    "echo": out.echo,
                    "value": out.value,
                    "diagnostics": out.diagnostics,
                })),
            }
            ExitCode::SUCCESS
        }
        Err(e) => dsl_failure(&e, &source, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Eval { expr } => eval(expr, cli.format),
        Command::Transcript => {
            let t = run_transcript();
            match cli.format {
                Format::Text => print!("{}", t.render_text()),
                Format::Json => print_json(&serde_json::to_value(&t).expect("transcript serializes")),
            }
            if t.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFY)
            }
        }
        Command::Suite { name, seed, cases } => {
            let cases = usize::try_from(cases).unwrap_or(usize::MAX);
            match run_suite(name, seed, cases) {
                Ok(rep) => {
                    match cli.format {
                        Format::Text => print!("{}", rep.render_text()),
                        Format::Json => print_json(&serde_json::to_value(&rep).expect("report serializes")),
                    }
                    if rep.ok() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(EXIT_VERIFY)
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(EXIT_DOMAIN)
                }
            }
        }
    }
}
