mod commands;
mod output;

use std::io::Write;
use std::panic;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use wdparam::Error;

use crate::commands::{Outcome, Session};

/// Exact computations with tame Langlands parameters.
#[derive(Parser, Debug)]
#[command(name = "wdparam", version)]
struct Cli {
    /// Residue field cardinality (overrides the input's "q").
    #[arg(long, global = true)]
    q: Option<u64>,

    /// Tame level (overrides the input's "M").
    #[arg(long = "M", global = true)]
    m: Option<u64>,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Comma-separated key=value list, e.g. "max_n=4,max_M=12,exhaustive_n=4".
    #[arg(long, global = true)]
    bounds: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Input document; "-" or absent means stdin.
    #[arg(long, global = true)]
    input: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// L-factor, gamma ratio and Γ-divisor of a Weil–Deligne parameter.
    Factors,
    /// Γ-divisor of a pair of semisimple parameters.
    GammaDiv,
    /// Rebuild a semisimple parameter from its Γ-divisors.
    Reconstruct,
    /// Monodromy orbits and the maximal-monodromy equivalence.
    Monodromy {
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// ℓ-adic integrality predicates.
    Integrality {
        #[arg(long)]
        ell: Option<u64>,
    },
    /// Plancherel measures and their multiplicativity.
    Plancherel,
    /// Points of the tame cocycle space over F_ℓ.
    ModuliCount {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        orbits: bool,
        /// Primes ℓ for a log_ℓ(count) table.
        #[arg(long, value_delimiter = ',')]
        probe: Vec<u64>,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

fn error_json(e: &Error) -> Value {
    let mut err = json!({ "kind": e.kind(), "message": e.to_string() });
    if let Error::Schema { pointer, message } = e {
        err["pointer"] = json!(pointer);
        err["message"] = json!(message);
    }
    err
}

fn report_error(kind: &str, message: &str, code: u8, extra: Option<Value>) -> ExitCode {
    let mut err = json!({ "kind": kind, "message": message });
    if let Some(Value::Object(m)) = extra {
        for (k, v) in m {
            err[k] = v;
        }
    }
    let out = json!({ "error": err, "exit_code": code });
    let _ = writeln!(std::io::stderr(), "{}", serde_json::to_string(&out).unwrap());
    ExitCode::from(code)
}

fn configure_threads() -> wdparam::Result<()> {
    let Ok(raw) = std::env::var("WDPARAM_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::InvalidInput(format!("WDPARAM_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::InvalidInput(e.to_string()))
}

fn run(cli: Cli) -> wdparam::Result<(Outcome, Format)> {
    configure_threads()?;
    let session = Session::new(cli.q, cli.m, cli.seed, cli.bounds.as_deref(), cli.input)?;
    let out = match cli.command {
        Command::Factors => session.factors()?,
        Command::GammaDiv => session.gamma_div()?,
        Command::Reconstruct => session.reconstruct()?,
        Command::Monodromy { max_n } => session.monodromy(max_n)?,
        Command::Integrality { ell } => session.integrality(ell)?,
        Command::Plancherel => session.plancherel()?,
        Command::ModuliCount { n, ell, orbits, probe } => session.moduli_count(n, ell, orbits, &probe)?,
        Command::Selftest { only } => session.selftest(&only)?,
    };
    Ok((out, cli.format))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            return report_error("usage", e.to_string().trim(), 1, None);
        }
    };
    panic::set_hook(Box::new(|_| {}));
    let result = panic::catch_unwind(|| run(cli));
    match result {
        Ok(Ok((outcome, format))) => {
            let (report, code) = match outcome {
                Outcome::Ok(r) => (r, 0),
                Outcome::Failed(r) => (r, 3),
            };
            let text = output::render(&report, format);
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Ok(Err(e)) => {
            let code = if e.is_validation() { 1 } else { 2 };
            let err = error_json(&e);
            let msg = err["message"].as_str().unwrap_or_default().to_string();
            report_error(e.kind(), &msg, code, Some(err))
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "internal error".into());
            report_error("internal", &msg, 2, None)
        }
    }
}
