mod args;
mod commands;
mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use gammaseq_core::sequences::certify_euler_constant;
use gammaseq_core::EvalConfig;

use args::{Cli, Command, GlobalOpts};
use commands::{CliError, Outcome};
use output::Table;

/// Index at which the stored Euler constant is checked against `D_m - 1 < C < C_m`.
const EULER_CHECK_M: u64 = 1000;

fn config(g: &GlobalOpts) -> Result<EvalConfig, CliError> {
    let mut cfg = EvalConfig::default();
    if let Some(t) = g.target_err {
        cfg = cfg.with_target_err(t);
    }
    if let Some(n) = g.max_terms {
        cfg = cfg.with_max_terms(n);
    }
    cfg.validate()?;
    Ok(cfg)
}

fn meta(g: &GlobalOpts, cfg: &EvalConfig, euler: (f64, f64)) -> Vec<(&'static str, String)> {
    vec![
        ("version", env!("CARGO_PKG_VERSION").to_string()),
        ("target_err", format!("{:.2e}", cfg.target_err)),
        ("max_terms", cfg.max_terms.to_string()),
        ("threads", rayon::current_num_threads().to_string()),
        ("format", format!("{:?}", g.format).to_lowercase()),
        ("euler_lower", format!("{:.16e}", euler.0)),
        ("euler_upper", format!("{:.16e}", euler.1)),
    ]
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    if let Some(n) = cli.global.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("--threads: {e}")))?;
    }
    let cfg = config(&cli.global)?;
    let euler = certify_euler_constant(EULER_CHECK_M)?;
    let outcome: Outcome = match &cli.command {
        Command::Eval { x, fields } => commands::eval(x, fields, &cfg),
        Command::Seq { name, n_from, n_to } => commands::seq(*name, *n_from, *n_to),
        Command::Roots { tol } => commands::roots(*tol),
        Command::Na { a } => commands::na(a),
        Command::Verify {
            suite,
            m_max,
            n_max,
        } => commands::verify(*suite, *m_max, *n_max, &cfg),
    };
    let (records, status) = outcome?;
    let table = Table {
        meta: cli
            .global
            .meta
            .then(|| meta(&cli.global, &cfg, (euler.lower.hi(), euler.upper.lo()))),
        records,
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    table
        .write(cli.global.format, &mut out)
        .and_then(|_| out.flush())
        .map_err(|e| CliError::Failure(format!("writing output: {e}")))?;
    Ok(status.code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("gammaseq: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
