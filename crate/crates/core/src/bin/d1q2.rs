use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use d1q2::cli::{execute, exit_code, parse_config, parse_override, Command};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "d1q2", version, about = "D1Q2 lattice Boltzmann solver with checked discrete bounds")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Run and dump fields at the output times
    Run(Opts),
    /// Refinement study and fitted l1 rates
    Converge(Opts),
    /// Entropy production fields and l1 time series
    Entropy(Opts),
}

#[derive(Args)]
struct Opts {
    /// Flat JSON config file
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override a config key, e.g. --set s=0.5,1.0
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    /// Abort on the first bound violation (default)
    #[arg(long, conflicts_with = "warn")]
    strict: bool,
    /// Log bound violations and continue
    #[arg(long)]
    warn: bool,
    /// Allow s in (1, 2]; bound checks become warnings
    #[arg(long)]
    unsafe_s: bool,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    let (cmd, opts) = match cli.command {
        Sub::Run(o) => (Command::Run, o),
        Sub::Converge(o) => (Command::Converge, o),
        Sub::Entropy(o) => (Command::Entropy, o),
    };
    let mut overrides = Vec::new();
    for arg in &opts.set {
        match parse_override(arg) {
            Ok(kv) => overrides.push(kv),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(exit_code(&e) as u8);
            }
        }
    }
    if let Some(out) = &opts.out {
        overrides.push(("out".into(), Value::from(out.to_string_lossy().into_owned())));
    }
    if opts.strict {
        overrides.push(("checks".into(), Value::from("strict")));
    }
    if opts.warn {
        overrides.push(("checks".into(), Value::from("warn")));
    }
    if opts.unsafe_s {
        overrides.push(("unsafe_s".into(), Value::from(true)));
    }
    let cfg = match parse_config(opts.config.as_deref(), &overrides) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e) as u8);
        }
    };
    ExitCode::from(execute(cmd, &cfg) as u8)
}
