use std::path::{Path, PathBuf};

use log::{info, warn};
use rayon::prelude::*;

use crate::cli::config::{Format, RunConfig};
use crate::cli::output::{
    write_dumps, write_entropy_series, write_rates, write_violation, EntropyRow, FieldDump,
};
use crate::error::{Error, Result};
use crate::harness::{convergence_study, run_case, CaseResult, StudyConfig};

/// Subcommands of the binary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Run,
    Converge,
    Entropy,
}

/// Process exit status for an error: 2 validation, 3 invariant violation, 4 I/O, 1 otherwise.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Validation(_)
        | Error::Parse(_)
        | Error::InvalidS(_)
        | Error::CflViolation { .. }
        | Error::NonCommensurableTime { .. }
        | Error::InvalidGrid(_)
        | Error::InvalidInitialCondition(_)
        | Error::NotMonotone { .. }
        | Error::Unsupported(_) => 2,
        Error::InvariantViolation(_) | Error::DomainViolation { .. } => 3,
        Error::Io(_) => 4,
        _ => 1,
    }
}

fn case_dir(cfg: &RunConfig, s: f64, ncells: usize, jobs: usize) -> PathBuf {
    if jobs == 1 {
        cfg.out.clone()
    } else {
        cfg.out.join(format!("s{s}_J{ncells}"))
    }
}

fn run_all(study: &StudyConfig, times: &[f64]) -> Result<Vec<CaseResult>> {
    study
        .jobs()
        .par_iter()
        .map(|&(s, j)| {
            run_case(study, s, j, times).inspect_err(|e| {
                if let Error::InvariantViolation(_) = e {
                    warn!("s={s} J={j}: {e}");
                }
            })
        })
        .collect()
}

fn report_warnings(cases: &[CaseResult]) {
    for case in cases.iter().filter(|c| !c.violations.is_empty()) {
        warn!(
            "s={} J={}: {} bound violation(s), first: {}",
            case.s,
            case.grid.ncells,
            case.violations.len(),
            case.violations[0]
        );
    }
}

fn dumps(cfg: &RunConfig, cases: &[CaseResult], with_entropy: bool) -> Result<()> {
    let times = cfg.output_times();
    let json = cfg.format == Format::Json;
    let ext = if json { "json" } else { "csv" };
    for case in cases {
        let files: Vec<FieldDump> = case
            .snapshots
            .iter()
            .map(|snap| {
                let t = times
                    .iter()
                    .copied()
                    .find(|&t| case.grid.steps_to(t).ok() == Some(snap.step))
                    .unwrap_or(snap.time);
                FieldDump::new(&cfg.model, &cfg.ic, case.s, t, snap, with_entropy, ext)
            })
            .collect();
        let dir = case_dir(cfg, case.s, case.grid.ncells, cases.len());
        write_dumps(&dir, &files, json)?;
        info!("wrote {} dump(s) to {}", files.len(), dir.display());
    }
    Ok(())
}

/// Runs every `(s, level)` and writes `fields_t<time>` at each output time.
pub fn cmd_run(cfg: &RunConfig) -> Result<()> {
    let study = cfg.study()?;
    let cases = run_all(&study, &cfg.output_times())?;
    report_warnings(&cases);
    dumps(cfg, &cases, false)
}

/// Refinement study; writes `rates` and `rates_summary`.
pub fn cmd_converge(cfg: &RunConfig) -> Result<()> {
    let study = cfg.study()?;
    let studies = convergence_study(&study, true)?;
    for st in &studies {
        let n: usize = st.levels.iter().map(|l| l.violations).sum();
        if n > 0 {
            warn!("s={}: {n} bound violation(s)", st.s);
        }
        if let (Some(u), Some(v)) = (&st.rate_u, &st.rate_v) {
            info!("s={}: p_u={:.4} (r2={:.4}), p_v={:.4} (r2={:.4})", st.s, u.p, u.r2, v.p, v.r2);
        }
    }
    write_rates(&cfg.out, &studies, cfg.format == Format::Json)?;
    Ok(())
}

/// Entropy production: `E`, `Q`, `μ` dumps at each output time and the `ℓ¹` series.
pub fn cmd_entropy(cfg: &RunConfig) -> Result<()> {
    let study = cfg.study()?;
    let cases = run_all(&study, &cfg.output_times())?;
    report_warnings(&cases);
    dumps(cfg, &cases, true)?;
    let rows: Vec<EntropyRow> = cases
        .iter()
        .flat_map(|c| {
            c.mu_series.iter().map(move |&(n, mu_l1)| EntropyRow {
                s: c.s,
                ncells: c.grid.ncells,
                n,
                t: n as f64 * c.grid.dt,
                mu_l1,
            })
        })
        .collect();
    write_entropy_series(&cfg.out, &rows, cfg.format == Format::Json)?;
    Ok(())
}

/// Runs `cmd`, writing `violation.json` under the output directory when a strict check fails.
/// Returns the process exit status.
pub fn execute(cmd: Command, cfg: &RunConfig) -> i32 {
    let result = match cmd {
        Command::Run => cmd_run(cfg),
        Command::Converge => cmd_converge(cfg),
        Command::Entropy => cmd_entropy(cfg),
    };
    match result {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            if let Error::InvariantViolation(v) = &err {
                if let Err(io) = write_violation(Path::new(&cfg.out), v) {
                    eprintln!("error: could not write violation report: {io}");
                }
            }
            exit_code(&err)
        }
    }
}
