use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagnostics::{l1_error, CheckMode, EntropyReport, InvariantChecker, Tolerances};
use crate::error::{Error, InvariantViolation, Result};
use crate::harness::fit::{fit_rate, RateFit};
use crate::model::{
    EntropyPair, FluxModel, InitStats, InitialCondition, KineticEntropy, QuadraticEntropy,
};
use crate::scheme::{advance, init_state, Boundary, Grid, SchemeParams, State, StepView};

/// Default refinement levels.
pub const DEFAULT_LEVELS: [usize; 5] = [256, 512, 1024, 2048, 4096];
/// Default domain. Its length 1.6 makes `t = 0.1` a whole number of steps at `λ = 1`
/// for every power-of-two level from 16 up.
pub const DEFAULT_DOMAIN: (f64, f64) = (-0.3, 1.3);

/// One refinement study or sweep: a problem, a set of `s` values and a set of levels.
#[derive(Debug, Clone)]
pub struct StudyConfig {
    pub model: Arc<dyn FluxModel>,
    pub ic: InitialCondition,
    /// Entropy pair used for the production check; quadratic when `None`.
    pub entropy: Option<Arc<dyn EntropyPair>>,
    pub s_values: Vec<f64>,
    pub lambda: f64,
    pub t_end: f64,
    /// Cell counts, strictly increasing.
    pub levels: Vec<usize>,
    pub domain: (f64, f64),
    pub boundary: Boundary,
    pub tolerances: Tolerances,
    pub mode: CheckMode,
    /// Allow `s ∈ (1, 2]`; invariant failures are then only warnings.
    pub unsafe_s: bool,
}

impl StudyConfig {
    pub fn new(model: Arc<dyn FluxModel>, ic: InitialCondition) -> Self {
        Self {
            model,
            ic,
            entropy: None,
            s_values: vec![1.0],
            lambda: 1.0,
            t_end: 0.1,
            levels: DEFAULT_LEVELS.to_vec(),
            domain: DEFAULT_DOMAIN,
            boundary: Boundary::Copy,
            tolerances: Tolerances::default(),
            mode: CheckMode::Strict,
            unsafe_s: false,
        }
    }

    pub fn with_s(mut self, s: impl Into<Vec<f64>>) -> Self {
        self.s_values = s.into();
        self
    }

    pub fn with_levels(mut self, levels: impl Into<Vec<usize>>) -> Self {
        self.levels = levels.into();
        self
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn with_t_end(mut self, t_end: f64) -> Self {
        self.t_end = t_end;
        self
    }

    pub fn with_domain(mut self, xmin: f64, xmax: f64) -> Self {
        self.domain = (xmin, xmax);
        self
    }

    pub fn with_boundary(mut self, boundary: Boundary) -> Self {
        self.boundary = boundary;
        self
    }

    pub fn with_mode(mut self, mode: CheckMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_entropy(mut self, pair: Arc<dyn EntropyPair>) -> Self {
        self.entropy = Some(pair);
        self
    }

    /// Checks the relaxation range, the sub-characteristic condition, the level list and
    /// commensurability of `t_end` on every level.
    pub fn validate(&self) -> Result<InitStats> {
        if self.s_values.is_empty() {
            return Err(Error::Validation("at least one s value is required".into()));
        }
        for &s in &self.s_values {
            self.params(s)?;
        }
        if self.levels.is_empty() {
            return Err(Error::Validation("at least one level is required".into()));
        }
        if self.levels.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Validation(format!(
                "levels must be strictly increasing, got {:?}",
                self.levels
            )));
        }
        let stats = InitStats::compute(self.model.as_ref(), &self.ic, self.domain);
        for &j in &self.levels {
            let grid = self.grid(j)?;
            grid.validate(&stats)?;
            grid.steps_to(self.t_end)?;
        }
        Ok(stats)
    }

    pub fn grid(&self, ncells: usize) -> Result<Grid> {
        Grid::new(self.domain.0, self.domain.1, ncells, self.lambda, self.boundary)
    }

    pub fn params(&self, s: f64) -> Result<SchemeParams> {
        if self.unsafe_s {
            SchemeParams::new_unchecked(s)
        } else {
            SchemeParams::new(s)
        }
    }

    fn effective_mode(&self, s: f64) -> CheckMode {
        if s > 1.0 {
            CheckMode::Warn
        } else {
            self.mode
        }
    }

    fn kinetic(&self, stats: &InitStats) -> Result<KineticEntropy> {
        let pair = self
            .entropy
            .clone()
            .unwrap_or_else(|| Arc::new(QuadraticEntropy::new(self.model.clone())));
        KineticEntropy::new(pair, self.lambda, stats.alpha, stats.beta)
    }

    /// Independent `(s, level)` jobs in a fixed order: `s` outer, level inner.
    pub fn jobs(&self) -> Vec<(f64, usize)> {
        self.s_values
            .iter()
            .flat_map(|&s| self.levels.iter().map(move |&j| (s, j)))
            .collect()
    }
}

/// A state kept during a run, with its entropy report when the level is at least 1.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub step: usize,
    pub time: f64,
    pub state: State,
    pub entropy: Option<EntropyReport>,
}

/// Everything one checked run produced.
#[derive(Debug, Clone)]
pub struct CaseResult {
    pub s: f64,
    pub grid: Grid,
    pub stats: InitStats,
    pub steps: usize,
    pub final_state: State,
    pub snapshots: Vec<Snapshot>,
    /// `(n, Δx Δt Σ|μ^n|)` for `n = 1..=steps`.
    pub mu_series: Vec<(usize, f64)>,
    /// Only non-empty in warn mode.
    pub violations: Vec<InvariantViolation>,
    /// Wall-clock seconds.
    pub runtime: f64,
}

impl CaseResult {
    /// `Δx Δt Σ|μ|` at the final level, zero when no step was taken.
    pub fn final_mu_l1(&self) -> f64 {
        self.mu_series.last().map_or(0.0, |&(_, m)| m)
    }
}

/// Runs one `(s, level)` job with every invariant checked; keeps states at `output_times`.
pub fn run_case(cfg: &StudyConfig, s: f64, ncells: usize, output_times: &[f64]) -> Result<CaseResult> {
    let start = Instant::now();
    let grid = cfg.grid(ncells)?;
    let params = cfg.params(s)?;
    let steps = grid.steps_to(cfg.t_end)?;
    let mut output_steps = output_times
        .iter()
        .map(|&t| {
            if !(t >= 0.0 && t <= cfg.t_end * (1.0 + 1e-12)) {
                return Err(Error::Validation(format!(
                    "output time {t} outside [0, t_end={}]",
                    cfg.t_end
                )));
            }
            grid.steps_to(t)
        })
        .collect::<Result<Vec<_>>>()?;
    output_steps.sort_unstable();
    output_steps.dedup();

    let (initial, stats) = init_state(&grid, cfg.model.as_ref(), &cfg.ic)?;
    let kinetic = cfg.kinetic(&stats)?;
    let mut checker = InvariantChecker::new(
        cfg.model.clone(),
        kinetic,
        stats,
        s,
        cfg.tolerances,
        cfg.effective_mode(s),
    )
    .capture_at(output_steps.iter().copied().filter(|&n| n > 0));

    let mut snapshots: Vec<Snapshot> = Vec::new();
    if output_steps.first() == Some(&0) {
        snapshots.push(Snapshot {
            step: 0,
            time: 0.0,
            state: initial.clone(),
            entropy: None,
        });
    }
    let mut keep = |view: &StepView<'_>| {
        if output_steps.binary_search(&view.state.n).is_ok() {
            snapshots.push(Snapshot {
                step: view.state.n,
                time: view.state.n as f64 * grid.dt,
                state: view.state.clone(),
                entropy: None,
            });
        }
        Ok(())
    };
    let final_state = advance(initial, steps, &params, cfg.model.as_ref(), &mut [&mut checker, &mut keep])?;

    let mut captured = std::mem::take(&mut checker.captured).into_iter().peekable();
    for snap in snapshots.iter_mut().filter(|s| s.step > 0) {
        while let Some(report) = captured.next_if(|r| r.step <= snap.step) {
            if report.step == snap.step {
                snap.entropy = Some(report);
            }
        }
    }
    Ok(CaseResult {
        s,
        grid,
        stats,
        steps,
        final_state,
        snapshots,
        mu_series: checker.mu_series,
        violations: checker.violations,
        runtime: start.elapsed().as_secs_f64(),
    })
}

/// One refinement level of a study.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelRecord {
    pub ncells: usize,
    pub dx: f64,
    pub error_u: f64,
    pub error_v: f64,
    /// Wall-clock seconds; not reproducible, and left out of the CSV output.
    pub runtime: f64,
    /// Warn-mode violations; always zero in strict mode.
    pub violations: usize,
}

/// Errors against `Δx` at one `s`, with the fitted rates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceStudy {
    pub s: f64,
    pub levels: Vec<LevelRecord>,
    /// `None` with fewer than two levels.
    pub rate_u: Option<RateFit>,
    pub rate_v: Option<RateFit>,
    /// Cell counts the fit used: every level.
    pub fit_window: Vec<usize>,
}

fn map_jobs<T: Send>(
    cfg: &StudyConfig,
    parallel: bool,
    job: impl Fn(f64, usize) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    let jobs = cfg.jobs();
    if parallel {
        jobs.par_iter().map(|&(s, j)| job(s, j)).collect()
    } else {
        jobs.iter().map(|&(s, j)| job(s, j)).collect()
    }
}

/// Refinement study, one [`ConvergenceStudy`] per `s`, in the order of `cfg.s_values`.
///
/// Jobs run on the rayon pool when `parallel`; results are keyed by job, so the output does
/// not depend on scheduling.
pub fn convergence_study(cfg: &StudyConfig, parallel: bool) -> Result<Vec<ConvergenceStudy>> {
    cfg.validate()?;
    let records = map_jobs(cfg, parallel, |s, j| {
        let case = run_case(cfg, s, j, &[])?;
        let err = l1_error(&case.final_state, cfg.model.as_ref(), &cfg.ic, cfg.t_end)?;
        Ok(LevelRecord {
            ncells: j,
            dx: case.grid.dx,
            error_u: err.u,
            error_v: err.v,
            runtime: case.runtime,
            violations: case.violations.len(),
        })
    })?;
    let per_s = cfg.levels.len();
    cfg.s_values
        .iter()
        .zip(records.chunks(per_s))
        .map(|(&s, levels)| {
            let fit = |pick: fn(&LevelRecord) -> f64| -> Result<Option<RateFit>> {
                if levels.len() < 2 {
                    return Ok(None);
                }
                let pts: Vec<(f64, f64)> = levels.iter().map(|r| (r.dx, pick(r))).collect();
                let (p, r2) = fit_rate(&pts)?;
                Ok(Some(RateFit { p, r2 }))
            };
            Ok(ConvergenceStudy {
                s,
                rate_u: fit(|r| r.error_u)?,
                rate_v: fit(|r| r.error_v)?,
                fit_window: cfg.levels.clone(),
                levels: levels.to_vec(),
            })
        })
        .collect()
}

/// Entropy production of one `(s, level)` job.
#[derive(Debug, Clone)]
pub struct EntropySweep {
    pub s: f64,
    pub ncells: usize,
    pub grid: Grid,
    /// `(n, Δx Δt Σ|μ^n|)`.
    pub series: Vec<(usize, f64)>,
    /// Snapshots at the requested output times, with `μ` at levels ≥ 1.
    pub snapshots: Vec<Snapshot>,
    pub violations: usize,
}

impl EntropySweep {
    pub fn final_mu_l1(&self) -> f64 {
        self.series.last().map_or(0.0, |&(_, m)| m)
    }
}

/// Runs every `(s, level)` job keeping `μ` at `output_times` and the full `ℓ¹` series.
pub fn sweep_entropy(cfg: &StudyConfig, output_times: &[f64], parallel: bool) -> Result<Vec<EntropySweep>> {
    cfg.validate()?;
    map_jobs(cfg, parallel, |s, j| {
        let case = run_case(cfg, s, j, output_times)?;
        Ok(EntropySweep {
            s,
            ncells: j,
            grid: case.grid,
            series: case.mu_series,
            snapshots: case.snapshots,
            violations: case.violations.len(),
        })
    })
}
