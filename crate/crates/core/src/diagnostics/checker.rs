use std::collections::BTreeSet;
use std::sync::Arc;

use log::warn;
use serde::{Deserialize, Serialize};

use crate::diagnostics::bounds::BoundReport;
use crate::diagnostics::entropy::{entropy_fields, EntropyFields, EntropyReport};
use crate::error::{Error, InvariantViolation, Result};
use crate::model::{equilibrium_split, FluxModel, InitStats, KineticEntropy};
use crate::scheme::{Observer, State, StepView};

/// Rounding allowances for the checked bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Added to every bound, scaled by `max(1, |bound|)`.
    pub bound: f64,
    /// Scale of the entropy sign test, `tol · max(1, max|E| / Δt)`.
    pub entropy: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            bound: 1e-12,
            entropy: 1e-12,
        }
    }
}

/// What happens when a bound fails.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMode {
    /// Abort the run with [`Error::InvariantViolation`].
    #[default]
    Strict,
    /// Log, record and continue.
    Warn,
}

/// Observer asserting every discrete bound at every step.
///
/// Checks the maximum principle on `u` and `f±`, the spatial TV estimates, the time-variation
/// estimates, the equilibrium gap and the sign of the entropy production. The entropy fields
/// of the previous half level are cached, so each step inverts `h±` only once.
#[derive(Debug)]
pub struct InvariantChecker {
    model: Arc<dyn FluxModel>,
    kinetic: KineticEntropy,
    stats: InitStats,
    s: f64,
    tol: Tolerances,
    mode: CheckMode,
    capture: BTreeSet<usize>,
    keep_reports: bool,
    prev_fields: Option<EntropyFields>,
    last: Option<BoundReport>,
    /// Bound reports, starting with level 0, when enabled with [`Self::keep_reports`].
    pub reports: Vec<BoundReport>,
    /// `(n, Δx Δt Σ|μ^n|)` for every step.
    pub mu_series: Vec<(usize, f64)>,
    /// Entropy reports at the levels requested with [`Self::capture_at`].
    pub captured: Vec<EntropyReport>,
    /// Everything that failed, in order. In strict mode at most one entry.
    pub violations: Vec<InvariantViolation>,
}

impl InvariantChecker {
    pub fn new(
        model: Arc<dyn FluxModel>,
        kinetic: KineticEntropy,
        stats: InitStats,
        s: f64,
        tol: Tolerances,
        mode: CheckMode,
    ) -> Self {
        Self {
            model,
            kinetic,
            stats,
            s,
            tol,
            mode,
            capture: BTreeSet::new(),
            keep_reports: false,
            prev_fields: None,
            last: None,
            reports: Vec::new(),
            mu_series: Vec::new(),
            captured: Vec::new(),
            violations: Vec::new(),
        }
    }

    /// Keep the full entropy report at these levels.
    pub fn capture_at(mut self, steps: impl IntoIterator<Item = usize>) -> Self {
        self.capture.extend(steps);
        self
    }

    pub fn keep_reports(mut self, keep: bool) -> Self {
        self.keep_reports = keep;
        self
    }

    pub fn mode(&self) -> CheckMode {
        self.mode
    }

    fn fail(&mut self, v: InvariantViolation) -> Result<()> {
        match self.mode {
            CheckMode::Strict => {
                self.violations.push(v.clone());
                Err(Error::InvariantViolation(v))
            }
            CheckMode::Warn => {
                warn!("{v}");
                self.violations.push(v);
                Ok(())
            }
        }
    }

    fn slack(&self, bound: f64) -> f64 {
        bound + self.tol.bound * bound.abs().max(1.0)
    }

    fn upper(&mut self, step: usize, cell: Option<usize>, quantity: &str, value: f64, bound: f64) -> Result<()> {
        if !(value <= self.slack(bound)) {
            self.fail(InvariantViolation {
                step,
                cell,
                quantity: quantity.to_string(),
                value,
                bound,
            })?;
        }
        Ok(())
    }

    fn lower(&mut self, step: usize, cell: Option<usize>, quantity: &str, value: f64, bound: f64) -> Result<()> {
        if !(value >= bound - self.tol.bound * bound.abs().max(1.0)) {
            self.fail(InvariantViolation {
                step,
                cell,
                quantity: quantity.to_string(),
                value,
                bound,
            })?;
        }
        Ok(())
    }

    fn check_state(&mut self, state: &State, prev: Option<&State>) -> Result<BoundReport> {
        let InitStats { alpha, beta, tv0, .. } = self.stats;
        let lambda = state.grid.lambda;
        let n = state.n;
        let report = BoundReport::compute(state, prev, self.model.as_ref(), self.s, tv0);

        // maximum principle, cell by cell
        let (hm_lo, hp_lo) = equilibrium_split(self.model.as_ref(), lambda, alpha);
        let (hm_hi, hp_hi) = equilibrium_split(self.model.as_ref(), lambda, beta);
        for j in 0..state.len() {
            let (m, p) = (state.fminus[j], state.fplus[j]);
            let u = m + p;
            self.lower(n, Some(j), "maximum principle (u >= alpha)", u, alpha)?;
            self.upper(n, Some(j), "maximum principle (u <= beta)", u, beta)?;
            self.lower(n, Some(j), "maximum principle (f- >= h-(alpha))", m, hm_lo)?;
            self.upper(n, Some(j), "maximum principle (f- <= h-(beta))", m, hm_hi)?;
            self.lower(n, Some(j), "maximum principle (f+ >= h+(alpha))", p, hp_lo)?;
            self.upper(n, Some(j), "maximum principle (f+ <= h+(beta))", p, hp_hi)?;
        }

        self.upper(n, None, "TV(f+) + TV(f-) <= TV(u0)", report.tv_f_sum, tv0)?;
        self.upper(n, None, "TV(u) <= TV(u0)", report.tv_u, tv0)?;
        self.upper(n, None, "TV(v) <= lambda TV(u0)", report.tv_v, lambda * tv0)?;
        self.upper(n, None, "equilibrium gap", report.gap_l1, report.gap_bound)?;

        if prev.is_some() {
            self.upper(n, None, "time variation of f <= 2 TV(u0)", report.time_var_f, 2.0 * tv0)?;
            self.upper(n, None, "time variation of u <= 2 TV(u0)", report.time_var_u, 2.0 * tv0)?;
            self.upper(
                n,
                None,
                "time variation of v <= 2 lambda TV(u0)",
                report.time_var_v,
                2.0 * lambda * tv0,
            )?;
        }
        if let Some(last) = self.last {
            self.upper(n, None, "TV(f+) + TV(f-) non-increasing", report.tv_f_sum, last.tv_f_sum)?;
            if last.step > 0 {
                self.upper(
                    n,
                    None,
                    "time variation of f non-increasing",
                    report.time_var_f,
                    last.time_var_f,
                )?;
            }
        }
        if self.keep_reports {
            self.reports.push(report);
        }
        self.last = Some(report);
        Ok(report)
    }

    fn fields(&mut self, half: &crate::scheme::HalfState) -> Result<Option<EntropyFields>> {
        match entropy_fields(half, &self.kinetic) {
            Ok(f) => Ok(Some(f)),
            Err(Error::DomainViolation { cell, value, lo, hi, branch }) => {
                let bound = if value < lo { lo } else { hi };
                self.fail(InvariantViolation {
                    step: half.n,
                    cell: Some(cell),
                    quantity: format!("kinetic entropy domain (f{branch} half state)"),
                    value,
                    bound,
                })?;
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }

    /// Last bound report seen.
    pub fn last_report(&self) -> Option<&BoundReport> {
        self.last.as_ref()
    }
}

impl Observer for InvariantChecker {
    fn observe(&mut self, view: &StepView<'_>) -> Result<()> {
        if self.last.is_none() {
            self.check_state(view.prev, None)?;
            self.prev_fields = self.fields(view.prev_half)?;
        }
        self.check_state(view.state, Some(view.prev))?;

        let next = self.fields(view.half)?;
        if let (Some(prev), Some(next)) = (self.prev_fields.as_ref(), next.clone()) {
            let grid = view.state.grid;
            let report = EntropyReport::new(view.state.n, prev, next, &grid);
            let tol = report.sign_tolerance(self.tol.entropy, grid.dt);
            let worst = report
                .mu
                .iter()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |acc, (j, &m)| if m > acc.1 { (j, m) } else { acc });
            if !(worst.1 <= tol) {
                self.fail(InvariantViolation {
                    step: view.state.n,
                    cell: Some(worst.0),
                    quantity: "entropy production mu <= 0".into(),
                    value: worst.1,
                    bound: tol,
                })?;
            }
            self.mu_series.push((view.state.n, report.mu_l1));
            if self.capture.contains(&view.state.n) {
                self.captured.push(report);
            }
        }
        self.prev_fields = next;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Advection, Burgers, InitialCondition, QuadraticEntropy};
    use crate::scheme::{init_state, run, Boundary, Grid, SchemeParams};

    fn checker(model: Arc<dyn FluxModel>, stats: InitStats, lambda: f64, s: f64, mode: CheckMode) -> InvariantChecker {
        let pair = Arc::new(QuadraticEntropy::new(model.clone()));
        let kinetic = KineticEntropy::new(pair, lambda, stats.alpha, stats.beta).unwrap();
        InvariantChecker::new(model, kinetic, stats, s, Tolerances::default(), mode)
    }

    #[test]
    fn admissible_runs_are_clean() {
        for model in [Arc::new(Advection::default()) as Arc<dyn FluxModel>, Arc::new(Burgers)] {
            for ic in [InitialCondition::default_regular(), InitialCondition::default_step()] {
                for s in [0.5, 1.0] {
                    let grid = Grid::new(-0.3, 1.3, 128, 1.0, Boundary::Copy).unwrap();
                    let (_, stats) = init_state(&grid, model.as_ref(), &ic).unwrap();
                    let mut c = checker(model.clone(), stats, 1.0, s, CheckMode::Strict).keep_reports(true);
                    let p = SchemeParams::new(s).unwrap();
                    run(&grid, &p, model.as_ref(), &ic, 0.1, &mut [&mut c]).unwrap();
                    assert!(c.violations.is_empty());
                    assert_eq!(c.reports.len(), 9);
                    assert_eq!(c.mu_series.len(), 8);
                }
            }
        }
    }

    #[test]
    fn captures_requested_levels() {
        let model: Arc<dyn FluxModel> = Arc::new(Burgers);
        let ic = InitialCondition::default_step();
        let grid = Grid::new(-0.3, 1.3, 64, 1.25, Boundary::Copy).unwrap();
        let (_, stats) = init_state(&grid, model.as_ref(), &ic).unwrap();
        let mut c = checker(model.clone(), stats, 1.25, 0.7, CheckMode::Strict).capture_at([1, 5]);
        let p = SchemeParams::new(0.7).unwrap();
        run(&grid, &p, model.as_ref(), &ic, 0.12, &mut [&mut c]).unwrap();
        let steps: Vec<usize> = c.captured.iter().map(|r| r.step).collect();
        assert_eq!(steps, vec![1, 5]);
        assert!(c.captured[1].mu.iter().all(|&m| m <= 1e-10));
    }

    #[test]
    fn over_relaxation_is_caught() {
        // s close to 2 overshoots equilibrium and breaks the maximum principle on a step
        let model: Arc<dyn FluxModel> = Arc::new(Advection::default());
        let ic = InitialCondition::default_step();
        let grid = Grid::new(-0.3, 1.3, 64, 1.0, Boundary::Copy).unwrap();
        let (_, stats) = init_state(&grid, model.as_ref(), &ic).unwrap();
        let p = SchemeParams::new_unchecked(1.9).unwrap();

        let mut strict = checker(model.clone(), stats, 1.0, 1.9, CheckMode::Strict);
        let r = run(&grid, &p, model.as_ref(), &ic, 0.1, &mut [&mut strict]);
        assert!(matches!(r, Err(Error::InvariantViolation(_))));
        assert_eq!(strict.violations.len(), 1);

        let mut lax = checker(model.clone(), stats, 1.0, 1.9, CheckMode::Warn);
        run(&grid, &p, model.as_ref(), &ic, 0.1, &mut [&mut lax]).unwrap();
        assert!(lax.violations.len() > 1);
    }
}
