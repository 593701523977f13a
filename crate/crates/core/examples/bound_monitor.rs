//! Per-step bounded quantities for advection of the regular datum at λ = 1.25.

use std::sync::Arc;

use d1q2::diagnostics::{CheckMode, InvariantChecker, Tolerances};
use d1q2::model::{Advection, FluxModel, InitStats, InitialCondition, KineticEntropy, QuadraticEntropy};
use d1q2::scheme::{run, Boundary, Grid, SchemeParams};

fn main() -> d1q2::Result<()> {
    let model: Arc<dyn FluxModel> = Arc::new(Advection::default());
    let ic = InitialCondition::default_regular();
    let (lambda, s) = (1.25, 0.6);
    let grid = Grid::new(-0.3, 1.3, 400, lambda, Boundary::Copy)?;
    let stats = InitStats::compute(model.as_ref(), &ic, (grid.xmin, grid.xmax));
    let kinetic = KineticEntropy::new(
        Arc::new(QuadraticEntropy::new(model.clone())),
        lambda,
        stats.alpha,
        stats.beta,
    )?;
    let mut checker = InvariantChecker::new(
        model.clone(),
        kinetic,
        stats,
        s,
        Tolerances::default(),
        CheckMode::Strict,
    )
    .keep_reports(true);

    run(&grid, &SchemeParams::new(s)?, model.as_ref(), &ic, 0.16, &mut [&mut checker])?;

    println!("tv0={} gap bound={:.4e}", stats.tv0, checker.reports[0].gap_bound);
    println!(
        "{:>4} {:>9} {:>9} {:>9} {:>9} {:>11} {:>9} {:>11}",
        "n", "umin", "umax", "TV(f)", "TV(u)", "gap", "dt-TV(u)", "mu_l1"
    );
    for r in checker.reports.iter().step_by(10) {
        let mu = checker
            .mu_series
            .iter()
            .find(|&&(n, _)| n == r.step)
            .map_or(0.0, |&(_, m)| m);
        println!(
            "{:4} {:9.6} {:9.6} {:9.6} {:9.6} {:11.4e} {:9.6} {:11.4e}",
            r.step, r.umin, r.umax, r.tv_f_sum, r.tv_u, r.gap_l1, r.time_var_u, mu
        );
    }
    println!("violations: {}", checker.violations.len());
    Ok(())
}
