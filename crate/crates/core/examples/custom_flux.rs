//! A user-supplied flux and datum: cubic flux φ(ξ) = ξ³/3 − ξ/4, smooth bump, checked run.
//!
//! No closed-form equilibrium inverse or entropy flux exists here, so the kinetic entropy
//! falls back to bisection and quadrature.

use std::sync::Arc;

use d1q2::harness::{run_case, StudyConfig};
use d1q2::model::{FluxModel, InitialCondition};

#[derive(Debug)]
struct Cubic;

impl FluxModel for Cubic {
    fn name(&self) -> &str {
        "cubic"
    }

    fn phi(&self, xi: f64) -> f64 {
        xi * xi * xi / 3.0 - 0.25 * xi
    }

    fn dphi(&self, xi: f64) -> f64 {
        xi * xi - 0.25
    }
}

fn main() -> d1q2::Result<()> {
    let bump = InitialCondition::custom(
        "bump",
        0.2,
        0.8,
        Arc::new(|x: f64| {
            let r = (x - 0.5) / 0.3;
            if r.abs() < 1.0 {
                (1.0 - r * r).powi(3)
            } else {
                0.0
            }
        }),
        None,
    )?;
    let model: Arc<dyn FluxModel> = Arc::new(Cubic);
    let cfg = StudyConfig::new(model.clone(), bump)
        .with_lambda(1.0)
        .with_t_end(0.4)
        .with_levels(vec![800]);
    let stats = cfg.validate()?;
    println!(
        "alpha={:.3} beta={:.3} max|phi'|={:.3} tv0={:.4}",
        stats.alpha, stats.beta, stats.max_speed, stats.tv0
    );

    for s in [0.5, 1.0] {
        let case = run_case(&cfg, s, 800, &[])?;
        let u = case.final_state.u();
        let dx = case.grid.dx;
        let mass0 = cfg.ic.integrate(case.grid.xmin, case.grid.xmax);
        let mass: f64 = dx * u.iter().sum::<f64>();
        let (umin, umax) = u
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
        let total_mu: f64 = case.mu_series.iter().map(|&(_, m)| m).sum();
        println!(
            "s={s}: steps={} mass drift={:.2e} u in [{umin:.6}, {umax:.6}] sum mu_l1={total_mu:.4e} violations={}",
            case.steps,
            mass - mass0,
            case.violations.len()
        );
    }
    Ok(())
}
