//! Burgers step datum: rarefaction fan plus shock, against the exact cell averages,
//! with the entropy production located at the shock.

use std::sync::Arc;

use d1q2::diagnostics::l1_error;
use d1q2::harness::{run_case, StudyConfig};
use d1q2::model::{Burgers, FluxModel, InitialCondition};

fn main() -> d1q2::Result<()> {
    let model: Arc<dyn FluxModel> = Arc::new(Burgers);
    let ic = InitialCondition::default_step();
    let t = 0.1;
    let cfg = StudyConfig::new(model.clone(), ic.clone()).with_t_end(t);
    let case = run_case(&cfg, 1.0, 512, &[t])?;
    let grid = case.grid;
    let u = case.final_state.u();

    println!("{:>8} {:>10} {:>10}", "x", "u", "exact");
    for j in (0..grid.ncells).step_by(24) {
        let (a, b) = grid.cell(j);
        let exact = model.exact_cell_average(&ic, t, a, b)?;
        println!("{:8.4} {:10.6} {:10.6}", grid.x_center(j), u[j], exact);
    }

    let err = l1_error(&case.final_state, model.as_ref(), &ic, t)?;
    println!("l1 error: u={:.4e} v={:.4e}", err.u, err.v);

    let report = case.snapshots[0].entropy.as_ref().expect("entropy at t_end");
    let (jmin, mumin) = report
        .mu
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |b, (j, m)| if m < b.1 { (j, m) } else { b });
    let shock = ic.x_right + 0.5 * t;
    println!(
        "most negative mu={mumin:.4e} at x={:.4} (shock at {shock:.4}), mu_l1={:.4e}",
        grid.x_center(jmin),
        report.mu_l1
    );
    println!("max mu={:.3e}", report.mu.iter().copied().fold(f64::NEG_INFINITY, f64::max));
    Ok(())
}
