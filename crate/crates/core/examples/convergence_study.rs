//! ℓ¹ convergence rates of the four built-in experiments at t = 0.1.
//!
//! cargo run --release --example convergence_study [-- s1 s2 ...]

use std::sync::Arc;

use d1q2::harness::{convergence_study, StudyConfig};
use d1q2::model::{Advection, Burgers, FluxModel, InitialCondition};

fn main() -> d1q2::Result<()> {
    let s_values: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("s values must be numbers"))
        .collect();
    let s_values = if s_values.is_empty() { vec![0.5, 1.0] } else { s_values };

    let models: [Arc<dyn FluxModel>; 2] = [Arc::new(Advection::default()), Arc::new(Burgers)];
    for model in models {
        for ic in [InitialCondition::default_regular(), InitialCondition::default_step()] {
            let cfg = StudyConfig::new(model.clone(), ic.clone()).with_s(s_values.clone());
            println!("{} / {}", model.name(), ic.name());
            for study in convergence_study(&cfg, true)? {
                for level in &study.levels {
                    println!(
                        "  s={:.2} J={:5} dx={:.3e} error_u={:.4e} error_v={:.4e}",
                        study.s, level.ncells, level.dx, level.error_u, level.error_v
                    );
                }
                let (u, v) = (study.rate_u.unwrap(), study.rate_v.unwrap());
                println!(
                    "  s={:.2} p_u={:.3} (r2={:.4}) p_v={:.3} (r2={:.4})",
                    study.s, u.p, u.r2, v.p, v.r2
                );
            }
        }
    }
    Ok(())
}
