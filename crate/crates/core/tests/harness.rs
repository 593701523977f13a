use std::sync::Arc;

use d1q2::harness::{convergence_study, sweep_entropy, StudyConfig};
use d1q2::model::{Advection, Burgers, FluxModel, InitialCondition};

fn experiments() -> Vec<(Arc<dyn FluxModel>, InitialCondition)> {
    let models: [Arc<dyn FluxModel>; 2] = [Arc::new(Advection::default()), Arc::new(Burgers)];
    models
        .into_iter()
        .flat_map(|m| {
            [InitialCondition::default_regular(), InitialCondition::default_step()]
                .map(|ic| (m.clone(), ic))
        })
        .collect()
}

#[test]
fn errors_decrease_strictly_under_refinement() {
    for (model, ic) in experiments() {
        let cfg = StudyConfig::new(model.clone(), ic.clone());
        let st = convergence_study(&cfg, true).unwrap();
        let errs: Vec<f64> = st[0].levels.iter().map(|l| l.error_u).collect();
        assert!(errs.windows(2).all(|w| w[1] < w[0]), "{}/{}: {errs:?}", model.name(), ic.name());
        assert_eq!(st[0].fit_window, vec![256, 512, 1024, 2048, 4096]);
    }
}

#[test]
fn smaller_s_is_less_accurate() {
    for (model, ic) in experiments() {
        let cfg = StudyConfig::new(model.clone(), ic.clone())
            .with_s([0.5, 1.0])
            .with_levels([256, 512]);
        let st = convergence_study(&cfg, true).unwrap();
        for (a, b) in st[0].levels.iter().zip(&st[1].levels) {
            assert!(a.error_u >= b.error_u, "{}/{} J={}", model.name(), ic.name(), a.ncells);
        }
    }
}

#[test]
fn studies_are_bit_reproducible() {
    let cfg = StudyConfig::new(Arc::new(Burgers), InitialCondition::default_regular())
        .with_s([0.6, 0.9])
        .with_levels([128, 256]);
    let a = serde_json::to_string(&strip(convergence_study(&cfg, true).unwrap())).unwrap();
    let b = serde_json::to_string(&strip(convergence_study(&cfg, true).unwrap())).unwrap();
    assert_eq!(a, b);
}

fn strip(mut st: Vec<d1q2::harness::ConvergenceStudy>) -> Vec<d1q2::harness::ConvergenceStudy> {
    for s in &mut st {
        for l in &mut s.levels {
            l.runtime = 0.0;
        }
    }
    st
}

#[test]
fn entropy_sweep_series_covers_every_step() {
    let cfg = StudyConfig::new(Arc::new(Burgers), InitialCondition::default_step())
        .with_s([0.5, 1.0])
        .with_levels([64, 128]);
    let sweeps = sweep_entropy(&cfg, &[0.05, 0.1], true).unwrap();
    let keys: Vec<(f64, usize)> = sweeps.iter().map(|s| (s.s, s.ncells)).collect();
    assert_eq!(keys, vec![(0.5, 64), (0.5, 128), (1.0, 64), (1.0, 128)]);
    for sw in &sweeps {
        let steps = (0.1 / sw.grid.dt).round() as usize;
        assert_eq!(sw.series.len(), steps);
        assert!(sw.series.iter().all(|&(_, m)| m > 0.0));
        assert_eq!(sw.snapshots.len(), 2);
        assert_eq!(sw.violations, 0);
    }
}
