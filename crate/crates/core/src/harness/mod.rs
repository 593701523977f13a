//! Refinement studies and parameter sweeps over independent `(s, level)` runs.

pub mod fit;
pub mod study;

pub use fit::{fit_rate, RateFit};
pub use study::{
    convergence_study, run_case, sweep_entropy, CaseResult, ConvergenceStudy, EntropySweep,
    LevelRecord, Snapshot, StudyConfig, DEFAULT_DOMAIN, DEFAULT_LEVELS,
};
