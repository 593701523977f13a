//! Conservation-law models: fluxes, equilibria, entropies, initial data and exact solutions.

pub mod entropy;
pub mod exact;
pub mod flux;
pub mod initial;

pub use entropy::{kinetic_entropy, validate_entropy_pair, EntropyPair, KineticEntropy, QuadraticEntropy};
pub use exact::{
    burgers_shock_time, exact_advection, exact_burgers, exact_burgers_smooth, exact_burgers_step,
};
pub use flux::{
    builtin_model, equilibrium, equilibrium_split, invert_equilibrium, validate_flux, Advection,
    Burgers, FluxModel,
};
pub use initial::{ic_cell_average, ic_eval_regular, ic_eval_step, IcKind, InitialCondition};

use serde::{Deserialize, Serialize};

/// Bounds of the initial datum that every discrete estimate is stated in terms of.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InitStats {
    /// Essential infimum of `u⁰`.
    pub alpha: f64,
    /// Essential supremum of `u⁰`.
    pub beta: f64,
    /// `max |φ'|` on `[alpha, beta]`.
    pub max_speed: f64,
    /// Total variation of `u⁰`.
    pub tv0: f64,
}

impl InitStats {
    /// Exact for the built-in data; custom data are sampled over `domain`.
    pub fn compute(model: &dyn FluxModel, ic: &InitialCondition, domain: (f64, f64)) -> Self {
        let (alpha, beta, tv0) = match ic.kind {
            IcKind::Regular { .. } | IcKind::Step => (0.0, 1.0, 2.0),
            IcKind::Constant { value } => (value, value, 0.0),
            IcKind::Custom { .. } => {
                let n = 20_000;
                let (lo, hi) = domain;
                let samples: Vec<f64> = (0..=n)
                    .map(|k| ic.eval(lo + (hi - lo) * k as f64 / n as f64))
                    .collect();
                let alpha = samples.iter().copied().fold(f64::INFINITY, f64::min);
                let beta = samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let tv0 = samples.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
                (alpha, beta, tv0)
            }
        };
        Self {
            alpha,
            beta,
            max_speed: model.max_speed(alpha, beta),
            tv0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_stats() {
        let s = InitStats::compute(&Advection::default(), &InitialCondition::default_step(), (-0.3, 1.3));
        assert_eq!((s.alpha, s.beta, s.max_speed, s.tv0), (0.0, 1.0, 0.75, 2.0));
        let s = InitStats::compute(&Burgers, &InitialCondition::default_regular(), (-0.3, 1.3));
        assert_eq!((s.alpha, s.beta, s.max_speed, s.tv0), (0.0, 1.0, 1.0, 2.0));
    }

    #[test]
    fn constant_stats() {
        let s = InitStats::compute(&Burgers, &InitialCondition::constant(0.4), (0.0, 1.0));
        assert_eq!((s.alpha, s.beta, s.tv0), (0.4, 0.4, 0.0));
        assert!((s.max_speed - 0.4).abs() < 1e-15);
    }
}
