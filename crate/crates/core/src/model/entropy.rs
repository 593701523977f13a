use std::fmt;
use std::sync::Arc;

use crate::error::{Branch, Error, Result};
use crate::model::flux::{equilibrium, invert_equilibrium, FluxModel};
use crate::quadrature::composite_gauss_legendre5;

/// Entropy / entropy-flux pair `(η, q)` with `q' = η' φ'`.
pub trait EntropyPair: Send + Sync + fmt::Debug {
    fn eta(&self, xi: f64) -> f64;
    fn deta(&self, xi: f64) -> f64;
    fn q(&self, xi: f64) -> f64;
    fn model(&self) -> &dyn FluxModel;
}

/// `η(ξ) = ξ²/2`, with `q(ξ) = ∫₀^ξ s φ'(s) ds`.
#[derive(Debug, Clone)]
pub struct QuadraticEntropy {
    model: Arc<dyn FluxModel>,
}

impl QuadraticEntropy {
    pub fn new(model: Arc<dyn FluxModel>) -> Self {
        Self { model }
    }
}

impl EntropyPair for QuadraticEntropy {
    fn eta(&self, xi: f64) -> f64 {
        0.5 * xi * xi
    }

    fn deta(&self, xi: f64) -> f64 {
        xi
    }

    fn q(&self, xi: f64) -> f64 {
        match self.model.quadratic_coefficients() {
            Some([_, c1, c2]) => xi * xi * (0.5 * c1 + 2.0 * c2 * xi / 3.0),
            None => composite_gauss_legendre5(|s| s * self.model.dphi(s), 0.0, xi, 16),
        }
    }

    fn model(&self) -> &dyn FluxModel {
        self.model.as_ref()
    }
}

/// Checks strict convexity of `η` and `q' = η' φ'` on `[alpha, beta]`.
pub fn validate_entropy_pair(pair: &dyn EntropyPair, alpha: f64, beta: f64) -> Result<()> {
    let n = 200;
    let width = beta - alpha;
    if width <= 0.0 {
        return Ok(());
    }
    let h = width / (2 * n) as f64;
    for k in 0..n {
        let mid = alpha + h + 2.0 * h * k as f64;
        let second = pair.eta(mid - h) - 2.0 * pair.eta(mid) + pair.eta(mid + h);
        if !(second > 0.0) {
            return Err(Error::Validation(format!(
                "entropy is not strictly convex near {mid}"
            )));
        }
    }
    let step = 1e-6;
    for k in 0..=n {
        let xi = alpha + width * k as f64 / n as f64;
        let fd = (pair.q(xi + step) - pair.q(xi - step)) / (2.0 * step);
        let expected = pair.deta(xi) * pair.model().dphi(xi);
        if (fd - expected).abs() > 1e-6 * expected.abs().max(1.0) {
            return Err(Error::Validation(format!(
                "entropy flux derivative mismatch at {xi}: {fd} vs {expected}"
            )));
        }
    }
    Ok(())
}

/// Kinetic entropies `e±(f) = ((λη ± q) / 2λ)((h±)⁻¹(f))` on `[h±(α), h±(β)]`.
#[derive(Debug, Clone)]
pub struct KineticEntropy {
    pair: Arc<dyn EntropyPair>,
    lambda: f64,
    bracket: (f64, f64),
}

impl KineticEntropy {
    /// Fails with `NotMonotone` when `lambda` is below `M` on the bracket.
    pub fn new(pair: Arc<dyn EntropyPair>, lambda: f64, alpha: f64, beta: f64) -> Result<Self> {
        let max_speed = pair.model().max_speed(alpha, beta);
        if lambda < max_speed {
            return Err(Error::NotMonotone {
                alpha,
                beta,
                lambda,
                max_speed,
            });
        }
        Ok(Self {
            pair,
            lambda,
            bracket: (alpha, beta),
        })
    }

    pub fn pair(&self) -> &dyn EntropyPair {
        self.pair.as_ref()
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn bracket(&self) -> (f64, f64) {
        self.bracket
    }

    /// `[h±(α), h±(β)]`.
    pub fn domain(&self, branch: Branch) -> (f64, f64) {
        let model = self.pair.model();
        (
            equilibrium(model, self.lambda, branch, self.bracket.0),
            equilibrium(model, self.lambda, branch, self.bracket.1),
        )
    }

    pub fn preimage(&self, branch: Branch, f: f64) -> Result<f64> {
        invert_equilibrium(self.pair.model(), self.lambda, branch, f, self.bracket)
    }

    /// `e±(f)`.
    pub fn value(&self, branch: Branch, f: f64) -> Result<f64> {
        let xi = self.preimage(branch, f)?;
        Ok(self.at_preimage(branch, xi))
    }

    /// `e±(h±(ξ))` without inverting.
    pub fn at_preimage(&self, branch: Branch, xi: f64) -> f64 {
        let l = self.lambda;
        (l * self.pair.eta(xi) + branch.sign() * self.pair.q(xi)) / (2.0 * l)
    }

    /// `e±'(f) = η'((h±)⁻¹(f))`.
    pub fn derivative(&self, branch: Branch, f: f64) -> Result<f64> {
        let xi = self.preimage(branch, f)?;
        Ok(self.pair.deta(xi))
    }
}

/// `e±(f)` for the pair and velocity given.
pub fn kinetic_entropy(
    kinetic: &KineticEntropy,
    branch: Branch,
    f: f64,
) -> Result<f64> {
    kinetic.value(branch, f)
}
