use std::fmt;

use crate::error::{Branch, Error, Result};
use crate::model::exact;
use crate::model::initial::InitialCondition;
use crate::quadrature::gauss_legendre5;

pub const ADVECTION_SPEED: f64 = 0.75;

/// Out-of-range equilibrium values within this distance are clamped.
pub const BRACKET_TOLERANCE: f64 = 1e-12;

/// Residual target of [`invert_equilibrium`], relative to `max(1, |f|)`.
pub const INVERSION_TOLERANCE: f64 = 1e-14;

/// Flux `φ` of a scalar conservation law `u_t + φ(u)_x = 0`.
pub trait FluxModel: Send + Sync + fmt::Debug {
    fn name(&self) -> &str;

    fn phi(&self, xi: f64) -> f64;

    fn dphi(&self, xi: f64) -> f64;

    /// `[c0, c1, c2]` when `φ(ξ) = c0 + c1 ξ + c2 ξ²`.
    fn quadratic_coefficients(&self) -> Option<[f64; 3]> {
        None
    }

    /// `M = max |φ'|` on `[alpha, beta]`.
    fn max_speed(&self, alpha: f64, beta: f64) -> f64 {
        if self.quadratic_coefficients().is_some() {
            // φ' is affine, so the maximum sits at an endpoint
            return self.dphi(alpha).abs().max(self.dphi(beta).abs());
        }
        let n = 1024;
        (0..=n)
            .map(|k| self.dphi(alpha + (beta - alpha) * k as f64 / n as f64).abs())
            .fold(0.0, f64::max)
    }

    /// Pointwise exact solution `u(t, x)` for the datum `ic`.
    fn exact(&self, ic: &InitialCondition, t: f64, x: f64) -> Result<f64> {
        let _ = (ic, t, x);
        Err(Error::Unsupported(format!(
            "model '{}' has no exact solution",
            self.name()
        )))
    }

    /// Mean of the exact solution over `[a, b]` at time `t`.
    fn exact_cell_average(&self, ic: &InitialCondition, t: f64, a: f64, b: f64) -> Result<f64> {
        // surface the first failure instead of integrating a NaN
        self.exact(ic, t, 0.5 * (a + b))?;
        let mut failure = None;
        let integral = gauss_legendre5(
            |x| match self.exact(ic, t, x) {
                Ok(v) => v,
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            },
            a,
            b,
        );
        match failure {
            Some(e) => Err(e),
            None => Ok(integral / (b - a)),
        }
    }
}

/// Linear transport `φ(ξ) = a ξ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Advection {
    pub speed: f64,
}

impl Default for Advection {
    fn default() -> Self {
        Self {
            speed: ADVECTION_SPEED,
        }
    }
}

impl FluxModel for Advection {
    fn name(&self) -> &str {
        "advection"
    }

    fn phi(&self, xi: f64) -> f64 {
        self.speed * xi
    }

    fn dphi(&self, _xi: f64) -> f64 {
        self.speed
    }

    fn quadratic_coefficients(&self) -> Option<[f64; 3]> {
        Some([0.0, self.speed, 0.0])
    }

    fn exact(&self, ic: &InitialCondition, t: f64, x: f64) -> Result<f64> {
        Ok(exact::exact_advection(ic, self.speed, t, x))
    }

    fn exact_cell_average(&self, ic: &InitialCondition, t: f64, a: f64, b: f64) -> Result<f64> {
        let shift = self.speed * t;
        Ok(ic.cell_average(a - shift, b - shift))
    }
}

/// Inviscid Burgers flux `φ(ξ) = ξ²/2`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Burgers;

impl FluxModel for Burgers {
    fn name(&self) -> &str {
        "burgers"
    }

    fn phi(&self, xi: f64) -> f64 {
        0.5 * xi * xi
    }

    fn dphi(&self, xi: f64) -> f64 {
        xi
    }

    fn quadratic_coefficients(&self) -> Option<[f64; 3]> {
        Some([0.0, 0.0, 0.5])
    }

    fn exact(&self, ic: &InitialCondition, t: f64, x: f64) -> Result<f64> {
        exact::exact_burgers(ic, t, x)
    }

    fn exact_cell_average(&self, ic: &InitialCondition, t: f64, a: f64, b: f64) -> Result<f64> {
        exact::burgers_cell_average(ic, t, a, b)
    }
}

/// Looks up a built-in model by name.
pub fn builtin_model(name: &str, advection_speed: f64) -> Option<Box<dyn FluxModel>> {
    match name {
        "advection" => Some(Box::new(Advection {
            speed: advection_speed,
        })),
        "burgers" => Some(Box::new(Burgers)),
        _ => None,
    }
}

/// `h±(ξ) = (λξ ± φ(ξ)) / 2λ`, the equilibrium value of `f±`.
pub fn equilibrium(model: &dyn FluxModel, lambda: f64, branch: Branch, xi: f64) -> f64 {
    0.5 * xi + branch.sign() * model.phi(xi) / (2.0 * lambda)
}

/// Returns `(h−(ξ), h+(ξ))`.
pub fn equilibrium_split(model: &dyn FluxModel, lambda: f64, xi: f64) -> (f64, f64) {
    (
        equilibrium(model, lambda, Branch::Minus, xi),
        equilibrium(model, lambda, Branch::Plus, xi),
    )
}

/// Solves `h±(ξ) = f` for `ξ` in `[alpha, beta]`.
///
/// Requires `lambda >= M` on the bracket so that `h±` is non-decreasing there.
/// Degree-two fluxes use the quadratic formula; anything else bisects.
pub fn invert_equilibrium(
    model: &dyn FluxModel,
    lambda: f64,
    branch: Branch,
    f: f64,
    bracket: (f64, f64),
) -> Result<f64> {
    let (alpha, beta) = bracket;
    let max_speed = model.max_speed(alpha, beta);
    if lambda < max_speed {
        return Err(Error::NotMonotone {
            alpha,
            beta,
            lambda,
            max_speed,
        });
    }
    let h = |xi: f64| equilibrium(model, lambda, branch, xi);
    let (lo, hi) = (h(alpha), h(beta));
    if f < lo - BRACKET_TOLERANCE || f > hi + BRACKET_TOLERANCE || f.is_nan() {
        return Err(Error::OutOfBracket {
            branch,
            value: f,
            lo,
            hi,
        });
    }
    let f = f.clamp(lo, hi);
    if f == lo {
        return Ok(alpha);
    }
    if f == hi {
        return Ok(beta);
    }
    let target = INVERSION_TOLERANCE * f.abs().max(1.0);
    if let Some(coeffs) = model.quadratic_coefficients() {
        if let Some(xi) = quadratic_root(coeffs, lambda, branch, f, alpha, beta) {
            if (h(xi) - f).abs() <= target {
                return Ok(xi);
            }
        }
    }
    Ok(bisect(h, f, alpha, beta, target))
}

/// Root of `±c2 ξ² + (λ ± c1) ξ ± c0 − 2λf = 0` inside `[alpha, beta]`.
fn quadratic_root(
    [c0, c1, c2]: [f64; 3],
    lambda: f64,
    branch: Branch,
    f: f64,
    alpha: f64,
    beta: f64,
) -> Option<f64> {
    let sign = branch.sign();
    let a = sign * c2;
    let b = lambda + sign * c1;
    let c = sign * c0 - 2.0 * lambda * f;
    let slack = 1e-9 * (beta - alpha).abs().max(1.0);
    let pick = |roots: &[f64]| {
        roots
            .iter()
            .copied()
            .filter(|r| r.is_finite() && *r >= alpha - slack && *r <= beta + slack)
            .min_by(|x, y| {
                let dx = (alpha - x).max(x - beta).max(0.0);
                let dy = (alpha - y).max(y - beta).max(0.0);
                dx.total_cmp(&dy)
            })
            .map(|r| r.clamp(alpha, beta))
    };
    if a == 0.0 {
        if b == 0.0 {
            // h± is constant: every point of the bracket is a preimage
            return Some(alpha);
        }
        return pick(&[-c / b]);
    }
    let disc = (b * b - 4.0 * a * c).max(0.0);
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    if q == 0.0 {
        return pick(&[0.0]);
    }
    pick(&[q / a, c / q])
}

fn bisect<H: Fn(f64) -> f64>(h: H, f: f64, mut lo: f64, mut hi: f64, target: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let r = h(mid) - f;
        if r.abs() <= target {
            return mid;
        }
        if r < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if (h(lo) - f).abs() <= (h(hi) - f).abs() {
        lo
    } else {
        hi
    }
}

/// Largest relative mismatch between `φ'` and a central difference of `φ` on `[alpha, beta]`.
pub fn flux_derivative_defect(model: &dyn FluxModel, alpha: f64, beta: f64) -> f64 {
    let step = 1e-6;
    let n = 256;
    (0..=n)
        .map(|k| {
            let xi = alpha + (beta - alpha) * k as f64 / n as f64;
            let fd = (model.phi(xi + step) - model.phi(xi - step)) / (2.0 * step);
            (fd - model.dphi(xi)).abs() / model.dphi(xi).abs().max(1.0)
        })
        .fold(0.0, f64::max)
}

/// Checks that `dphi` is the derivative of `phi` on the working interval.
pub fn validate_flux(model: &dyn FluxModel, alpha: f64, beta: f64) -> Result<()> {
    let defect = flux_derivative_defect(model, alpha, beta);
    if defect > 1e-6 {
        return Err(Error::Validation(format!(
            "flux '{}': dphi disagrees with finite differences of phi (relative defect {defect:e})",
            model.name()
        )));
    }
    Ok(())
}
