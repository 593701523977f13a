use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quadrature::composite_gauss_legendre5;

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

pub const DEFAULT_X_LEFT: f64 = 0.25;
pub const DEFAULT_X_RIGHT: f64 = 0.75;
pub const DEFAULT_DELTA: f64 = 0.1;

/// Shape of an initial datum.
#[derive(Clone)]
pub enum IcKind {
    /// C¹ bump: cubic ramps of half-width `delta` around `x_left` and `x_right`.
    Regular { delta: f64 },
    /// Indicator of `[x_left, x_right]`.
    Step,
    /// `u⁰ ≡ value`.
    Constant { value: f64 },
    /// User-supplied profile.
    Custom {
        name: String,
        eval: ScalarFn,
        /// Primitive of `eval`, when known in closed form.
        antiderivative: Option<ScalarFn>,
    },
}

impl fmt::Debug for IcKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IcKind::Regular { delta } => f.debug_struct("Regular").field("delta", delta).finish(),
            IcKind::Step => f.write_str("Step"),
            IcKind::Constant { value } => f.debug_struct("Constant").field("value", value).finish(),
            IcKind::Custom {
                name,
                antiderivative,
                ..
            } => f
                .debug_struct("Custom")
                .field("name", name)
                .field("antiderivative", &antiderivative.is_some())
                .finish_non_exhaustive(),
        }
    }
}

/// Initial datum `u⁰` of the Cauchy problem.
#[derive(Debug, Clone)]
pub struct InitialCondition {
    pub kind: IcKind,
    pub x_left: f64,
    pub x_right: f64,
}

/// A polynomial piece of a built-in profile, used for exact integration.
#[derive(Debug, Clone, Copy)]
enum Piece {
    Const(f64),
    /// `1/2 + sign * r (3δ² − r²) / (4δ³)` with `r = x − center`.
    Ramp { center: f64, delta: f64, sign: f64 },
}

impl Piece {
    #[cfg(test)]
    fn eval(self, x: f64) -> f64 {
        match self {
            Piece::Const(c) => c,
            Piece::Ramp {
                center,
                delta,
                sign,
            } => {
                let r = x - center;
                0.5 + sign * r * (3.0 * delta * delta - r * r) / (4.0 * delta.powi(3))
            }
        }
    }

    fn slope(self, x: f64) -> f64 {
        match self {
            Piece::Const(_) => 0.0,
            Piece::Ramp {
                center,
                delta,
                sign,
            } => {
                let r = x - center;
                sign * 3.0 * (delta * delta - r * r) / (4.0 * delta.powi(3))
            }
        }
    }

    /// Integral over `[a, b]`, both inside the piece.
    fn integral(self, a: f64, b: f64) -> f64 {
        match self {
            Piece::Const(c) => c * (b - a),
            Piece::Ramp {
                center,
                delta,
                sign,
            } => {
                let prim = |x: f64| {
                    let r = x - center;
                    0.5 * r
                        + sign * (1.5 * delta * delta * r * r - 0.25 * r.powi(4))
                            / (4.0 * delta.powi(3))
                };
                prim(b) - prim(a)
            }
        }
    }
}

impl InitialCondition {
    pub fn regular(x_left: f64, x_right: f64, delta: f64) -> Result<Self> {
        if !(x_left < x_right) {
            return Err(Error::InvalidInitialCondition(format!(
                "x_left={x_left} must be < x_right={x_right}"
            )));
        }
        if !(delta > 0.0 && delta < 0.5 * (x_right - x_left)) {
            return Err(Error::InvalidInitialCondition(format!(
                "delta={delta} must lie in (0, (x_right - x_left)/2)"
            )));
        }
        Ok(Self {
            kind: IcKind::Regular { delta },
            x_left,
            x_right,
        })
    }

    pub fn step(x_left: f64, x_right: f64) -> Result<Self> {
        if !(x_left < x_right) {
            return Err(Error::InvalidInitialCondition(format!(
                "x_left={x_left} must be < x_right={x_right}"
            )));
        }
        Ok(Self {
            kind: IcKind::Step,
            x_left,
            x_right,
        })
    }

    /// The regular profile with default parameters.
    pub fn default_regular() -> Self {
        Self::regular(DEFAULT_X_LEFT, DEFAULT_X_RIGHT, DEFAULT_DELTA).expect("valid defaults")
    }

    /// The step profile with default parameters.
    pub fn default_step() -> Self {
        Self::step(DEFAULT_X_LEFT, DEFAULT_X_RIGHT).expect("valid defaults")
    }

    /// Arbitrary profile; `x_left..x_right` is the region where it varies.
    pub fn custom(
        name: impl Into<String>,
        x_left: f64,
        x_right: f64,
        eval: ScalarFn,
        antiderivative: Option<ScalarFn>,
    ) -> Result<Self> {
        if !(x_left < x_right) {
            return Err(Error::InvalidInitialCondition(format!(
                "x_left={x_left} must be < x_right={x_right}"
            )));
        }
        Ok(Self {
            kind: IcKind::Custom {
                name: name.into(),
                eval,
                antiderivative,
            },
            x_left,
            x_right,
        })
    }

    /// Constant datum `u⁰ ≡ value`.
    pub fn constant(value: f64) -> Self {
        Self {
            kind: IcKind::Constant { value },
            x_left: DEFAULT_X_LEFT,
            x_right: DEFAULT_X_RIGHT,
        }
    }

    pub fn name(&self) -> &str {
        match &self.kind {
            IcKind::Regular { .. } => "regular",
            IcKind::Step => "step",
            IcKind::Constant { .. } => "constant",
            IcKind::Custom { name, .. } => name,
        }
    }

    pub fn delta(&self) -> Option<f64> {
        match self.kind {
            IcKind::Regular { delta } => Some(delta),
            _ => None,
        }
    }

    /// Breakpoints and pieces of a built-in profile. `None` for custom kinds.
    fn pieces(&self) -> Option<Vec<(f64, f64, Piece)>> {
        let (xl, xr) = (self.x_left, self.x_right);
        match self.kind {
            IcKind::Regular { delta } => Some(vec![
                (f64::NEG_INFINITY, xl - delta, Piece::Const(0.0)),
                (
                    xl - delta,
                    xl + delta,
                    Piece::Ramp {
                        center: xl,
                        delta,
                        sign: 1.0,
                    },
                ),
                (xl + delta, xr - delta, Piece::Const(1.0)),
                (
                    xr - delta,
                    xr + delta,
                    Piece::Ramp {
                        center: xr,
                        delta,
                        sign: -1.0,
                    },
                ),
                (xr + delta, f64::INFINITY, Piece::Const(0.0)),
            ]),
            IcKind::Step => Some(vec![
                (f64::NEG_INFINITY, xl, Piece::Const(0.0)),
                (xl, xr, Piece::Const(1.0)),
                (xr, f64::INFINITY, Piece::Const(0.0)),
            ]),
            IcKind::Constant { value } => {
                Some(vec![(f64::NEG_INFINITY, f64::INFINITY, Piece::Const(value))])
            }
            IcKind::Custom { .. } => None,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match &self.kind {
            IcKind::Regular { delta } => ic_eval_regular(x, self.x_left, self.x_right, *delta),
            IcKind::Step => ic_eval_step(x, self.x_left, self.x_right),
            IcKind::Constant { value } => *value,
            IcKind::Custom { eval, .. } => eval(x),
        }
    }

    /// `(u⁰)'(x)`; finite differences for custom kinds.
    pub fn slope(&self, x: f64) -> f64 {
        match self.pieces() {
            Some(pieces) => pieces
                .iter()
                .find(|(lo, hi, _)| x >= *lo && x <= *hi)
                .map(|(_, _, p)| p.slope(x))
                .unwrap_or(0.0),
            None => {
                let h = 1e-6 * x.abs().max(1.0);
                (self.eval(x + h) - self.eval(x - h)) / (2.0 * h)
            }
        }
    }

    /// `∫ₐᵇ u⁰`.
    pub fn integrate(&self, a: f64, b: f64) -> f64 {
        if let Some(pieces) = self.pieces() {
            return pieces
                .iter()
                .filter_map(|&(lo, hi, piece)| {
                    let (l, r) = (a.max(lo), b.min(hi));
                    (l < r).then(|| piece.integral(l, r))
                })
                .sum();
        }
        match &self.kind {
            IcKind::Custom {
                antiderivative: Some(prim),
                ..
            } => prim(b) - prim(a),
            IcKind::Custom { eval, .. } => {
                // one panel per cell-sized piece of the varying region
                let panel = (self.x_right - self.x_left) / 256.0;
                let panels = ((b - a) / panel).ceil().max(1.0) as usize;
                composite_gauss_legendre5(|x| eval(x), a, b, panels)
            }
            _ => unreachable!("built-in kinds have pieces"),
        }
    }

    /// Exact mean of `u⁰` over `[a, b]`.
    pub fn cell_average(&self, a: f64, b: f64) -> f64 {
        debug_assert!(b > a);
        if let Some(pieces) = self.pieces() {
            // a cell inside one constant piece returns that constant exactly
            if let Some((_, _, Piece::Const(c))) =
                pieces.iter().find(|(lo, hi, _)| a >= *lo && b <= *hi)
            {
                return *c;
            }
        }
        self.integrate(a, b) / (b - a)
    }

    /// Largest compression rate `max(−(u⁰)')`, zero when the datum never decreases.
    pub fn max_compression(&self) -> f64 {
        match self.kind {
            IcKind::Regular { delta } => 3.0 / (4.0 * delta),
            IcKind::Step => f64::INFINITY,
            IcKind::Constant { .. } => 0.0,
            IcKind::Custom { .. } => {
                let width = self.x_right - self.x_left;
                let (lo, hi) = (self.x_left - width, self.x_right + width);
                let n = 20_000;
                (0..=n)
                    .map(|k| -self.slope(lo + (hi - lo) * k as f64 / n as f64))
                    .fold(0.0_f64, f64::max)
            }
        }
    }
}

/// Regular datum: 0, rising cubic ramp, plateau of 1 on `[x_left+δ, x_right−δ]`, falling ramp, 0.
pub fn ic_eval_regular(x: f64, x_left: f64, x_right: f64, delta: f64) -> f64 {
    let ramp = |r: f64| r * (3.0 * delta * delta - r * r) / (4.0 * delta.powi(3));
    if x <= x_left - delta {
        0.0
    } else if x <= x_left + delta {
        0.5 + ramp(x - x_left)
    } else if x <= x_right - delta {
        1.0
    } else if x <= x_right + delta {
        0.5 - ramp(x - x_right)
    } else {
        0.0
    }
}

/// Indicator of the closed interval `[x_left, x_right]`.
pub fn ic_eval_step(x: f64, x_left: f64, x_right: f64) -> f64 {
    if (x_left..=x_right).contains(&x) {
        1.0
    } else {
        0.0
    }
}

/// `(1/Δx) ∫ u⁰` over `[a, b]`.
pub fn ic_cell_average(ic: &InitialCondition, a: f64, b: f64) -> f64 {
    ic.cell_average(a, b)
}
