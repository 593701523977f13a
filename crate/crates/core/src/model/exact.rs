//! Exact solutions of the two built-in conservation laws.

use crate::error::{Error, Result};
use crate::model::initial::{IcKind, InitialCondition};

const FOOT_TOLERANCE: f64 = 1e-13;
const FOOT_MAX_ITER: usize = 200;

/// `u⁰(x − a t)`.
pub fn exact_advection(ic: &InitialCondition, speed: f64, t: f64, x: f64) -> f64 {
    ic.eval(x - speed * t)
}

/// Burgers solution for the step datum: rarefaction fan from `x_left`, shock from `x_right`.
///
/// Valid until the fan head catches the shock at `t = 2 (x_right − x_left)`.
pub fn exact_burgers_step(t: f64, x: f64, x_left: f64, x_right: f64) -> Result<f64> {
    check_step_time(t, x_left, x_right)?;
    if t == 0.0 {
        return Ok(crate::model::initial::ic_eval_step(x, x_left, x_right));
    }
    let shock = x_right + 0.5 * t;
    Ok(if x <= x_left {
        0.0
    } else if x <= x_left + t {
        (x - x_left) / t
    } else if x <= shock {
        1.0
    } else {
        0.0
    })
}

fn check_step_time(t: f64, x_left: f64, x_right: f64) -> Result<()> {
    let interaction = 2.0 * (x_right - x_left);
    if !(t >= 0.0 && t < interaction) {
        return Err(Error::Unsupported(format!(
            "step Burgers solution needs 0 <= t < {interaction}, got t={t}"
        )));
    }
    Ok(())
}

/// First time a characteristic crossing occurs, `1 / max(−(u⁰)')`.
pub fn burgers_shock_time(ic: &InitialCondition) -> f64 {
    let c = ic.max_compression();
    if c > 0.0 {
        1.0 / c
    } else {
        f64::INFINITY
    }
}

/// Foot `y` of the characteristic through `(t, x)`: `y + t u⁰(y) = x`.
pub fn characteristic_foot(ic: &InitialCondition, t: f64, x: f64) -> Result<f64> {
    let t_shock = burgers_shock_time(ic);
    if !(t >= 0.0 && t < t_shock) {
        return Err(Error::Unsupported(format!(
            "smooth Burgers solution needs 0 <= t < t_shock={t_shock}, got t={t}"
        )));
    }
    if t == 0.0 {
        return Ok(x);
    }
    let residual = |y: f64| y + t * ic.eval(y) - x;
    let (umin, umax) = characteristic_range(ic);
    let (mut lo, mut hi) = (x - t * umax, x - t * umin);
    let (r_lo, r_hi) = (residual(lo), residual(hi));
    if r_lo.abs() <= FOOT_TOLERANCE {
        return Ok(lo);
    }
    if r_hi.abs() <= FOOT_TOLERANCE {
        return Ok(hi);
    }
    let mut y = 0.5 * (lo + hi);
    for _ in 0..FOOT_MAX_ITER {
        let r = residual(y);
        if r.abs() <= FOOT_TOLERANCE {
            return Ok(y);
        }
        if r < 0.0 {
            lo = y;
        } else {
            hi = y;
        }
        let slope = 1.0 + t * ic.slope(y);
        let newton = y - r / slope;
        y = if slope > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo <= f64::EPSILON * y.abs().max(1.0) {
            return Ok(y);
        }
    }
    Err(Error::NoConvergence {
        what: format!("characteristic foot at t={t}, x={x}"),
        iterations: FOOT_MAX_ITER,
    })
}

fn characteristic_range(ic: &InitialCondition) -> (f64, f64) {
    match ic.kind {
        IcKind::Regular { .. } | IcKind::Step => (0.0, 1.0),
        IcKind::Constant { value } => (value, value),
        IcKind::Custom { .. } => {
            let width = ic.x_right - ic.x_left;
            let (lo, hi) = (ic.x_left - width, ic.x_right + width);
            let n = 4096;
            (0..=n)
                .map(|k| ic.eval(lo + (hi - lo) * k as f64 / n as f64))
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
                    (a.min(v), b.max(v))
                })
        }
    }
}

/// Burgers solution by characteristics, valid before the first shock.
pub fn exact_burgers_smooth(ic: &InitialCondition, t: f64, x: f64) -> Result<f64> {
    let y = characteristic_foot(ic, t, x)?;
    Ok(ic.eval(y))
}

/// Dispatches on the datum: fan plus shock for the step, characteristics otherwise.
pub fn exact_burgers(ic: &InitialCondition, t: f64, x: f64) -> Result<f64> {
    match ic.kind {
        IcKind::Step => exact_burgers_step(t, x, ic.x_left, ic.x_right),
        IcKind::Constant { value } => Ok(value),
        _ => exact_burgers_smooth(ic, t, x),
    }
}

/// Cell mean of the exact Burgers solution over `[a, b]`.
///
/// Before the shock, `∫ u dx = [U⁰(y) + t u⁰(y)²/2]` between the feet of `a` and `b`,
/// where `U⁰` is a primitive of `u⁰`.
pub fn burgers_cell_average(ic: &InitialCondition, t: f64, a: f64, b: f64) -> Result<f64> {
    match ic.kind {
        IcKind::Step => {
            let (xl, xr) = (ic.x_left, ic.x_right);
            check_step_time(t, xl, xr)?;
            if t == 0.0 {
                return Ok(ic.cell_average(a, b));
            }
            let shock = xr + 0.5 * t;
            let overlap = |lo: f64, hi: f64| (a.max(lo), b.min(hi));
            let mut total = 0.0;
            let (l, r) = overlap(xl, xl + t);
            if l < r {
                total += ((r - xl).powi(2) - (l - xl).powi(2)) / (2.0 * t);
            }
            let (l, r) = overlap(xl + t, shock);
            if l < r {
                total += r - l;
            }
            if a >= xl + t && b <= shock {
                return Ok(1.0);
            }
            Ok(total / (b - a))
        }
        IcKind::Constant { value } => Ok(value),
        _ => {
            if t == 0.0 {
                return Ok(ic.cell_average(a, b));
            }
            let ya = characteristic_foot(ic, t, a)?;
            let yb = characteristic_foot(ic, t, b)?;
            let (ua, ub) = (ic.eval(ya), ic.eval(yb));
            let integral = ic.integrate(ya, yb) + 0.5 * t * (ub * ub - ua * ua);
            Ok(integral / (b - a))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::composite_gauss_legendre5;

    #[test]
    fn advection_examples() {
        let step = InitialCondition::default_step();
        let reg = InitialCondition::default_regular();
        assert_eq!(exact_advection(&step, 0.75, 0.0, 0.5), 1.0);
        assert_eq!(exact_advection(&step, 0.75, 0.1, 0.9), 0.0);
        let x = 0.25 + 0.075;
        assert!((exact_advection(&reg, 0.75, 0.1, x) - 0.5).abs() < 1e-14);
        assert_eq!(exact_advection(&reg, 0.75, 0.0, 0.3), reg.eval(0.3));
    }

    #[test]
    fn burgers_step_examples() {
        assert!((exact_burgers_step(0.1, 0.3, 0.25, 0.75).unwrap() - 0.5).abs() < 1e-14);
        assert_eq!(exact_burgers_step(0.1, 0.79, 0.25, 0.75).unwrap(), 1.0);
        assert_eq!(exact_burgers_step(0.1, 0.81, 0.25, 0.75).unwrap(), 0.0);
        assert_eq!(exact_burgers_step(1e-9, 0.5, 0.25, 0.75).unwrap(), 1.0);
        assert_eq!(exact_burgers_step(0.1, 0.2, 0.25, 0.75).unwrap(), 0.0);
        assert!(matches!(
            exact_burgers_step(1.0, 0.5, 0.25, 0.75),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn burgers_smooth_examples() {
        let reg = InitialCondition::default_regular();
        assert_eq!(exact_burgers_smooth(&reg, 0.0, 0.3).unwrap(), reg.eval(0.3));
        // plateau [0.35, 0.65] moves with speed 1
        assert_eq!(exact_burgers_smooth(&reg, 0.1, 0.55).unwrap(), 1.0);
        assert!((burgers_shock_time(&reg) - 2.0 / 15.0).abs() < 1e-15);
        assert!(matches!(
            exact_burgers_smooth(&reg, 0.14, 0.5),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn smooth_solution_satisfies_characteristics() {
        let reg = InitialCondition::default_regular();
        let t = 0.12;
        for k in 0..=400 {
            let x = 0.1 + 0.9 * k as f64 / 400.0;
            let u = exact_burgers_smooth(&reg, t, x).unwrap();
            // u is constant along the characteristic through its foot
            let y = x - t * u;
            assert!((reg.eval(y) - u).abs() < 1e-11, "x={x}");
        }
    }

    #[test]
    fn cell_averages_match_quadrature_of_pointwise() {
        let reg = InitialCondition::default_regular();
        let step = InitialCondition::default_step();
        let t = 0.1;
        for (a, b) in [(0.1, 0.2), (0.28, 0.33), (0.7, 0.8), (0.76, 0.81), (0.0, 1.2)] {
            for ic in [&reg, &step] {
                let q = composite_gauss_legendre5(
                    |x| exact_burgers(ic, t, x).unwrap(),
                    a,
                    b,
                    20_000,
                ) / (b - a);
                let avg = burgers_cell_average(ic, t, a, b).unwrap();
                // a jump inside one panel costs up to a panel width
                let tol = 1e-9 + 2.0 / 20_000.0;
                assert!((q - avg).abs() < tol, "{} [{a},{b}]: {q} vs {avg}", ic.name());
            }
        }
    }

    #[test]
    fn custom_datum_uses_characteristics() {
        use std::sync::Arc;
        let c = InitialCondition::constant(0.4);
        assert_eq!(exact_burgers(&c, 0.5, 0.1).unwrap(), 0.4);
        let lin =
            InitialCondition::custom("ramp", 0.0, 1.0, Arc::new(|x: f64| x.clamp(0.0, 1.0)), None)
                .unwrap();
        // u = x / (1 + t) inside the expansion
        let u = exact_burgers(&lin, 0.5, 0.6).unwrap();
        assert!((u - 0.4).abs() < 1e-10, "{u}");
    }
}
