use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Least-squares slope of `log(error)` against `log(Δx)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateFit {
    pub p: f64,
    /// Coefficient of determination of the log-log fit.
    pub r2: f64,
}

/// Fits `error ≈ C Δx^p` through every point; returns `(p, r²)`.
pub fn fit_rate(points: &[(f64, f64)]) -> Result<(f64, f64)> {
    if points.len() < 2 {
        return Err(Error::Degenerate(format!(
            "need at least 2 points, got {}",
            points.len()
        )));
    }
    if let Some(&(dx, e)) = points
        .iter()
        .find(|(dx, e)| !(dx.is_finite() && e.is_finite() && *dx > 0.0 && *e > 0.0))
    {
        return Err(Error::Degenerate(format!(
            "point (dx={dx}, error={e}) is not positive and finite"
        )));
    }
    let n = points.len() as f64;
    let (xs, ys): (Vec<f64>, Vec<f64>) = points.iter().map(|(dx, e)| (dx.ln(), e.ln())).unzip();
    let xm = xs.iter().sum::<f64>() / n;
    let ym = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - xm).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xm) * (y - ym)).sum();
    if sxx == 0.0 {
        return Err(Error::Degenerate("all dx are equal".into()));
    }
    let p = sxy / sxx;
    let ss_tot: f64 = ys.iter().map(|y| (y - ym).powi(2)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - ym - p * (x - xm)).powi(2))
        .sum();
    let r2 = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Ok((p, r2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn power_law(c: f64, p: f64) -> Vec<(f64, f64)> {
        (0..5)
            .map(|k| {
                let dx = 0.1 / 2f64.powi(k);
                (dx, c * dx.powf(p))
            })
            .collect()
    }

    #[test]
    fn exact_power_laws() {
        let (p, r2) = fit_rate(&power_law(3.0, 1.0)).unwrap();
        assert!((p - 1.0).abs() < 1e-12 && (r2 - 1.0).abs() < 1e-12);
        let (p, r2) = fit_rate(&power_law(0.7, 0.5)).unwrap();
        assert!((p - 0.5).abs() < 1e-12 && (r2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_points_by_hand() {
        let (p, r2) = fit_rate(&[(0.1, 1e-2), (0.05, 5e-3)]).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
        assert_eq!(r2, 1.0);
    }

    #[test]
    fn noisy_fit_has_lower_r2() {
        let mut pts = power_law(1.0, 1.0);
        pts[2].1 *= 1.5;
        let (_, r2) = fit_rate(&pts).unwrap();
        assert!(r2 < 0.99);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(fit_rate(&[(0.1, 1.0)]), Err(Error::Degenerate(_))));
        assert!(matches!(fit_rate(&[(0.1, 1.0), (0.05, 0.0)]), Err(Error::Degenerate(_))));
        assert!(matches!(fit_rate(&[(0.1, 1.0), (0.05, f64::NAN)]), Err(Error::Degenerate(_))));
        assert!(matches!(fit_rate(&[(0.1, 1.0), (0.1, 2.0)]), Err(Error::Degenerate(_))));
    }
}
