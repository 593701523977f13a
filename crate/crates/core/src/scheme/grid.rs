use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::InitStats;

/// How missing neighbours of the first and last cell are filled.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Periodic,
    /// Ghost value equals the nearest interior value.
    #[default]
    Copy,
}

impl std::str::FromStr for Boundary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "periodic" => Ok(Boundary::Periodic),
            "copy" => Ok(Boundary::Copy),
            other => Err(Error::Validation(format!(
                "unknown boundary '{other}' (expected 'copy' or 'periodic')"
            ))),
        }
    }
}

/// Uniform lattice `x_j = xmin + j Δx` with `Δt = Δx / λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub xmin: f64,
    pub xmax: f64,
    pub ncells: usize,
    pub dx: f64,
    pub lambda: f64,
    pub dt: f64,
    pub boundary: Boundary,
}

impl Grid {
    pub fn new(xmin: f64, xmax: f64, ncells: usize, lambda: f64, boundary: Boundary) -> Result<Self> {
        if ncells == 0 {
            return Err(Error::InvalidGrid("ncells must be positive".into()));
        }
        if !(xmin < xmax) || !xmin.is_finite() || !xmax.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "domain [{xmin}, {xmax}] is empty or not finite"
            )));
        }
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::InvalidGrid(format!("lambda={lambda} must be positive")));
        }
        let dx = (xmax - xmin) / ncells as f64;
        Ok(Self {
            xmin,
            xmax,
            ncells,
            dx,
            lambda,
            dt: dx / lambda,
            boundary,
        })
    }

    /// Sub-characteristic condition `λ >= M`.
    pub fn validate(&self, stats: &InitStats) -> Result<()> {
        if self.lambda < stats.max_speed {
            return Err(Error::CflViolation {
                lambda: self.lambda,
                max_speed: stats.max_speed,
            });
        }
        Ok(())
    }

    pub fn x_center(&self, j: usize) -> f64 {
        self.xmin + (j as f64 + 0.5) * self.dx
    }

    /// `[x_j, x_{j+1}]`.
    pub fn cell(&self, j: usize) -> (f64, f64) {
        let lo = self.xmin + j as f64 * self.dx;
        let hi = if j + 1 == self.ncells {
            self.xmax
        } else {
            self.xmin + (j + 1) as f64 * self.dx
        };
        (lo, hi)
    }

    /// Index supplying the value of cell `j − 1`.
    pub fn left(&self, j: usize) -> usize {
        match (j, self.boundary) {
            (0, Boundary::Periodic) => self.ncells - 1,
            (0, Boundary::Copy) => 0,
            _ => j - 1,
        }
    }

    /// Index supplying the value of cell `j + 1`.
    pub fn right(&self, j: usize) -> usize {
        if j + 1 < self.ncells {
            j + 1
        } else {
            match self.boundary {
                Boundary::Periodic => 0,
                Boundary::Copy => j,
            }
        }
    }

    /// Number of steps reaching `t_end`; `t_end` must be a multiple of `Δt`.
    pub fn steps_to(&self, t_end: f64) -> Result<usize> {
        if !(t_end >= 0.0) || !t_end.is_finite() {
            return Err(Error::NonCommensurableTime { t_end, dt: self.dt });
        }
        let n = (t_end / self.dt).round();
        if (n * self.dt - t_end).abs() > 1e-12 * t_end.max(self.dt) {
            return Err(Error::NonCommensurableTime { t_end, dt: self.dt });
        }
        Ok(n as usize)
    }
}
