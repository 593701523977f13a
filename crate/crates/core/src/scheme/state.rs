use crate::error::{Error, Result};
use crate::model::{equilibrium_split, FluxModel, InitStats, InitialCondition};
use crate::scheme::grid::Grid;

/// Relaxation parameter `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeParams {
    s: f64,
}

impl SchemeParams {
    /// Accepts `s` in `(0, 1]`, the range where the scheme is monotone.
    pub fn new(s: f64) -> Result<Self> {
        if !(s > 0.0 && s <= 1.0) {
            return Err(Error::InvalidS(s));
        }
        Ok(Self { s })
    }

    /// Accepts `s` in `(0, 2]`. Above 1 none of the discrete bounds are guaranteed.
    pub fn new_unchecked(s: f64) -> Result<Self> {
        if !(s > 0.0 && s <= 2.0) {
            return Err(Error::InvalidS(s));
        }
        Ok(Self { s })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn is_monotone(&self) -> bool {
        self.s <= 1.0
    }
}

/// Distributions `(f−, f+)` at time level `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    pub fminus: Vec<f64>,
    pub fplus: Vec<f64>,
    pub n: usize,
    pub grid: Grid,
}

/// Distributions after the relaxation of level `n`, before transport.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfState {
    pub fminus: Vec<f64>,
    pub fplus: Vec<f64>,
    /// Level that was relaxed; this is the `n + 1/2` half level.
    pub n: usize,
    pub grid: Grid,
}

macro_rules! moments {
    ($t:ty) => {
        impl $t {
            pub fn len(&self) -> usize {
                self.fminus.len()
            }

            pub fn is_empty(&self) -> bool {
                self.fminus.is_empty()
            }

            /// `u_j = f−_j + f+_j`.
            pub fn u(&self) -> Vec<f64> {
                self.fminus.iter().zip(&self.fplus).map(|(m, p)| m + p).collect()
            }

            /// `v_j = λ (f+_j − f−_j)`.
            pub fn v(&self) -> Vec<f64> {
                let l = self.grid.lambda;
                self.fminus
                    .iter()
                    .zip(&self.fplus)
                    .map(|(m, p)| l * (p - m))
                    .collect()
            }

            pub fn time(&self) -> f64 {
                self.n as f64 * self.grid.dt
            }
        }
    };
}

moments!(State);
moments!(HalfState);

impl State {
    /// Builds distributions from moments: `f± = u/2 ± v/(2λ)`.
    pub fn from_moments(grid: Grid, n: usize, u: &[f64], v: &[f64]) -> Self {
        let l = grid.lambda;
        let (fminus, fplus) = u
            .iter()
            .zip(v)
            .map(|(u, v)| (0.5 * u - v / (2.0 * l), 0.5 * u + v / (2.0 * l)))
            .unzip();
        Self {
            fminus,
            fplus,
            n,
            grid,
        }
    }

    /// Equilibrium state `f± = h±(u_j)`.
    pub fn equilibrium(grid: Grid, model: &dyn FluxModel, u: &[f64]) -> Self {
        let (fminus, fplus) = u
            .iter()
            .map(|&u| equilibrium_split(model, grid.lambda, u))
            .unzip();
        Self {
            fminus,
            fplus,
            n: 0,
            grid,
        }
    }
}

/// Initial moments: `u⁰_j` the exact cell average of `u⁰`, `v⁰_j = φ(u⁰_j)`.
pub fn initial_moments(
    grid: &Grid,
    model: &dyn FluxModel,
    ic: &InitialCondition,
) -> (Vec<f64>, Vec<f64>) {
    let u: Vec<f64> = (0..grid.ncells)
        .map(|j| {
            let (a, b) = grid.cell(j);
            ic.cell_average(a, b)
        })
        .collect();
    let v = u.iter().map(|&u| model.phi(u)).collect();
    (u, v)
}

/// Cell averages of `u⁰` at equilibrium, after checking `λ >= M`.
pub fn init_state(
    grid: &Grid,
    model: &dyn FluxModel,
    ic: &InitialCondition,
) -> Result<(State, InitStats)> {
    let stats = InitStats::compute(model, ic, (grid.xmin, grid.xmax));
    grid.validate(&stats)?;
    let (u, _) = initial_moments(grid, model, ic);
    Ok((State::equilibrium(*grid, model, &u), stats))
}
