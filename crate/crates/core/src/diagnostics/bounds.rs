use serde::{Deserialize, Serialize};

use crate::model::FluxModel;
use crate::scheme::{Boundary, Grid, State};

/// `Σ |w_{j+1} − w_j|`, plus the wrap-around pair when `periodic`.
pub fn total_variation(seq: &[f64], periodic: bool) -> f64 {
    let interior: f64 = seq.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
    match (periodic, seq.first(), seq.last()) {
        (true, Some(first), Some(last)) if seq.len() > 1 => interior + (first - last).abs(),
        _ => interior,
    }
}

/// Total variation under the grid's boundary policy.
pub fn grid_total_variation(grid: &Grid, seq: &[f64]) -> f64 {
    total_variation(seq, grid.boundary == Boundary::Periodic)
}

/// `Σ_j |a_j − b_j|`, the variation between two time levels (no `Δx` weight).
pub fn time_variation(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

/// `Δx Σ_j |w_j|`.
pub fn l1_norm(dx: f64, seq: &[f64]) -> f64 {
    dx * seq.iter().map(|w| w.abs()).sum::<f64>()
}

/// `‖φ(u) − v‖₁ = Δx Σ_j |φ(u_j) − v_j|`.
pub fn equilibrium_gap_l1(state: &State, model: &dyn FluxModel) -> f64 {
    moment_gap_l1(state.grid.dx, &state.u(), &state.v(), model)
}

/// Same as [`equilibrium_gap_l1`] for moments given directly.
pub fn moment_gap_l1(dx: f64, u: &[f64], v: &[f64], model: &dyn FluxModel) -> f64 {
    dx * u
        .iter()
        .zip(v)
        .map(|(&u, &v)| (model.phi(u) - v).abs())
        .sum::<f64>()
}

/// Every bounded quantity at one step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub step: usize,
    /// `TV(f+) + TV(f−)`.
    pub tv_f_sum: f64,
    pub tv_u: f64,
    pub tv_v: f64,
    pub umin: f64,
    pub umax: f64,
    pub gap_l1: f64,
    /// `2 λ Δx TV(u⁰) / s`.
    pub gap_bound: f64,
    /// `Σ_j |f+^n_j − f+^{n−1}_j| + |f−^n_j − f−^{n−1}_j|`; zero at the first level.
    pub time_var_f: f64,
    pub time_var_u: f64,
    pub time_var_v: f64,
}

impl BoundReport {
    /// Quantities of `state`; time variations are taken against `prev` when given.
    pub fn compute(
        state: &State,
        prev: Option<&State>,
        model: &dyn FluxModel,
        s: f64,
        tv0: f64,
    ) -> Self {
        let grid = &state.grid;
        let u = state.u();
        let v = state.v();
        let (umin, umax) = u
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
                (lo.min(x), hi.max(x))
            });
        let (time_var_f, time_var_u, time_var_v) = match prev {
            Some(p) => (
                time_variation(&state.fplus, &p.fplus) + time_variation(&state.fminus, &p.fminus),
                time_variation(&u, &p.u()),
                time_variation(&v, &p.v()),
            ),
            None => (0.0, 0.0, 0.0),
        };
        Self {
            step: state.n,
            tv_f_sum: grid_total_variation(grid, &state.fplus)
                + grid_total_variation(grid, &state.fminus),
            tv_u: grid_total_variation(grid, &u),
            tv_v: grid_total_variation(grid, &v),
            umin,
            umax,
            gap_l1: moment_gap_l1(grid.dx, &u, &v, model),
            gap_bound: 2.0 * grid.lambda * grid.dx * tv0 / s,
            time_var_f,
            time_var_u,
            time_var_v,
        }
    }
}
