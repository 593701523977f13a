use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{FluxModel, InitialCondition};
use crate::scheme::{Grid, State};

/// ℓ¹ distance of both moments to the exact solution's cell averages.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct L1Error {
    /// `Δx Σ_j |u_j − ū_j(t)|`.
    pub u: f64,
    /// `Δx Σ_j |v_j − φ(ū_j(t))|`.
    pub v: f64,
}

/// Exact cell averages `ū_j(t)` on `grid`.
pub fn exact_cell_averages(
    grid: &Grid,
    model: &dyn FluxModel,
    ic: &InitialCondition,
    t: f64,
) -> Result<Vec<f64>> {
    (0..grid.ncells)
        .map(|j| {
            let (a, b) = grid.cell(j);
            model.exact_cell_average(ic, t, a, b)
        })
        .collect()
}

/// Error of `state` against the exact solution at time `t`.
pub fn l1_error(
    state: &State,
    model: &dyn FluxModel,
    ic: &InitialCondition,
    t: f64,
) -> Result<L1Error> {
    let grid = &state.grid;
    let exact = exact_cell_averages(grid, model, ic, t)?;
    let (mut eu, mut ev) = (0.0, 0.0);
    for ((u, v), ue) in state.u().iter().zip(state.v()).zip(&exact) {
        eu += (u - ue).abs();
        ev += (v - model.phi(*ue)).abs();
    }
    Ok(L1Error {
        u: grid.dx * eu,
        v: grid.dx * ev,
    })
}
