use serde::{Deserialize, Serialize};

use crate::error::{Branch, Error, Result};
use crate::model::KineticEntropy;
use crate::scheme::{Grid, HalfState};

/// Distance outside `[h±(α), h±(β)]` beyond which a half state is rejected.
pub const DOMAIN_TOLERANCE: f64 = 1e-10;

/// Numerical entropy `E_j` and interface fluxes `Q_{j+1/2}` at one half level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyFields {
    pub e: Vec<f64>,
    /// `q[j]` is `Q_{j+1/2}`.
    pub q: Vec<f64>,
    /// `Q_{−1/2}`, built from the boundary policy's ghost cell.
    pub q_left: f64,
}

/// Cell entropy, fluxes and production at level `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    pub step: usize,
    /// `E^{n+1/2}`.
    pub e: Vec<f64>,
    /// `Q^{n+1/2}_{j+1/2}`.
    pub q: Vec<f64>,
    pub mu: Vec<f64>,
    /// `Δx Δt Σ_j |μ_j|`.
    pub mu_l1: f64,
}

fn kinetic_values(
    kinetic: &KineticEntropy,
    branch: Branch,
    values: &[f64],
) -> Result<Vec<f64>> {
    let (lo, hi) = kinetic.domain(branch);
    values
        .iter()
        .enumerate()
        .map(|(cell, &f)| {
            if !(f >= lo - DOMAIN_TOLERANCE && f <= hi + DOMAIN_TOLERANCE) {
                return Err(Error::DomainViolation {
                    branch,
                    cell,
                    value: f,
                    lo,
                    hi,
                });
            }
            kinetic.value(branch, f.clamp(lo, hi))
        })
        .collect()
}

/// `E_j = e+(f+½_j) + e−(f−½_j)`, `Q_{j+1/2} = λ e+(f+½_j) − λ e−(f−½_{j+1})`.
pub fn entropy_fields(half: &HalfState, kinetic: &KineticEntropy) -> Result<EntropyFields> {
    let grid = &half.grid;
    let lambda = grid.lambda;
    let ep = kinetic_values(kinetic, Branch::Plus, &half.fplus)?;
    let em = kinetic_values(kinetic, Branch::Minus, &half.fminus)?;
    let e = ep.iter().zip(&em).map(|(p, m)| p + m).collect();
    let q = (0..grid.ncells)
        .map(|j| lambda * ep[j] - lambda * em[grid.right(j)])
        .collect();
    let q_left = lambda * ep[grid.left(0)] - lambda * em[0];
    Ok(EntropyFields { e, q, q_left })
}

/// `μ_j = (E_j^{n+1/2} − E_j^{n−1/2}) / Δt + (Q^{n−1/2}_{j+1/2} − Q^{n−1/2}_{j−1/2}) / Δx`.
pub fn entropy_production(prev: &EntropyFields, next: &EntropyFields, grid: &Grid) -> Vec<f64> {
    (0..grid.ncells)
        .map(|j| {
            let q_minus = if j == 0 { prev.q_left } else { prev.q[j - 1] };
            (next.e[j] - prev.e[j]) / grid.dt + (prev.q[j] - q_minus) / grid.dx
        })
        .collect()
}

/// `Δx Δt Σ_j |μ_j|`.
pub fn production_l1(grid: &Grid, mu: &[f64]) -> f64 {
    grid.dx * grid.dt * mu.iter().map(|m| m.abs()).sum::<f64>()
}

impl EntropyReport {
    pub fn new(step: usize, prev: &EntropyFields, next: EntropyFields, grid: &Grid) -> Self {
        let mu = entropy_production(prev, &next, grid);
        Self {
            step,
            mu_l1: production_l1(grid, &mu),
            e: next.e,
            q: next.q,
            mu,
        }
    }

    /// Upper tolerance for `μ_j`: `tol · max(1, max|E| / Δt)`.
    pub fn sign_tolerance(&self, tol: f64, dt: f64) -> f64 {
        let emax = self.e.iter().fold(0.0_f64, |m, e| m.max(e.abs()));
        tol * (emax / dt).max(1.0)
    }
}
