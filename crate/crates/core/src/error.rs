use std::fmt;

use thiserror::Error;

/// Which equilibrium distribution a quantity belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// The distribution moving with velocity `-lambda`.
    Minus,
    /// The distribution moving with velocity `+lambda`.
    Plus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Minus => -1.0,
            Branch::Plus => 1.0,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::Minus => f.write_str("minus"),
            Branch::Plus => f.write_str("plus"),
        }
    }
}

/// A discrete bound that failed to hold during a run.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantViolation {
    pub step: usize,
    /// Offending cell, when the bound is local.
    pub cell: Option<usize>,
    /// Short name of the bound, e.g. `"maximum principle (u)"`.
    pub quantity: String,
    pub value: f64,
    pub bound: f64,
}

impl fmt::Display for InvariantViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated at step {}", self.quantity, self.step)?;
        if let Some(cell) = self.cell {
            write!(f, ", cell {cell}")?;
        }
        write!(f, ": value={:e}, bound={:e}", self.value, self.bound)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("equilibrium value {value} outside [{lo}, {hi}] for branch {branch}")]
    OutOfBracket {
        branch: Branch,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("equilibrium function not monotone on [{alpha}, {beta}]: lambda={lambda} < M={max_speed}")]
    NotMonotone {
        alpha: f64,
        beta: f64,
        lambda: f64,
        max_speed: f64,
    },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no convergence after {iterations} iterations: {what}")]
    NoConvergence { what: String, iterations: usize },
    #[error("Assumption 2: lambda >= M violated: lambda={lambda}, M={max_speed}")]
    CflViolation { lambda: f64, max_speed: f64 },
    #[error("Assumption 1: relaxation parameter s in (0, 1] violated: s={0}")]
    InvalidS(f64),
    #[error("t_end={t_end} is not an integer multiple of dt={dt}")]
    NonCommensurableTime { t_end: f64, dt: f64 },
    #[error("distribution {value} of branch {branch} leaves [{lo}, {hi}] at cell {cell}")]
    DomainViolation {
        branch: Branch,
        cell: usize,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("degenerate rate fit: {0}")]
    Degenerate(String),
    #[error("invariant violation: {0}")]
    InvariantViolation(InvariantViolation),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid initial condition: {0}")]
    InvalidInitialCondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Validation(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
