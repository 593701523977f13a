//! Two-velocity lattice Boltzmann (D1Q2) solver for scalar conservation laws
//! `u_t + φ(u)_x = 0`.
//!
//! Besides the update itself the crate evaluates, at every step, the discrete bounds the
//! scheme satisfies for `s ∈ (0, 1]` and `λ ≥ max |φ'|`: the maximum principle, total
//! variation in space and time, the ℓ¹ distance to equilibrium, and the sign of the
//! numerical entropy production. A refinement harness fits ℓ¹ convergence rates
//! against exact solutions.
//!
//! ```
//! use d1q2::model::{Burgers, InitialCondition};
//! use d1q2::scheme::{run, Boundary, Grid, SchemeParams};
//!
//! let grid = Grid::new(-0.3, 1.3, 256, 1.0, Boundary::Copy).unwrap();
//! let params = SchemeParams::new(1.0).unwrap();
//! let ic = InitialCondition::default_step();
//! let state = run(&grid, &params, &Burgers, &ic, 0.1, &mut []).unwrap();
//! assert_eq!(state.n, 16);
//! ```

pub mod cli;
pub mod diagnostics;
pub mod error;
pub mod harness;
pub mod model;
pub mod quadrature;
pub mod scheme;

pub use error::{Branch, Error, InvariantViolation, Result};
