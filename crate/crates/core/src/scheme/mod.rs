//! The D1Q2 update: relaxation toward `f± = h±(u)` followed by an exact shift along `±λ`.

pub mod grid;
pub mod run;
pub mod state;
pub mod step;

pub use grid::{Boundary, Grid};
pub use run::{advance, run, Observer, StepView};
pub use state::{init_state, initial_moments, HalfState, SchemeParams, State};
pub use step::{relax_step, step, step_f_form, step_moment_form, transport_step};
