use crate::error::Result;
use crate::model::{FluxModel, InitialCondition};
use crate::scheme::grid::Grid;
use crate::scheme::state::{init_state, HalfState, SchemeParams, State};
use crate::scheme::step::{relax_step, transport_step};

/// Everything an observer sees after step `n − 1 → n`.
#[derive(Debug, Clone, Copy)]
pub struct StepView<'a> {
    /// Level `n − 1`.
    pub prev: &'a State,
    /// Relaxed level `n − 1`, the `n − 1/2` half state.
    pub prev_half: &'a HalfState,
    /// Relaxed level `n`, the `n + 1/2` half state.
    pub half: &'a HalfState,
    /// Level `n`.
    pub state: &'a State,
}

/// Per-step callback. Returning an error aborts the run.
pub trait Observer {
    fn observe(&mut self, step: &StepView<'_>) -> Result<()>;
}

impl<F: FnMut(&StepView<'_>) -> Result<()>> Observer for F {
    fn observe(&mut self, step: &StepView<'_>) -> Result<()> {
        self(step)
    }
}

/// Advances from an existing state by `steps` steps.
pub fn advance(
    initial: State,
    steps: usize,
    params: &SchemeParams,
    model: &dyn FluxModel,
    observers: &mut [&mut dyn Observer],
) -> Result<State> {
    let mut state = initial;
    if steps == 0 {
        return Ok(state);
    }
    let mut half = relax_step(&state, params, model);
    for _ in 0..steps {
        let next = transport_step(&half);
        let next_half = relax_step(&next, params, model);
        let view = StepView {
            prev: &state,
            prev_half: &half,
            half: &next_half,
            state: &next,
        };
        for obs in observers.iter_mut() {
            obs.observe(&view)?;
        }
        state = next;
        half = next_half;
    }
    Ok(state)
}

/// Initializes from `ic` and runs to `t_end`, which must be a multiple of `Δt`.
pub fn run(
    grid: &Grid,
    params: &SchemeParams,
    model: &dyn FluxModel,
    ic: &InitialCondition,
    t_end: f64,
    observers: &mut [&mut dyn Observer],
) -> Result<State> {
    let steps = grid.steps_to(t_end)?;
    let (state, _) = init_state(grid, model, ic)?;
    advance(state, steps, params, model, observers)
}
