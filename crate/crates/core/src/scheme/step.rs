//! One time step, written three ways: relaxation followed by transport, the combined
//! update on distributions, and the combined update on moments.

use crate::error::Branch;
use crate::model::{equilibrium, FluxModel};
use crate::scheme::state::{HalfState, SchemeParams, State};

/// `f±½_j = (1 − s) f±_j + s h±(u_j)`. Local in space.
pub fn relax_step(state: &State, params: &SchemeParams, model: &dyn FluxModel) -> HalfState {
    let s = params.s();
    let lambda = state.grid.lambda;
    let (fminus, fplus) = state
        .fminus
        .iter()
        .zip(&state.fplus)
        .map(|(&m, &p)| {
            let u = m + p;
            (
                (1.0 - s) * m + s * equilibrium(model, lambda, Branch::Minus, u),
                (1.0 - s) * p + s * equilibrium(model, lambda, Branch::Plus, u),
            )
        })
        .unzip();
    HalfState {
        fminus,
        fplus,
        n: state.n,
        grid: state.grid,
    }
}

/// Exact shift: `f+_j ← f+½_{j−1}`, `f−_j ← f−½_{j+1}`.
pub fn transport_step(half: &HalfState) -> State {
    let grid = half.grid;
    let j_max = grid.ncells;
    let fplus = (0..j_max).map(|j| half.fplus[grid.left(j)]).collect();
    let fminus = (0..j_max).map(|j| half.fminus[grid.right(j)]).collect();
    State {
        fminus,
        fplus,
        n: half.n + 1,
        grid,
    }
}

/// Relaxation then transport.
pub fn step(state: &State, params: &SchemeParams, model: &dyn FluxModel) -> State {
    transport_step(&relax_step(state, params, model))
}

/// Combined update on `(f−, f+)`:
///
/// ```text
/// f−_j ← (1 − s/2) f−_{j+1} + (s/2) f+_{j+1} − (s/2λ) φ(u_{j+1})
/// f+_j ← (s/2) f−_{j−1} + (1 − s/2) f+_{j−1} + (s/2λ) φ(u_{j−1})
/// ```
pub fn step_f_form(state: &State, params: &SchemeParams, model: &dyn FluxModel) -> State {
    let grid = state.grid;
    let s = params.s();
    let c = s / (2.0 * grid.lambda);
    let (fm, fp) = (&state.fminus, &state.fplus);
    let mut fminus = Vec::with_capacity(grid.ncells);
    let mut fplus = Vec::with_capacity(grid.ncells);
    for j in 0..grid.ncells {
        let r = grid.right(j);
        let l = grid.left(j);
        fminus.push((1.0 - 0.5 * s) * fm[r] + 0.5 * s * fp[r] - c * model.phi(fm[r] + fp[r]));
        fplus.push(0.5 * s * fm[l] + (1.0 - 0.5 * s) * fp[l] + c * model.phi(fm[l] + fp[l]));
    }
    State {
        fminus,
        fplus,
        n: state.n + 1,
        grid,
    }
}

/// Combined update on `(u, v)`:
///
/// ```text
/// v½_j  = (1 − s) v_j + s φ(u_j)
/// u_j  ← (u_{j+1} + u_{j−1})/2 − (v½_{j+1} − v½_{j−1}) / 2λ
/// v_j  ← (v½_{j+1} + v½_{j−1})/2 − λ (u_{j+1} − u_{j−1}) / 2
/// ```
pub fn step_moment_form(state: &State, params: &SchemeParams, model: &dyn FluxModel) -> State {
    let grid = state.grid;
    let s = params.s();
    let lambda = grid.lambda;
    let u = state.u();
    let v_half: Vec<f64> = state
        .v()
        .iter()
        .zip(&u)
        .map(|(&v, &u)| (1.0 - s) * v + s * model.phi(u))
        .collect();
    let (u_next, v_next): (Vec<f64>, Vec<f64>) = (0..grid.ncells)
        .map(|j| {
            let (l, r) = (grid.left(j), grid.right(j));
            (
                0.5 * (u[r] + u[l]) - (v_half[r] - v_half[l]) / (2.0 * lambda),
                0.5 * (v_half[r] + v_half[l]) - 0.5 * lambda * (u[r] - u[l]),
            )
        })
        .unzip();
    State::from_moments(grid, state.n + 1, &u_next, &v_next)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Advection, Burgers, InitialCondition};
    use crate::scheme::grid::{Boundary, Grid};
    use crate::scheme::state::init_state;

    fn grid(n: usize, boundary: Boundary) -> Grid {
        Grid::new(0.0, 1.0, n, 1.0, boundary).unwrap()
    }

    #[test]
    fn relaxation_examples() {
        let adv = Advection::default();
        let g = grid(1, Boundary::Copy);
        // u = 1 with f+ = 0.9 → f− = 0.1
        let state = State {
            fminus: vec![0.1],
            fplus: vec![0.9],
            n: 0,
            grid: g,
        };
        let half = relax_step(&state, &SchemeParams::new(0.5).unwrap(), &adv);
        assert!((half.fplus[0] - 0.8875).abs() < 1e-15);
        let half = relax_step(&state, &SchemeParams::new(1.0).unwrap(), &adv);
        assert_eq!((half.fminus[0], half.fplus[0]), (0.125, 0.875));
        // u is untouched
        assert!((half.u()[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn relaxation_keeps_equilibrium() {
        let g = grid(4, Boundary::Copy);
        let state = State::equilibrium(g, &Burgers, &[0.1, 0.4, 0.7, 1.0]);
        let half = relax_step(&state, &SchemeParams::new(0.6).unwrap(), &Burgers);
        for (v, u) in half.v().iter().zip(state.u()) {
            assert!((v - Burgers.phi(u)).abs() < 1e-15);
        }
    }

    #[test]
    fn periodic_shift() {
        let g = grid(3, Boundary::Periodic);
        let half = HalfState {
            fminus: vec![1.0, 2.0, 3.0],
            fplus: vec![4.0, 5.0, 6.0],
            n: 7,
            grid: g,
        };
        let next = transport_step(&half);
        assert_eq!(next.fplus, vec![6.0, 4.0, 5.0]);
        assert_eq!(next.fminus, vec![2.0, 3.0, 1.0]);
        assert_eq!(next.n, 8);
    }

    #[test]
    fn copy_boundary_keeps_constants() {
        let g = grid(5, Boundary::Copy);
        let half = HalfState {
            fminus: vec![0.2; 5],
            fplus: vec![0.3; 5],
            n: 0,
            grid: g,
        };
        let next = transport_step(&half);
        assert_eq!(next.fminus, vec![0.2; 5]);
        assert_eq!(next.fplus, vec![0.3; 5]);
    }

    #[test]
    fn lax_friedrichs_at_full_relaxation() {
        let g = grid(6, Boundary::Periodic);
        let u = [0.0, 0.2, 0.9, 1.0, 0.5, 0.1];
        let state = State::equilibrium(g, &Burgers, &u);
        let next = step_moment_form(&state, &SchemeParams::new(1.0).unwrap(), &Burgers);
        let nu = next.u();
        for j in 0..6 {
            let (l, r) = ((j + 5) % 6, (j + 1) % 6);
            let lf = 0.5 * (u[r] + u[l]) - (Burgers.phi(u[r]) - Burgers.phi(u[l])) / 2.0;
            assert!((nu[j] - lf).abs() < 1e-15);
        }
    }

    #[test]
    fn hand_computed_step_from_step_data() {
        // J = 5 on [0, 1], λ = 1, advection a = 0.75, step on [0.2, 0.6], s = 0.5
        // u⁰ = (0, 1, 1, 0, 0); h+(1) = 0.875, h−(1) = 0.125
        let adv = Advection::default();
        let g = grid(5, Boundary::Copy);
        let ic = InitialCondition::step(g.cell(1).0, g.cell(2).1).unwrap();
        let (state, _) = init_state(&g, &adv, &ic).unwrap();
        assert_eq!(state.u(), vec![0.0, 1.0, 1.0, 0.0, 0.0]);
        let params = SchemeParams::new(0.5).unwrap();
        // equilibrium data are fixed by relaxation, so one step is a pure shift
        let expected_plus = [0.0, 0.0, 0.875, 0.875, 0.0];
        let expected_minus = [0.125, 0.125, 0.0, 0.0, 0.0];
        for next in [
            step(&state, &params, &adv),
            step_f_form(&state, &params, &adv),
            step_moment_form(&state, &params, &adv),
        ] {
            for j in 0..5 {
                assert!((next.fplus[j] - expected_plus[j]).abs() < 1e-15);
                assert!((next.fminus[j] - expected_minus[j]).abs() < 1e-15);
            }
        }
        // second step leaves equilibrium: f+_2 = ½ f+_1 + ½ h+(u_1) with
        // u_1 = f−_1 + f+_1 = 0.125, and so on
        let s1 = step(&state, &params, &adv);
        let s2 = step(&s1, &params, &adv);
        let h_plus = |u: f64| 0.875 * u;
        let u1 = 0.125;
        let want = 0.5 * 0.0 + 0.5 * h_plus(u1);
        assert!((s2.fplus[2] - want).abs() < 1e-15);
    }

    #[test]
    fn forms_agree_on_two_steps() {
        let adv = Advection::default();
        let g = Grid::new(-0.3, 1.3, 64, 1.0, Boundary::Copy).unwrap();
        let (state, _) = init_state(&g, &adv, &InitialCondition::default_regular()).unwrap();
        let params = SchemeParams::new(0.7).unwrap();
        let mut a = state.clone();
        let mut b = state.clone();
        let mut c = state;
        for _ in 0..2 {
            a = step(&a, &params, &adv);
            b = step_f_form(&b, &params, &adv);
            c = step_moment_form(&c, &params, &adv);
        }
        for j in 0..64 {
            assert!((a.fplus[j] - b.fplus[j]).abs() < 1e-15);
            assert!((a.fplus[j] - c.fplus[j]).abs() < 1e-15);
            assert!((a.fminus[j] - c.fminus[j]).abs() < 1e-15);
        }
    }
}
