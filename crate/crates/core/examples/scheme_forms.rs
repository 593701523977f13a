//! The distribution form, the moment form and the split relax/transport step on random data,
//! and the s = 1 step against Lax–Friedrichs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use d1q2::model::{Burgers, FluxModel};
use d1q2::scheme::{step, step_f_form, step_moment_form, Boundary, Grid, SchemeParams, State};

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn main() -> d1q2::Result<()> {
    let model = Burgers;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let grid = Grid::new(0.0, 1.0, 64, 1.5, Boundary::Periodic)?;
    let u: Vec<f64> = (0..grid.ncells).map(|_| rng.gen_range(0.0..1.0)).collect();
    let v: Vec<f64> = u
        .iter()
        .map(|&x| model.phi(x) + rng.gen_range(-0.1..0.1))
        .collect();
    let state = State::from_moments(grid, 0, &u, &v);

    for s in [0.3, 0.8, 1.0] {
        let params = SchemeParams::new(s)?;
        let split = step(&state, &params, &model);
        let f = step_f_form(&state, &params, &model);
        let m = step_moment_form(&state, &params, &model);
        println!(
            "s={s}: |split-f|={:.2e} |split-moment|={:.2e} (u), {:.2e} (v)",
            max_diff(&split.u(), &f.u()),
            max_diff(&split.u(), &m.u()),
            max_diff(&split.v(), &m.v())
        );
    }

    let next = step(&state, &SchemeParams::new(1.0)?, &model);
    let lf: Vec<f64> = (0..grid.ncells)
        .map(|j| {
            let (l, r) = (grid.left(j), grid.right(j));
            0.5 * (u[l] + u[r]) - (model.phi(u[r]) - model.phi(u[l])) / (2.0 * grid.lambda)
        })
        .collect();
    println!("s=1 vs Lax-Friedrichs: {:.2e}", max_diff(&next.u(), &lf));
    Ok(())
}
