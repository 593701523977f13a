//! Fixed-order Gauss–Legendre rules.

const GL5_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683,
    0.0,
    0.538_469_310_105_683,
    0.906_179_845_938_664,
];
const GL5_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189_1,
    0.478_628_670_499_366_5,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
];

/// Five-point Gauss–Legendre approximation of the integral of `g` over `[a, b]`.
pub fn gauss_legendre5<F: FnMut(f64) -> f64>(mut g: F, a: f64, b: f64) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    GL5_NODES
        .iter()
        .zip(GL5_WEIGHTS.iter())
        .map(|(&t, &w)| w * g(mid + half * t))
        .sum::<f64>()
        * half
}

/// Composite five-point rule on `panels` equal sub-intervals.
pub fn composite_gauss_legendre5<F: FnMut(f64) -> f64>(mut g: F, a: f64, b: f64, panels: usize) -> f64 {
    let panels = panels.max(1);
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|k| {
            let lo = a + k as f64 * h;
            gauss_legendre5(&mut g, lo, lo + h)
        })
        .sum()
}
