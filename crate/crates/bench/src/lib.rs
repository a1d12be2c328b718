//! Shared inputs for the criterion benchmarks.

use gsteer_core::{reduced_ab, ChannelParams, CovarianceMatrix};

/// `n × n` evenly spaced `(s, r)` points on `[0, max]²`.
pub fn param_grid(n: usize, max: f64) -> Vec<ChannelParams> {
    let step = max / (n.max(2) - 1) as f64;
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i as f64 * step, j as f64 * step)))
        .map(|(s, r)| ChannelParams::new(s, r).expect("grid within guards"))
        .collect()
}

pub fn sample_states(n: usize) -> Vec<CovarianceMatrix> {
    param_grid(n, 3.0).into_iter().map(reduced_ab).collect()
}
