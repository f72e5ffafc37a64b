//! Inputs shared by the benchmarks.

use h2wave_core::{make_k_rk, make_k_xy, IntervalSet, PiScalar};

/// Every two-interval set `K_{r,k}` with `r <= r_max`.
pub fn two_interval_sets(r_max: u32) -> Vec<IntervalSet> {
    (1..=r_max)
        .flat_map(|r| (1..2 * ((1i64 << r) - 1)).map(move |k| make_k_rk(r, k).unwrap()))
        .collect()
}

/// `K_{x,y}` on an `n × n` lattice of interior points.
pub fn five_interval_sets(n: i64) -> Vec<IntervalSet> {
    let mut out = Vec::new();
    for i in 1..n {
        for j in 1..n {
            let x = PiScalar::from_ratio(n + i, n);
            let y = PiScalar::from_ratio(3 * n + j, 2 * n);
            if let Ok(s) = make_k_xy(&x, &y) {
                out.push(s);
            }
        }
    }
    out
}
