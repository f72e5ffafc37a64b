//! Brute-force oracles. These evaluate definitions pointwise on rational grids
//! and never go through the sweep/fold machinery they are used to check.

#![allow(dead_code)]

use h2wave_core::exact::{int, pow2, rat};
use h2wave_core::{Interval, IntervalSet, PiScalar, StepFunction, Q2};

/// Midpoints of a uniform rational grid with `n` cells on `[lo, hi)`.
pub fn grid(lo: (i64, i64), hi: (i64, i64), n: i64) -> Vec<PiScalar> {
    let lo = rat(lo.0, lo.1);
    let hi = rat(hi.0, hi.1);
    let h = (&hi - &lo) / int(n);
    (0..n)
        .map(|i| PiScalar::new(&lo + &h * (int(2 * i + 1) / int(2))))
        .collect()
}

/// `#{k : ξ − 2kπ ∈ s}` by scanning a wide range of `k`.
pub fn tau_count(s: &IntervalSet, xi: &PiScalar) -> u64 {
    (-200..=200)
        .filter(|&k| s.contains(&xi.shift_2pi(-k)))
        .count() as u64
}

/// `#{j : 2^{−j}ξ ∈ s}` by scanning a wide range of `j`.
pub fn d_count(s: &IntervalSet, xi: &PiScalar) -> u64 {
    (-80..=80)
        .filter(|&j| s.contains(&xi.scale_pow2(-j)))
        .count() as u64
}

pub fn rho_at(f: &StepFunction, xi: &PiScalar) -> Q2 {
    (-80..=80).fold(Q2::zero(), |acc, j| {
        acc + f.value_at(&xi.scale_pow2(j)).abs_sq()
    })
}

pub fn t_q_at(f: &StepFunction, q: i64, xi: &PiScalar) -> Q2 {
    let shifted = xi + &PiScalar::new(int(2 * q));
    (0..=80).fold(Q2::zero(), |acc, j| {
        acc + f.value_at(&xi.scale_pow2(j)) * f.value_at(&shifted.scale_pow2(j))
    })
}

/// Membership-based equality of two sets on a fine grid.
pub fn same_on_grid(a: &IntervalSet, b: &IntervalSet, pts: &[PiScalar]) -> bool {
    pts.iter().all(|x| a.contains(x) == b.contains(x))
}

pub fn iv(lo: (i64, i64), hi: (i64, i64)) -> Interval {
    Interval::from_ratios(lo, hi)
}

/// Endpoints as `(numerator, denominator)` coefficients of π.
pub type Ends = ((i64, i64), (i64, i64));

pub fn set(v: &[Ends]) -> IntervalSet {
    v.iter().map(|&(a, b)| iv(a, b)).collect()
}

/// Rational interior points of the `(x, y)` triangle, in π units:
/// `1 < x < y < 2`, `x + 2 > 2y`.
pub fn triangle_points(n: i64) -> Vec<(PiScalar, PiScalar)> {
    let mut out = Vec::new();
    for i in 1..n {
        for j in 1..n {
            let x = int(1) + rat(i, n);
            let y = rat(3, 2) + rat(j, 2 * n);
            if x < y && &x + int(2) > int(2) * &y {
                out.push((PiScalar::new(x), PiScalar::new(y)));
            }
        }
    }
    out
}

pub fn dyadic(e: i64) -> PiScalar {
    PiScalar::new(pow2(e))
}
