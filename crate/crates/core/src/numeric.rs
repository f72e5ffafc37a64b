//! Floating-point side of the crate: time-domain samples of ψ, closed-form
//! inner products of the dilated/translated system, Gram matrices, a
//! quadrature oracle for them, and the exact origin probe.
//!
//! Fourier convention: `f̂(ξ) = ∫ f(x) e^{−iξx} dx`, so
//! `f(x) = (1/2π) ∫ f̂(ξ) e^{iξx} dξ` and `‖f‖² = (1/2π) ‖f̂‖²`.
//! Endpoints stay exact until the last step, where they become `f64`.

use std::f64::consts::PI;
use std::ops::RangeInclusive;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::exact::{int, pow2, PiScalar};
use crate::interval_set::{Interval, IntervalSet};
use crate::step_wavelet::StepFunction;

/// Below this the exponential integrals switch to a short Taylor series.
pub const SMALL_ARG: f64 = 1e-12;

/// Closed-form Gram entries must match the identity to this.
pub const GRAM_TOL: f64 = 1e-10;

/// Quadrature cross-checks must match closed forms to this.
pub const QUADRATURE_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComplexSample {
    pub x: f64,
    pub re: f64,
    pub im: f64,
}

impl ComplexSample {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// `∫_a^b e^{iωξ} dξ`.
fn exp_integral(omega: f64, a: f64, b: f64) -> Complex64 {
    let w = b - a;
    if omega.abs() < SMALL_ARG {
        let (a2, b2) = (a * a, b * b);
        return Complex64::new(
            w - omega * omega * (b2 * b - a2 * a) / 6.0,
            omega * (b2 - a2) / 2.0,
        );
    }
    // e^{iω(a+b)/2} · 2 sin(ωw/2)/ω, free of the e^{iωb} − e^{iωa} cancellation
    let mid = 0.5 * (a + b);
    Complex64::from_polar(2.0 * (0.5 * omega * w).sin() / omega, omega * mid)
}

/// `ψ(x) = (1/2π) Σ_p v_p ∫_{a_p}^{b_p} e^{iξx} dξ`.
pub fn sample_time(f: &StepFunction, xs: &[f64]) -> Vec<ComplexSample> {
    let pieces: Vec<(f64, f64, f64)> = f
        .pieces()
        .iter()
        .map(|(iv, v)| (iv.lo().to_f64(), iv.hi().to_f64(), v.to_f64()))
        .collect();
    xs.iter()
        .map(|&x| {
            let z: Complex64 = pieces
                .iter()
                .map(|&(a, b, v)| exp_integral(x, a, b) * v)
                .sum::<Complex64>()
                / (2.0 * PI);
            ComplexSample {
                x,
                re: z.re,
                im: z.im,
            }
        })
        .collect()
}

/// `(j, k)` labels `ψ_{j,k}(x) = 2^{j/2} ψ(2^j x − k)`, whose transform is
/// `2^{−j/2} e^{−i2^{−j}kξ} ψ̂(2^{−j}ξ)`.
pub type Index = (i64, i64);

/// `⟨ψ_{j,k}, ψ_{j',k'}⟩ = (1/2π) ∫ ψ̂_{j,k} · conj(ψ̂_{j',k'})`, summed in closed
/// form over exact intersections of the dilated pieces.
pub fn inner_product(f: &StepFunction, a: Index, b: Index) -> Complex64 {
    let (j, k) = a;
    let (jp, kp) = b;
    // phase e^{−icξ}, c = 2^{−j}k − 2^{−j'}k'
    let c = (pow2(-j) * int(k) - pow2(-jp) * int(kp)).to_f64().unwrap();
    let scale = 2f64.powf(-0.5 * (j + jp) as f64) / (2.0 * PI);
    let left: Vec<(Interval, f64)> = f
        .pieces()
        .iter()
        .map(|(iv, v)| (iv.dilate(j), v.to_f64()))
        .collect();
    let right: Vec<(Interval, f64)> = f
        .pieces()
        .iter()
        .map(|(iv, v)| (iv.dilate(jp), v.to_f64()))
        .collect();
    let mut acc = Complex64::new(0.0, 0.0);
    for (p, v) in &left {
        for (q, w) in &right {
            let Some(x) = p.intersect(q) else { continue };
            let (lo, hi) = (x.lo().to_f64(), x.hi().to_f64());
            let integral = if c == 0.0 {
                Complex64::new(hi - lo, 0.0)
            } else {
                exp_integral(-c, lo, hi)
            };
            acc += integral * (v * w);
        }
    }
    acc * scale
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GramReport {
    pub index_grid: Vec<Index>,
    pub max_offdiag: f64,
    pub max_diag_err: f64,
    /// Pair attaining `max_offdiag`.
    pub worst_pair: Option<(Index, Index)>,
}

impl GramReport {
    pub fn max_deviation(&self) -> f64 {
        self.max_offdiag.max(self.max_diag_err)
    }
}

pub fn index_grid(j_range: RangeInclusive<i64>, k_range: RangeInclusive<i64>) -> Vec<Index> {
    j_range
        .flat_map(|j| k_range.clone().map(move |k| (j, k)))
        .collect()
}

pub fn gram_matrix(f: &StepFunction, grid: &[Index]) -> Vec<Vec<Complex64>> {
    grid.iter()
        .map(|&a| grid.iter().map(|&b| inner_product(f, a, b)).collect())
        .collect()
}

pub fn gram(
    f: &StepFunction,
    j_range: RangeInclusive<i64>,
    k_range: RangeInclusive<i64>,
) -> GramReport {
    let grid = index_grid(j_range, k_range);
    let g = gram_matrix(f, &grid);
    let mut max_offdiag = 0.0f64;
    let mut max_diag_err = 0.0f64;
    let mut worst_pair = None;
    for (ia, row) in g.iter().enumerate() {
        for (ib, z) in row.iter().enumerate() {
            if ia == ib {
                max_diag_err = max_diag_err.max((z - 1.0).norm());
            } else if z.norm() > max_offdiag {
                max_offdiag = z.norm();
                worst_pair = Some((grid[ia], grid[ib]));
            }
        }
    }
    GramReport {
        index_grid: grid,
        max_offdiag,
        max_diag_err,
        worst_pair,
    }
}

/// 5-point Gauss–Legendre nodes and weights on [−1, 1].
const GL_NODES: [f64; 5] = [
    0.0,
    -0.538_469_310_105_683_1,
    0.538_469_310_105_683_1,
    -0.906_179_845_938_664,
    0.906_179_845_938_664,
];
const GL_WEIGHTS: [f64; 5] = [
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
    0.236_926_885_056_189_1,
];

fn gauss_legendre(g: &impl Fn(f64) -> Complex64, a: f64, b: f64) -> Complex64 {
    let (m, h) = (0.5 * (a + b), 0.5 * (b - a));
    GL_NODES
        .iter()
        .zip(GL_WEIGHTS)
        .map(|(&t, w)| g(m + h * t) * w)
        .sum::<Complex64>()
        * h
}

fn adaptive(
    g: &impl Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    whole: Complex64,
    tol: f64,
    depth: u32,
) -> Complex64 {
    let m = 0.5 * (a + b);
    let left = gauss_legendre(g, a, m);
    let right = gauss_legendre(g, m, b);
    let split = left + right;
    if depth == 0 || (split - whole).norm() <= tol {
        return split;
    }
    adaptive(g, a, m, left, 0.5 * tol, depth - 1) + adaptive(g, m, b, right, 0.5 * tol, depth - 1)
}

/// Adaptive Gauss–Legendre quadrature of `∫_a^b g` to absolute tolerance `tol`.
pub fn integrate(g: impl Fn(f64) -> Complex64, a: f64, b: f64, tol: f64) -> Complex64 {
    let whole = gauss_legendre(&g, a, b);
    adaptive(&g, a, b, whole, tol, 40)
}

/// Quadrature oracle for [`inner_product`]: evaluates the frequency integrand
/// pointwise and integrates it numerically between the (rounded) breakpoints.
pub fn quad_inner_product(f: &StepFunction, a: Index, b: Index, tol: f64) -> Complex64 {
    let (j, k) = a;
    let (jp, kp) = b;
    let (sj, sjp) = (2f64.powi(j as i32), 2f64.powi(jp as i32));
    let c = k as f64 / sj - kp as f64 / sjp;
    let scale = 1.0 / (sj * sjp).sqrt() / (2.0 * PI);
    let integrand = |xi: f64| {
        let v = f.value_at_f64(xi / sj) * f.value_at_f64(xi / sjp);
        Complex64::from_polar(v, -c * xi)
    };
    let mut breaks: Vec<f64> = f
        .pieces()
        .iter()
        .flat_map(|(iv, _)| {
            let (lo, hi) = (iv.lo().to_f64(), iv.hi().to_f64());
            [lo * sj, hi * sj, lo * sjp, hi * sjp]
        })
        .collect();
    breaks.sort_by(|x, y| x.total_cmp(y));
    breaks.dedup();
    let cells = breaks.len().saturating_sub(1).max(1) as f64;
    breaks
        .windows(2)
        .map(|w| integrate(integrand, w[0], w[1], tol / cells))
        .sum::<Complex64>()
        * scale
}

/// For each `δ > 0`: does `s` meet `(0, δ)` in positive measure?
pub fn origin_probe(s: &IntervalSet, deltas: &[PiScalar]) -> Vec<(PiScalar, bool)> {
    deltas
        .iter()
        .map(|d| {
            let hit = Interval::new(PiScalar::zero(), d.clone())
                .is_some_and(|near| !s.intersect_interval(&near).is_empty());
            (d.clone(), hit)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::shannon_set;

    #[test]
    fn shannon_at_origin() {
        let f = StepFunction::indicator(&shannon_set());
        let s = sample_time(&f, &[0.0, 1e-14]);
        assert!((s[0].re - 1.0).abs() < 1e-15 && s[0].im.abs() < 1e-15);
        assert!((s[1].re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn disjoint_dilates_are_orthogonal() {
        let f = StepFunction::indicator(&shannon_set());
        for k in -3..=3 {
            assert_eq!(inner_product(&f, (0, 0), (3, k)), Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn series_branch_matches_closed_form() {
        let (a, b) = (2.0 * PI, 4.0 * PI);
        let z_small = exp_integral(1e-13, a, b);
        let z_ref = exp_integral(1e-9, a, b);
        assert!((z_small - z_ref).norm() < 1e-6);
    }

    #[test]
    fn probe_on_shannon() {
        let hits = origin_probe(
            &shannon_set(),
            &[PiScalar::from_int(1), PiScalar::from_int(2)],
        );
        assert!(hits.iter().all(|(_, h)| !h));
    }
}
