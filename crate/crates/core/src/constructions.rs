//! Constructors for the wavelet-set families: the two-interval sets `K_{r,k}`,
//! their diagonal `K_r = I_r ∪ J_r`, the five-interval sets `K_{x,y}`, the
//! depth-truncated `K_{r,ε}` with its exact tail defect, and the Shannon set.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{int, pow2, PiScalar, Rational};
use crate::interval_set::{Interval, IntervalSet};

/// Truncation depth used when the caller does not pick one. At this depth the
/// tail defect is below `2^{-100}π` for every `r >= 1`.
pub const DEFAULT_DEPTH: usize = 12;

fn p2(e: u32) -> BigInt {
    BigInt::one() << e
}

fn frac(n: BigInt, d: BigInt) -> PiScalar {
    PiScalar::new(Rational::new(n, d))
}

fn interval(lo: PiScalar, hi: PiScalar, what: &str) -> Result<Interval> {
    Interval::new(lo, hi).ok_or_else(|| Error::ParameterRange(format!("{what} is empty")))
}

/// The two-interval wavelet set
/// `[2(k+1)/(2^{r+1}−1), 2k/(2^r−1))π ∪ [2^{r+1}k/(2^r−1), 2^{r+2}(k+1)/(2^{r+1}−1))π`
/// for `r >= 1`, `1 <= k < 2(2^r − 1)`.
pub fn make_k_rk(r: u32, k: i64) -> Result<IntervalSet> {
    if r < 1 {
        return Err(Error::ParameterRange(format!("r must be >= 1, got {r}")));
    }
    let m: BigInt = p2(r) - 1; // 2^r - 1
    let m1: BigInt = p2(r + 1) - 1; // 2^{r+1} - 1
    let kb = BigInt::from(k);
    if k < 1 || kb >= BigInt::from(2) * &m {
        return Err(Error::ParameterRange(format!(
            "k must satisfy 1 <= k < 2(2^r - 1) = {}, got {k}",
            BigInt::from(2) * &m
        )));
    }
    let a = interval(
        frac(BigInt::from(2) * (&kb + 1), m1.clone()),
        frac(BigInt::from(2) * &kb, m.clone()),
        "A",
    )?;
    let b = interval(
        frac(p2(r + 1) * &kb, m),
        frac(p2(r + 2) * (&kb + 1), m1),
        "B",
    )?;
    Ok(IntervalSet::from_intervals([a, b]))
}

/// `a = 2^{r+1}(k+1)π/(2^{r+1}−1)`; `2^r A ∪ B = [a, 2a)`.
pub fn k_rk_dilation_anchor(r: u32, k: i64) -> PiScalar {
    frac(p2(r + 1) * (BigInt::from(k) + 1), p2(r + 1) - 1)
}

/// `t_r = 2^{r+1}π/(2^{r+1}−1)`, the left endpoint of `I_r`.
pub fn t_r(r: u32) -> PiScalar {
    frac(p2(r + 1), p2(r + 1) - 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KrSet {
    pub r: u32,
    pub set: IntervalSet,
    pub i_r: Interval,
    pub j_r: Interval,
}

/// `K_r = I_r ∪ J_r` with `I_r = [t_r, 2π)` and `J_r = [2^{r+1}π, 2^{r+1}t_r)`.
pub fn make_k_r(r: u32) -> Result<KrSet> {
    if r < 1 {
        return Err(Error::ParameterRange(format!("r must be >= 1, got {r}")));
    }
    let t = t_r(r);
    let i_r = Interval::new(t.clone(), PiScalar::from_int(2)).unwrap();
    let j_r = Interval::new(
        PiScalar::new(Rational::from_integer(p2(r + 1))),
        t.scale_pow2(r as i64 + 1),
    )
    .unwrap();
    let set = IntervalSet::from_intervals([i_r.clone(), j_r.clone()]);
    Ok(KrSet { r, set, i_r, j_r })
}

/// Whether `(x, y)` (coefficients of π) lies in the open triangle
/// `π < x < y < 2π`, `x + 2π > 2y`.
pub fn in_xy_triangle(x: &PiScalar, y: &PiScalar) -> bool {
    let one = PiScalar::from_int(1);
    let two = PiScalar::from_int(2);
    &one < x && x < y && y < &two && (x + &two) > y.scale(&int(2))
}

/// The five intervals `I_1..I_5` of `K_{x,y}` with no validity check. Empty or
/// reversed entries are returned as raw pairs.
pub fn k_xy_raw(x: &PiScalar, y: &PiScalar) -> [(PiScalar, PiScalar); 5] {
    let two = PiScalar::from_int(2);
    let four = PiScalar::from_int(4);
    let x2 = x.scale(&int(2));
    let y2 = y.scale(&int(2));
    [
        (x.clone(), y.clone()),
        (two.clone(), x2.clone()),
        (y2.clone(), x + &two),
        (y + &two, four.clone()),
        (&x2 + &four, &y2 + &four),
    ]
}

/// The five intervals of `K_{x,y}`, in order.
pub fn k_xy_intervals(x: &PiScalar, y: &PiScalar) -> Result<[Interval; 5]> {
    if !in_xy_triangle(x, y) {
        return Err(Error::ParameterRange(format!(
            "(x, y) = ({x}, {y}) must satisfy pi < x < y < 2pi and x + 2pi > 2y"
        )));
    }
    let raw = k_xy_raw(x, y);
    Ok(raw.map(|(lo, hi)| Interval::new(lo, hi).expect("triangle interior gives nonempty pieces")))
}

/// The five-interval set `[x,y) ∪ [2π,2x) ∪ [2y,x+2π) ∪ [y+2π,4π) ∪ [2x+4π,2y+4π)`.
pub fn make_k_xy(x: &PiScalar, y: &PiScalar) -> Result<IntervalSet> {
    Ok(k_xy_intervals(x, y)?.into_iter().collect())
}

/// `[2π, 4π)`.
pub fn shannon_set() -> IntervalSet {
    IntervalSet::single(Interval::from_ratios((2, 1), (4, 1)))
}

/// Exclusive upper bound on ε: `(2^r − 1)π/(2^{r+1} − 1)`.
pub fn eps_bound(r: u32) -> PiScalar {
    frac(p2(r) - 1, p2(r + 1) - 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KrEpsilonBuild {
    pub r: u32,
    pub eps: PiScalar,
    pub depth: usize,
    pub set: IntervalSet,
    pub i_r: Interval,
    pub j_r: Interval,
    /// `E_0 ..= E_N`
    pub e_intervals: Vec<Interval>,
    /// `F_0 ..= F_N`
    pub f_intervals: Vec<Interval>,
    pub s_parts: (Interval, Interval, Interval),
    /// `|E_{N+1}|`, the measure double-covered by the translation fold.
    pub tail_defect: PiScalar,
}

/// `K_{r,ε}` with the infinite unions over `E_n`, `F_n` cut at `n <= depth`.
///
/// `S_1 = [t_r/2 + ε/2^{r+1}, t_r/2 + ε)`, `S_2 = [t_r + 2ε, 2π)`,
/// `S_3 = [2^{r+1}t_r, 2^{r+1}t_r + 2ε)`, `E_0 = S_1 + 2^{r+1}π`,
/// `F_n = 2^{−(n+r+2)} E_n`, `E_{n+1} = F_n + 2^{r+1}π`.
pub fn make_k_r_eps(r: u32, eps: &PiScalar, depth: usize) -> Result<KrEpsilonBuild> {
    if r < 1 {
        return Err(Error::ParameterRange(format!("r must be >= 1, got {r}")));
    }
    let bound = eps_bound(r);
    if !eps.is_positive() || eps >= &bound {
        return Err(Error::ParameterRange(format!(
            "eps must satisfy 0 < eps < {bound}, got {eps}"
        )));
    }
    let kr = make_k_r(r)?;
    let t = t_r(r);
    let ri = r as i64;
    let half_t = t.scale_pow2(-1);
    let s1 = interval(&half_t + &eps.scale_pow2(-(ri + 1)), &half_t + eps, "S1")?;
    let s2 = interval(&t + &eps.scale(&int(2)), PiScalar::from_int(2), "S2")?;
    let top = t.scale_pow2(ri + 1);
    let s3 = interval(top.clone(), &top + &eps.scale(&int(2)), "S3")?;

    // shift by 2^{r+1}π is translate(k = 2^r)
    let k_shift = 1i64 << r;
    let mut e_intervals = Vec::with_capacity(depth + 1);
    let mut f_intervals = Vec::with_capacity(depth + 1);
    let mut e = s1.translate(k_shift);
    for n in 0..=depth as i64 {
        let f = e.dilate(-(n + ri + 2));
        e_intervals.push(e);
        e = f.translate(k_shift);
        f_intervals.push(f);
    }

    let mut tail = s1.length();
    for n in 0..=depth as i64 {
        tail = tail.scale(&pow2(-(n + ri + 2)));
    }

    let e_union: IntervalSet = e_intervals.iter().cloned().collect();
    let set = IntervalSet::single(kr.j_r.clone())
        .subtract(&e_union)
        .union(&f_intervals.iter().cloned().collect())
        .union(&IntervalSet::from_intervals([
            s1.clone(),
            s2.clone(),
            s3.clone(),
        ]));

    Ok(KrEpsilonBuild {
        r,
        eps: eps.clone(),
        depth,
        set,
        i_r: kr.i_r,
        j_r: kr.j_r,
        e_intervals,
        f_intervals,
        s_parts: (s1, s2, s3),
        tail_defect: tail,
    })
}
