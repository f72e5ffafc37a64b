//! Exact check of the two equations that characterize wavelets of H²(ℝ):
//!
//! * `ρ(ξ) = Σ_{j∈ℤ} |ψ̂(2^j ξ)|² = χ_{ℝ⁺}(ξ)`
//! * `t_q(ξ) = Σ_{j≥0} ψ̂(2^j ξ)·conj(ψ̂(2^j(ξ + 2qπ))) = 0` for odd `q`
//!
//! plus the MSF test and the `M_r` classification by the 2-adic valuation of
//! the support shift set.
//!
//! Every quantity here is an exact piecewise-constant function with ℚ(√2)
//! values, so a wavelet passes with no tolerance or fails with a witness.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{ceil_log2, floor_log2, pow2, two_adic_valuation, PiScalar, Rational, Q2};
use crate::interval_set::{Interval, IntervalSet};
use crate::step_wavelet::{support_profile, StepFunction};
use crate::tiling::fold_domain;

/// Canonical piecewise-constant function: sorted disjoint pieces, maximal runs,
/// no zero values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PiecewiseQ2 {
    pub pieces: Vec<(Interval, Q2)>,
}

impl PiecewiseQ2 {
    /// Pointwise sum of possibly overlapping `(interval, value)` terms.
    pub fn from_terms(terms: Vec<(Interval, Q2)>) -> Self {
        let mut events: Vec<(PiScalar, Q2)> = Vec::with_capacity(2 * terms.len());
        for (iv, q) in terms {
            events.push((iv.hi().clone(), -&q));
            events.push((iv.lo().clone(), q));
        }
        events.sort_by(|a, b| a.0.cmp(&b.0));

        let mut pieces: Vec<(Interval, Q2)> = Vec::new();
        let mut acc = Q2::zero();
        let mut i = 0;
        while i < events.len() {
            let x = events[i].0.clone();
            while i < events.len() && events[i].0 == x {
                acc += &events[i].1;
                i += 1;
            }
            let Some(next) = events.get(i).map(|e| e.0.clone()) else {
                break;
            };
            if acc.is_zero() {
                continue;
            }
            match pieces.last_mut() {
                Some((last, lv)) if last.hi() == &x && *lv == acc => {
                    *last = Interval::new(last.lo().clone(), next).unwrap();
                }
                _ => pieces.push((Interval::new(x, next).unwrap(), acc.clone())),
            }
        }
        PiecewiseQ2 { pieces }
    }

    pub fn constant_on(set: &IntervalSet, value: Q2) -> Self {
        PiecewiseQ2::from_terms(set.iter().map(|iv| (iv.clone(), value.clone())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn value_at(&self, x: &PiScalar) -> Q2 {
        self.pieces
            .iter()
            .find(|(iv, _)| iv.contains(x))
            .map_or_else(Q2::zero, |(_, q)| q.clone())
    }

    pub fn offset(&self, by: &PiScalar) -> Self {
        PiecewiseQ2 {
            pieces: self
                .pieces
                .iter()
                .map(|(iv, q)| (iv.offset(by), q.clone()))
                .collect(),
        }
    }

    pub fn dilate(&self, j: i64) -> Self {
        PiecewiseQ2 {
            pieces: self
                .pieces
                .iter()
                .map(|(iv, q)| (iv.dilate(j), q.clone()))
                .collect(),
        }
    }

    /// First place where `self` differs from `value` on `domain`.
    pub fn first_deviation(&self, domain: &IntervalSet, value: &Q2) -> Option<(Interval, Q2)> {
        let diff = PiecewiseQ2::from_terms(
            self.pieces
                .iter()
                .cloned()
                .chain(domain.iter().map(|iv| (iv.clone(), -value)))
                .collect(),
        );
        diff.pieces.into_iter().next().map(|(iv, d)| {
            let actual = &d + value;
            (iv, actual)
        })
    }
}

fn check_support(f: &StepFunction) -> Result<()> {
    match f.support().min() {
        Some(m) if !m.is_positive() => Err(Error::NonPositiveSupport(m.to_string())),
        _ => Ok(()),
    }
}

/// `Σ_j |f(2^j ξ)|²` restricted to `domain` (which must lie in ℝ⁺).
pub fn rho_on(f: &StepFunction, domain: &IntervalSet) -> Result<PiecewiseQ2> {
    check_support(f)?;
    if let Some(m) = domain.min() {
        if !m.is_positive() {
            return Err(Error::NonPositiveSupport(m.to_string()));
        }
    }
    let mut terms = Vec::new();
    for (piece, v) in f.pieces() {
        let sq = v.abs_sq();
        for d in domain.iter() {
            // 2^{-j}·piece meets d  <=>  lo/d.hi < 2^j < hi/d.lo
            let j_min = floor_log2(&(piece.lo().coeff() / d.hi().coeff())) + 1;
            let j_max = ceil_log2(&(piece.hi().coeff() / d.lo().coeff())) - 1;
            for j in j_min..=j_max {
                if let Some(x) = piece.dilate(-j).intersect(d) {
                    terms.push((x, sq.clone()));
                }
            }
        }
    }
    Ok(PiecewiseQ2::from_terms(terms))
}

/// `ρ` on the dilation fundamental domain `[2π, 4π)`. By `ρ(2ξ) = ρ(ξ)` this
/// determines `ρ` on all of ℝ⁺, and `ρ = 0` on the negative half-line.
pub fn rho(f: &StepFunction) -> Result<PiecewiseQ2> {
    rho_on(f, &IntervalSet::single(fold_domain()))
}

fn extent(f: &StepFunction) -> PiScalar {
    f.support()
        .hull()
        .map_or_else(PiScalar::zero, |h| h.length())
}

/// Positive odd `q` with the `j >= 0` for which some pair of support pieces
/// `A`, `B` has `(A + 2^{j+1}qπ) ∩ B` of positive measure. Every other `t_q`
/// with `q > 0` vanishes identically.
pub fn relevant_q(f: &StepFunction) -> Result<BTreeMap<i64, Vec<u32>>> {
    check_support(f)?;
    let supp = f.support();
    let ext = extent(f);
    let mut found: BTreeMap<i64, BTreeSet<u32>> = BTreeMap::new();
    let mut j: u32 = 0;
    while PiScalar::new(pow2(j as i64 + 1)) < ext {
        let step = pow2(j as i64 + 1);
        for a in supp.iter() {
            for b in supp.iter() {
                // (A + s) ∩ B has positive measure  <=>  B.lo − A.hi < s < B.hi − A.lo
                let lo = (b.lo().coeff() - a.hi().coeff()) / &step;
                let hi = (b.hi().coeff() - a.lo().coeff()) / &step;
                let floor: BigInt = lo.floor().to_integer();
                let mut q: BigInt = std::cmp::max(floor + 1u32, BigInt::from(1));
                if q.is_even() {
                    q += 1;
                }
                while Rational::from_integer(q.clone()) < hi {
                    let qi = q
                        .to_i64()
                        .ok_or_else(|| Error::ParameterRange("shift too large".into()))?;
                    found.entry(qi).or_default().insert(j);
                    q += 2;
                }
            }
        }
        j += 1;
    }
    Ok(found
        .into_iter()
        .map(|(q, js)| (q, js.into_iter().collect()))
        .collect())
}

/// `t_q` as an exact piecewise function on ℝ. Amplitudes are real, so the
/// conjugate is the value itself.
pub fn t_q(f: &StepFunction, q: i64) -> Result<PiecewiseQ2> {
    if q % 2 == 0 {
        return Err(Error::EvenQ(q));
    }
    check_support(f)?;
    let ext = extent(f);
    let mut terms = Vec::new();
    let mut j: i64 = 0;
    loop {
        let shift = PiScalar::new(pow2(j + 1) * crate::exact::int(q));
        if PiScalar::new(shift.coeff().abs()) >= ext {
            break;
        }
        // 2^j ξ ∈ A and 2^j ξ + shift ∈ B  <=>  ξ ∈ 2^{-j}(A ∩ (B − shift))
        for (a, va) in f.pieces() {
            for (b, vb) in f.pieces() {
                if let Some(x) = a.intersect(&b.offset(&-shift.clone())) {
                    terms.push((x.dilate(-j), va * vb));
                }
            }
        }
        j += 1;
    }
    Ok(PiecewiseQ2::from_terms(terms))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WaveletVerdict {
    pub passed: bool,
    pub norm_ok: bool,
    pub rho_ok: bool,
    pub tq_ok: bool,
    pub failing_q: Option<i64>,
    /// Where the first failing condition goes wrong, and the value found there.
    pub witness: Option<(Interval, Q2)>,
    /// Positive odd `q` whose `t_q` was computed; all other `t_q` vanish by
    /// support disjointness (negative `q` by the involution `t_{−q}(ξ) = t_q(ξ − 2qπ)`).
    pub checked_q: BTreeSet<i64>,
    pub norm_sq: Q2,
}

pub fn verify_wavelet(f: &StepFunction) -> Result<WaveletVerdict> {
    let norm_sq = f.norm_sq();
    let norm_ok = norm_sq == Q2::from_rational(crate::exact::int(2));

    let domain = IntervalSet::single(fold_domain());
    let rho_fn = rho(f)?;
    let rho_dev = rho_fn.first_deviation(&domain, &Q2::one());
    let rho_ok = rho_dev.is_none();

    let candidates = relevant_q(f)?;
    let mut failing_q = None;
    let mut tq_witness = None;
    for &q in candidates.keys() {
        let t = t_q(f, q)?;
        if let Some(first) = t.pieces.into_iter().next() {
            failing_q = Some(q);
            tq_witness = Some(first);
            break;
        }
    }
    let tq_ok = failing_q.is_none();

    Ok(WaveletVerdict {
        passed: norm_ok && rho_ok && tq_ok,
        norm_ok,
        rho_ok,
        tq_ok,
        failing_q,
        witness: rho_dev.or(tq_witness),
        checked_q: candidates.keys().copied().collect(),
        norm_sq,
    })
}

/// `|f̂| = χ_K`: every nonzero amplitude is `±1`.
pub fn is_msf(f: &StepFunction) -> bool {
    f.amplitudes().all(Q2::is_unimodular)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", content = "r")]
pub enum ClassLabel {
    #[serde(rename = "M_infinity")]
    MInfinity,
    #[serde(rename = "M_r")]
    M(u32),
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::MInfinity => write!(f, "M_inf"),
            ClassLabel::M(r) => write!(f, "M_{r}"),
        }
    }
}

/// Classes for wavelets only: MSF wavelets are `M_∞`; otherwise `M_r` with
/// `r` the least 2-adic valuation over the nonzero support shifts.
pub fn classify(f: &StepFunction) -> Result<ClassLabel> {
    let verdict = verify_wavelet(f)?;
    if !verdict.passed {
        return Err(Error::NotAWavelet(format!(
            "norm_ok={} rho_ok={} tq_ok={}",
            verdict.norm_ok, verdict.rho_ok, verdict.tq_ok
        )));
    }
    if is_msf(f) {
        return Ok(ClassLabel::MInfinity);
    }
    let profile = support_profile(f, None);
    profile
        .script_e
        .iter()
        .filter(|&&k| k != 0)
        .map(|&k| two_adic_valuation(k))
        .min()
        .map(ClassLabel::M)
        .ok_or(Error::Unclassifiable)
}
