//! Step functions with ℚ(√2) amplitudes on interval pieces, the non-MSF
//! wavelets `ψ_r` and `ψ_0`, and the shift combinatorics of their supports.

use std::collections::{BTreeMap, BTreeSet};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::constructions::{k_xy_intervals, make_k_r};
use crate::error::{Error, Result};
use crate::exact::{ceil_log2, floor_log2, int, PiScalar, Q2};
use crate::interval_set::{Interval, IntervalSet};
use crate::tiling::is_wavelet_set;

/// Real step function: value on each piece, zero elsewhere.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StepFunction {
    pieces: Vec<(Interval, Q2)>,
}

impl StepFunction {
    /// Pieces must be pairwise disjoint. Zero values are dropped and abutting
    /// pieces with equal value are merged.
    pub fn from_pieces<I: IntoIterator<Item = (Interval, Q2)>>(raw: I) -> Result<Self> {
        let mut v: Vec<(Interval, Q2)> = raw.into_iter().filter(|(_, q)| !q.is_zero()).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Interval, Q2)> = Vec::with_capacity(v.len());
        for (iv, q) in v {
            match out.last_mut() {
                Some((last, _)) if iv.lo() < last.hi() => {
                    return Err(Error::OverlappingPieces(iv.lo().to_string()));
                }
                Some((last, lq)) if iv.lo() == last.hi() && *lq == q => {
                    *last = Interval::new(last.lo().clone(), iv.hi().clone()).unwrap();
                }
                _ => out.push((iv, q)),
            }
        }
        Ok(StepFunction { pieces: out })
    }

    /// Value `q` on each set. The sets must be pairwise disjoint.
    pub fn from_sets<I: IntoIterator<Item = (IntervalSet, Q2)>>(raw: I) -> Result<Self> {
        StepFunction::from_pieces(raw.into_iter().flat_map(|(s, q)| {
            s.pieces()
                .iter()
                .cloned()
                .map(move |iv| (iv, q.clone()))
                .collect::<Vec<_>>()
        }))
    }

    pub fn indicator(s: &IntervalSet) -> Self {
        StepFunction {
            pieces: s.iter().map(|iv| (iv.clone(), Q2::one())).collect(),
        }
    }

    pub fn pieces(&self) -> &[(Interval, Q2)] {
        &self.pieces
    }

    pub fn value_at(&self, x: &PiScalar) -> Q2 {
        let i = self.pieces.partition_point(|(iv, _)| iv.hi() <= x);
        match self.pieces.get(i) {
            Some((iv, q)) if iv.contains(x) => q.clone(),
            _ => Q2::zero(),
        }
    }

    /// Value at a real frequency (radians), comparing against rounded endpoints.
    pub fn value_at_f64(&self, xi: f64) -> f64 {
        self.pieces
            .iter()
            .find(|(iv, _)| iv.lo().to_f64() <= xi && xi < iv.hi().to_f64())
            .map_or(0.0, |(_, q)| q.to_f64())
    }

    pub fn support(&self) -> IntervalSet {
        self.pieces.iter().map(|(iv, _)| iv.clone()).collect()
    }

    /// `∫|f|²` as a coefficient of π.
    pub fn norm_sq(&self) -> Q2 {
        self.pieces.iter().fold(Q2::zero(), |acc, (iv, q)| {
            acc + q.abs_sq().scale(iv.length().coeff())
        })
    }

    pub fn amplitudes(&self) -> impl Iterator<Item = &Q2> {
        self.pieces.iter().map(|(_, q)| q)
    }

    /// The same function with `value` on `on` instead of its current value there.
    pub fn with_value_on(&self, on: &Interval, value: Q2) -> Result<Self> {
        let mask = IntervalSet::single(on.clone());
        let mut raw: Vec<(Interval, Q2)> = Vec::new();
        for (iv, q) in &self.pieces {
            for rest in IntervalSet::single(iv.clone()).subtract(&mask).pieces() {
                raw.push((rest.clone(), q.clone()));
            }
        }
        raw.push((on.clone(), value));
        StepFunction::from_pieces(raw)
    }
}

impl Serialize for StepFunction {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.pieces.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for StepFunction {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<(Interval, Q2)>::deserialize(de)?;
        StepFunction::from_pieces(raw).map_err(D::Error::custom)
    }
}

/// The non-MSF wavelet `ψ_r`, `r >= 1`:
/// `1/√2` on `I_r ∪ 2^{−1}I_r ∪ (2^{−1}I_r + 2^{r+1}π)`, `−1/√2` on
/// `I_r + 2^{r+2}π`, `1` on `J_r \ (2^{−1}I_r + 2^{r+1}π)`.
pub fn make_psi_r(r: u32) -> Result<StepFunction> {
    let kr = make_k_r(r)?;
    let s = Q2::inv_sqrt2();
    let half = kr.i_r.dilate(-1);
    let moved = half.translate(1 << r);
    let neg = kr.i_r.translate(1 << (r + 1));
    let ones = IntervalSet::single(kr.j_r.clone()).subtract(&IntervalSet::single(moved.clone()));
    StepFunction::from_sets([
        (
            IntervalSet::from_intervals([kr.i_r, half, moved]),
            s.clone(),
        ),
        (IntervalSet::single(neg), -s),
        (ones, Q2::one()),
    ])
}

/// The five-interval analogue `ψ_0` built on `K_{x,y}` with `I_3 = [2y, x+2π)`.
///
/// Where the defining cases overlap (`I_3 ⊂ K_{x,y}`) the `1/√2` case wins,
/// which is what makes `‖ψ̂_0‖² = 2π`.
pub fn make_psi_0(x: &PiScalar, y: &PiScalar) -> Result<StepFunction> {
    let [_, _, i3, i4, _] = k_xy_intervals(x, y)?;
    let k = crate::constructions::make_k_xy(x, y)?;
    let s = Q2::inv_sqrt2();
    let half = i3.dilate(-1);
    let moved = half.translate(1);
    let moved_set = IntervalSet::single(moved.clone());
    assert!(
        moved_set.is_subset(&IntervalSet::single(i4.clone())) && moved.length() < i4.length(),
        "2^-1 I_3 + 2pi must be a proper subset of I_4"
    );
    let neg = i3.translate(2);
    let ones = k.subtract(&IntervalSet::from_intervals([i3.clone(), moved.clone()]));
    StepFunction::from_sets([
        (IntervalSet::from_intervals([i3, half, moved]), s.clone()),
        (IntervalSet::single(neg), -s),
        (ones, Q2::one()),
    ])
}

/// `χ_s`, provided `s` passes the wavelet-set test.
pub fn indicator_wavelet(s: &IntervalSet) -> Result<StepFunction> {
    let check = is_wavelet_set(s)?;
    if !check.is_wavelet_set {
        return Err(Error::NotAWaveletSet(format!(
            "translation defects {}/{}, dilation defects {}/{}",
            check.translation.overlap_defect,
            check.translation.gap_defect,
            check.dilation.overlap_defect,
            check.dilation.gap_defect
        )));
    }
    Ok(StepFunction::indicator(s))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportProfile {
    pub e_set: IntervalSet,
    /// `E(k) = {ξ ∈ E : ξ + 2kπ ∈ E}` for every `k` where it has positive measure.
    #[serde(rename = "ek")]
    pub ek_map: BTreeMap<i64, IntervalSet>,
    pub script_e: BTreeSet<i64>,
}

/// Smallest `k` bound such that `|k| > bound` cannot give `E ∩ (E − 2kπ)` positive measure.
pub fn shift_bound(s: &IntervalSet) -> i64 {
    match s.hull() {
        None => 0,
        Some(h) => {
            let half = h.length().coeff() / int(2);
            num_traits::ToPrimitive::to_i64(&half.ceil().to_integer()).expect("support too wide")
        }
    }
}

pub fn support_profile(f: &StepFunction, k_bound: Option<i64>) -> SupportProfile {
    let e = f.support();
    let bound = k_bound.unwrap_or_else(|| shift_bound(&e));
    let mut ek_map = BTreeMap::new();
    for k in -bound..=bound {
        let ek = e.intersect(&e.translate(-k));
        if !ek.is_empty() {
            ek_map.insert(k, ek);
        }
    }
    let script_e = ek_map.keys().copied().collect();
    SupportProfile {
        e_set: e,
        ek_map,
        script_e,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum SupportPiece {
    /// `2^{−1}I_r`
    HalfI,
    /// `I_r`
    I,
    /// `2^{−1}I_r + 2^{r+1}π`
    HalfIShifted,
    /// `J_r \ (2^{−1}I_r + 2^{r+1}π)`
    JRest,
    /// `I_r + 2^{r+2}π`
    IShifted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftRow {
    pub piece: SupportPiece,
    pub set: IntervalSet,
    /// `{k : (P + 2kπ) ∩ E_r` has positive measure`}`
    pub k_set: BTreeSet<i64>,
    /// `{j : 2^j P ∩ E_r` has positive measure`}`
    pub j_set: BTreeSet<i64>,
    /// Every listed translate and dilate of the piece lies inside `E_r`.
    pub contained: bool,
}

/// For each of the five pieces of `supp ψ̂_r`, which `2kπ`-shifts and `2^j`
/// dilates land back in the support.
pub fn support_shift_table(r: u32) -> Result<Vec<ShiftRow>> {
    let kr = make_k_r(r)?;
    let e_r = make_psi_r(r)?.support();
    let half = kr.i_r.dilate(-1);
    let moved = half.translate(1 << r);
    let pieces = [
        (SupportPiece::HalfI, IntervalSet::single(half)),
        (SupportPiece::I, IntervalSet::single(kr.i_r.clone())),
        (
            SupportPiece::HalfIShifted,
            IntervalSet::single(moved.clone()),
        ),
        (
            SupportPiece::JRest,
            IntervalSet::single(kr.j_r.clone()).subtract(&IntervalSet::single(moved)),
        ),
        (
            SupportPiece::IShifted,
            IntervalSet::single(kr.i_r.translate(1 << (r + 1))),
        ),
    ];
    let (emin, emax) = (e_r.min().unwrap().clone(), e_r.max().unwrap().clone());
    let mut rows = Vec::with_capacity(5);
    for (piece, set) in pieces {
        let (pmin, pmax) = (set.min().unwrap(), set.max().unwrap());
        let to_i64 = |q: num_rational::BigRational| {
            num_traits::ToPrimitive::to_i64(&q.to_integer()).unwrap()
        };
        let k_lo = to_i64(((emin.coeff() - pmax.coeff()) / int(2)).floor());
        let k_hi = to_i64(((emax.coeff() - pmin.coeff()) / int(2)).ceil());
        let j_lo = floor_log2(&(emin.coeff() / pmax.coeff()));
        let j_hi = ceil_log2(&(emax.coeff() / pmin.coeff()));

        let mut contained = true;
        let mut k_set = BTreeSet::new();
        for k in k_lo..=k_hi {
            let moved = set.translate(k);
            if moved.overlaps(&e_r) {
                k_set.insert(k);
                contained &= moved.is_subset(&e_r);
            }
        }
        let mut j_set = BTreeSet::new();
        for j in j_lo..=j_hi {
            let scaled = set.dilate(j);
            if scaled.overlaps(&e_r) {
                j_set.insert(j);
                contained &= scaled.is_subset(&e_r);
            }
        }
        rows.push(ShiftRow {
            piece,
            set,
            k_set,
            j_set,
            contained,
        });
    }
    Ok(rows)
}
