//! Translation and dilation folds into the fundamental domain `[2π, 4π)`,
//! exact multiplicity profiles, the wavelet-set test, and the piecewise
//! translation/dilation equivalence of sets.
//!
//! The translation fold τ sends ξ to the unique `ξ + 2kπ` in `[2π, 4π)`; the
//! dyadic fold d sends ξ > 0 to the unique `2^j ξ` there. A set tiles ℝ by
//! `2π`-translates iff its τ-multiplicity is identically 1 on the domain, and
//! tiles ℝ⁺ by dyadic dilates iff its d-multiplicity is.

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{ceil_log2, floor_log2, int, PiScalar, Rational};
use crate::interval_set::{Interval, IntervalSet};

/// `[2π, 4π)`.
pub fn fold_domain() -> Interval {
    Interval::from_ratios((2, 1), (4, 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Fold {
    Translation,
    Dilation,
}

/// A piece of a set carried into the fold domain. `index` is the `k` (for
/// translation, image = source + 2kπ) or `j` (for dilation, image = 2^j·source).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fragment {
    pub image: Interval,
    pub index: i64,
}

fn floor_i64(q: &Rational) -> i64 {
    q.floor()
        .to_integer()
        .to_i64()
        .expect("fold index overflows i64")
}

fn ceil_i64(q: &Rational) -> i64 {
    q.ceil()
        .to_integer()
        .to_i64()
        .expect("fold index overflows i64")
}

pub fn tau_fragments(s: &IntervalSet) -> Vec<Fragment> {
    tau_fragments_of(s.iter())
}

fn tau_fragments_of<'a>(pieces: impl IntoIterator<Item = &'a Interval>) -> Vec<Fragment> {
    let dom = fold_domain();
    let mut out = Vec::new();
    for p in pieces {
        // lo + 2k < 4 and hi + 2k > 2
        let k_min = floor_i64(&((int(2) - p.hi().coeff()) / int(2))) + 1;
        let k_max = ceil_i64(&((int(4) - p.lo().coeff()) / int(2))) - 1;
        for k in k_min..=k_max {
            if let Some(image) = p.translate(k).intersect(&dom) {
                out.push(Fragment { image, index: k });
            }
        }
    }
    out
}

pub fn d_fragments(s: &IntervalSet) -> Result<Vec<Fragment>> {
    d_fragments_of(s.iter())
}

fn d_fragments_of<'a>(
    pieces: impl IntoIterator<Item = &'a Interval> + Clone,
) -> Result<Vec<Fragment>> {
    if let Some(p) = pieces.clone().into_iter().find(|p| !p.lo().is_positive()) {
        return Err(Error::NonPositiveSupport(p.lo().to_string()));
    }
    let dom = fold_domain();
    let mut out = Vec::new();
    for p in pieces {
        // 2^j lo < 4 and 2^j hi > 2
        let j_min = floor_log2(&(int(2) / p.hi().coeff())) + 1;
        let j_max = ceil_log2(&(int(4) / p.lo().coeff())) - 1;
        for j in j_min..=j_max {
            if let Some(image) = p.dilate(j).intersect(&dom) {
                out.push(Fragment { image, index: j });
            }
        }
    }
    Ok(out)
}

/// Piecewise-constant count function on the fold domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityProfile {
    pub domain: Interval,
    pub steps: Vec<(Interval, u64)>,
}

impl MultiplicityProfile {
    fn from_fragments(frags: &[Fragment]) -> Self {
        let domain = fold_domain();
        let mut events: Vec<(&PiScalar, i64)> = Vec::with_capacity(2 * frags.len() + 2);
        for f in frags {
            events.push((f.image.lo(), 1));
            events.push((f.image.hi(), -1));
        }
        events.push((domain.lo(), 0));
        events.push((domain.hi(), 0));
        events.sort();

        let mut steps: Vec<(Interval, u64)> = Vec::new();
        let mut count: i64 = 0;
        let mut i = 0;
        while i < events.len() {
            let x = events[i].0;
            while i < events.len() && events[i].0 == x {
                count += events[i].1;
                i += 1;
            }
            let Some(next) = events.get(i).map(|e| e.0) else {
                break;
            };
            let Some(cell) = Interval::new(x.clone(), next.clone()) else {
                continue;
            };
            let c = count as u64;
            match steps.last_mut() {
                Some((last, lc)) if *lc == c => {
                    *last = Interval::new(last.lo().clone(), next.clone()).unwrap();
                }
                _ => steps.push((cell, c)),
            }
        }
        MultiplicityProfile { domain, steps }
    }

    pub fn count_at(&self, x: &PiScalar) -> Option<u64> {
        self.steps
            .iter()
            .find(|(iv, _)| iv.contains(x))
            .map(|(_, c)| *c)
    }

    pub fn is_identically(&self, c: u64) -> bool {
        self.steps.len() == 1 && self.steps[0].1 == c
    }

    /// `∫ count` over the domain.
    pub fn integral(&self) -> PiScalar {
        self.steps
            .iter()
            .map(|(iv, c)| iv.length().scale(&int(*c as i64)))
            .sum()
    }

    pub fn report(&self) -> TilingReport {
        let mut r = TilingReport {
            overlap_defect: PiScalar::zero(),
            gap_defect: PiScalar::zero(),
            witness_overlap: None,
            witness_gap: None,
        };
        for (iv, c) in &self.steps {
            match *c {
                0 => {
                    r.gap_defect += &iv.length();
                    r.witness_gap.get_or_insert_with(|| iv.clone());
                }
                1 => {}
                c => {
                    r.overlap_defect += &iv.length().scale(&int(c as i64 - 1));
                    r.witness_overlap.get_or_insert_with(|| iv.clone());
                }
            }
        }
        r
    }
}

/// Counts `#{k : ξ − 2kπ ∈ s}` for ξ in `[2π, 4π)`.
pub fn tau_profile(s: &IntervalSet) -> MultiplicityProfile {
    MultiplicityProfile::from_fragments(&tau_fragments(s))
}

/// Counts `#{j : 2^{−j}ξ ∈ s}` for ξ in `[2π, 4π)`.
pub fn d_profile(s: &IntervalSet) -> Result<MultiplicityProfile> {
    Ok(MultiplicityProfile::from_fragments(&d_fragments(s)?))
}

/// Exact over- and under-coverage of a fold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TilingReport {
    pub overlap_defect: PiScalar,
    pub gap_defect: PiScalar,
    pub witness_overlap: Option<Interval>,
    pub witness_gap: Option<Interval>,
}

impl TilingReport {
    pub fn is_exact(&self) -> bool {
        self.overlap_defect.is_zero() && self.gap_defect.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WaveletSetCheck {
    pub is_wavelet_set: bool,
    pub translation: TilingReport,
    pub dilation: TilingReport,
}

/// Both folds must be partitions: translates tile ℝ and dilates tile ℝ⁺.
pub fn is_wavelet_set(s: &IntervalSet) -> Result<WaveletSetCheck> {
    check_pieces(s.pieces())
}

/// [`is_wavelet_set`] for a list of intervals that may overlap; each piece is
/// counted with multiplicity, so overlapping pieces show up as overlap defect.
pub fn check_pieces(pieces: &[Interval]) -> Result<WaveletSetCheck> {
    let dilation = MultiplicityProfile::from_fragments(&d_fragments_of(pieces)?).report();
    let translation = MultiplicityProfile::from_fragments(&tau_fragments_of(pieces)).report();
    Ok(WaveletSetCheck {
        is_wavelet_set: translation.is_exact() && dilation.is_exact(),
        translation,
        dilation,
    })
}

/// Explicit finite partition of the source set together with the index that
/// carries each part into the target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceWitness {
    pub fold: Fold,
    pub parts: Vec<(Interval, i64)>,
}

impl EquivalenceWitness {
    pub fn image_of(&self, part: &Interval, index: i64) -> Interval {
        match self.fold {
            Fold::Translation => part.translate(index),
            Fold::Dilation => part.dilate(index),
        }
    }

    /// The parts partition `a` and their images partition `b`.
    pub fn is_valid_between(&self, a: &IntervalSet, b: &IntervalSet) -> bool {
        let src: IntervalSet = self.parts.iter().map(|(p, _)| p.clone()).collect();
        let src_sum: PiScalar = self.parts.iter().map(|(p, _)| p.length()).sum();
        let img: Vec<Interval> = self
            .parts
            .iter()
            .map(|(p, i)| self.image_of(p, *i))
            .collect();
        let img_sum: PiScalar = img.iter().map(Interval::length).sum();
        let img: IntervalSet = img.into_iter().collect();
        src == *a && src_sum == a.measure() && img == *b && img_sum == b.measure()
    }
}

fn unfold(fold: Fold, cell: &Interval, index: i64) -> Interval {
    match fold {
        Fold::Translation => cell.translate(-index),
        Fold::Dilation => cell.dilate(-index),
    }
}

fn equivalent(fold: Fold, fa: &[Fragment], fb: &[Fragment]) -> Option<EquivalenceWitness> {
    let mut breaks: Vec<&PiScalar> = fa
        .iter()
        .chain(fb)
        .flat_map(|f| [f.image.lo(), f.image.hi()])
        .collect();
    breaks.sort();
    breaks.dedup();

    let mut parts: Vec<(Interval, i64)> = Vec::new();
    for w in breaks.windows(2) {
        let cell = Interval::new(w[0].clone(), w[1].clone()).unwrap();
        let covering = |frags: &[Fragment]| -> Vec<i64> {
            let mut v: Vec<i64> = frags
                .iter()
                .filter(|f| f.image.lo() <= cell.lo() && cell.hi() <= f.image.hi())
                .map(|f| f.index)
                .collect();
            v.sort_unstable();
            v
        };
        let ia = covering(fa);
        let ib = covering(fb);
        if ia.len() != ib.len() {
            return None;
        }
        // match layers in index order; each pair moves a sub-piece of `a` onto one of `b`
        for (ka, kb) in ia.into_iter().zip(ib) {
            parts.push((unfold(fold, &cell, ka), ka - kb));
        }
    }

    parts.sort_by(|x, y| x.0.cmp(&y.0));
    let mut merged: Vec<(Interval, i64)> = Vec::with_capacity(parts.len());
    for (iv, idx) in parts {
        match merged.last_mut() {
            Some((last, li)) if *li == idx && last.hi() == iv.lo() => {
                *last = Interval::new(last.lo().clone(), iv.hi().clone()).unwrap();
            }
            _ => merged.push((iv, idx)),
        }
    }
    Some(EquivalenceWitness {
        fold,
        parts: merged,
    })
}

/// `Some(witness)` iff `a` and `b` have equal τ-multiplicity a.e.
pub fn translation_equivalent(a: &IntervalSet, b: &IntervalSet) -> Option<EquivalenceWitness> {
    equivalent(Fold::Translation, &tau_fragments(a), &tau_fragments(b))
}

/// `Ok(Some(witness))` iff `a` and `b` have equal d-multiplicity a.e.
pub fn dilation_equivalent(a: &IntervalSet, b: &IntervalSet) -> Result<Option<EquivalenceWitness>> {
    Ok(equivalent(
        Fold::Dilation,
        &d_fragments(a)?,
        &d_fragments(b)?,
    ))
}
