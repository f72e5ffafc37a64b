//! Finite unions of half-open intervals `[lo, hi)` with endpoints in ℚ·π.
//!
//! An [`IntervalSet`] is always canonical: pieces are sorted, nonempty, and
//! separated by strictly positive gaps. Two sets are equal up to a null set
//! exactly when their canonical forms are structurally equal, so the derived
//! `PartialEq` is the right notion of set equality throughout the crate.

use std::fmt;

use serde::de::Error as _;
use serde::ser::SerializeTuple;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exact::{format_rational, int, PiScalar, Rational};

/// Half-open interval `[lo, hi)` with `lo < hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    lo: PiScalar,
    hi: PiScalar,
}

impl Interval {
    /// `None` when the interval would be empty.
    pub fn new(lo: PiScalar, hi: PiScalar) -> Option<Self> {
        (lo < hi).then_some(Interval { lo, hi })
    }

    /// Interval from coefficient pairs `(n0/d0)π .. (n1/d1)π`. Panics if empty;
    /// meant for literals.
    pub fn from_ratios(lo: (i64, i64), hi: (i64, i64)) -> Self {
        Interval::new(
            PiScalar::from_ratio(lo.0, lo.1),
            PiScalar::from_ratio(hi.0, hi.1),
        )
        .expect("empty interval literal")
    }

    pub fn lo(&self) -> &PiScalar {
        &self.lo
    }

    pub fn hi(&self) -> &PiScalar {
        &self.hi
    }

    pub fn length(&self) -> PiScalar {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &PiScalar) -> bool {
        &self.lo <= x && x < &self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        Interval::new(lo, hi)
    }

    pub fn translate(&self, k: i64) -> Interval {
        Interval {
            lo: self.lo.shift_2pi(k),
            hi: self.hi.shift_2pi(k),
        }
    }

    /// Shift by an arbitrary `PiScalar` offset.
    pub fn offset(&self, by: &PiScalar) -> Interval {
        Interval {
            lo: &self.lo + by,
            hi: &self.hi + by,
        }
    }

    pub fn dilate(&self, j: i64) -> Interval {
        Interval {
            lo: self.lo.scale_pow2(j),
            hi: self.hi.scale_pow2(j),
        }
    }

    /// Multiply by a positive rational.
    pub fn scale(&self, factor: &Rational) -> Interval {
        debug_assert!(factor > &Rational::from_integer(0.into()));
        Interval {
            lo: self.lo.scale(factor),
            hi: self.hi.scale(factor),
        }
    }

    pub fn midpoint(&self) -> PiScalar {
        PiScalar::new((self.lo.coeff() + self.hi.coeff()) / int(2))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.lo, self.hi)
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut t = ser.serialize_tuple(2)?;
        t.serialize_element(&format_rational(self.lo.coeff()))?;
        t.serialize_element(&format_rational(self.hi.coeff()))?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let (lo, hi) = <(String, String)>::deserialize(de)?;
        let lo = PiScalar::parse(&lo).map_err(D::Error::custom)?;
        let hi = PiScalar::parse(&hi).map_err(D::Error::custom)?;
        Interval::new(lo, hi).ok_or_else(|| D::Error::custom("empty interval"))
    }
}

/// Canonical finite union of half-open intervals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntervalSet {
    pieces: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet::default()
    }

    pub fn single(iv: Interval) -> Self {
        IntervalSet { pieces: vec![iv] }
    }

    /// Canonical form of an arbitrary list of `(lo, hi)` pairs. Degenerate
    /// pairs are dropped; overlapping and abutting ones are merged.
    pub fn canonicalize<I>(raw: I) -> Self
    where
        I: IntoIterator<Item = (PiScalar, PiScalar)>,
    {
        IntervalSet::from_intervals(raw.into_iter().filter_map(|(lo, hi)| Interval::new(lo, hi)))
    }

    pub fn from_intervals<I: IntoIterator<Item = Interval>>(raw: I) -> Self {
        let mut v: Vec<Interval> = raw.into_iter().collect();
        v.sort();
        let mut out: Vec<Interval> = Vec::with_capacity(v.len());
        for iv in v {
            match out.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => out.push(iv),
            }
        }
        IntervalSet { pieces: out }
    }

    pub fn pieces(&self) -> &[Interval] {
        &self.pieces
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Interval> {
        self.pieces.iter()
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn min(&self) -> Option<&PiScalar> {
        self.pieces.first().map(|p| &p.lo)
    }

    pub fn max(&self) -> Option<&PiScalar> {
        self.pieces.last().map(|p| &p.hi)
    }

    /// Smallest interval containing the set.
    pub fn hull(&self) -> Option<Interval> {
        Some(Interval {
            lo: self.min()?.clone(),
            hi: self.max()?.clone(),
        })
    }

    pub fn contains(&self, x: &PiScalar) -> bool {
        let i = self.pieces.partition_point(|p| &p.hi <= x);
        self.pieces.get(i).is_some_and(|p| p.contains(x))
    }

    pub fn measure(&self) -> PiScalar {
        self.pieces.iter().map(Interval::length).sum()
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        self.combine(other, |a, b| a && b)
    }

    pub fn subtract(&self, other: &IntervalSet) -> IntervalSet {
        self.combine(other, |a, b| a && !b)
    }

    pub fn symmetric_difference(&self, other: &IntervalSet) -> IntervalSet {
        self.combine(other, |a, b| a != b)
    }

    pub fn intersect_interval(&self, iv: &Interval) -> IntervalSet {
        self.intersect(&IntervalSet::single(iv.clone()))
    }

    /// `self ⊂ other` up to a null set.
    pub fn is_subset(&self, other: &IntervalSet) -> bool {
        self.subtract(other).is_empty()
    }

    /// True when the two sets meet in positive measure.
    pub fn overlaps(&self, other: &IntervalSet) -> bool {
        !self.intersect(other).is_empty()
    }

    /// Shift by `2kπ`.
    pub fn translate(&self, k: i64) -> IntervalSet {
        IntervalSet {
            pieces: self.pieces.iter().map(|p| p.translate(k)).collect(),
        }
    }

    pub fn offset(&self, by: &PiScalar) -> IntervalSet {
        IntervalSet {
            pieces: self.pieces.iter().map(|p| p.offset(by)).collect(),
        }
    }

    /// Multiply by `2^j`.
    pub fn dilate(&self, j: i64) -> IntervalSet {
        IntervalSet {
            pieces: self.pieces.iter().map(|p| p.dilate(j)).collect(),
        }
    }

    /// Endpoint sweep over the merged, deduplicated breakpoints of both sets.
    /// Between consecutive breakpoints membership in each operand is constant.
    fn combine(&self, other: &IntervalSet, keep: impl Fn(bool, bool) -> bool) -> IntervalSet {
        let breaks = merge_breakpoints(&self.pieces, &other.pieces);
        let (mut ia, mut ib) = (0usize, 0usize);
        let mut out: Vec<Interval> = Vec::new();
        for w in breaks.windows(2) {
            let (p, q) = (w[0], w[1]);
            while ia < self.pieces.len() && &self.pieces[ia].hi <= p {
                ia += 1;
            }
            while ib < other.pieces.len() && &other.pieces[ib].hi <= p {
                ib += 1;
            }
            let in_a = self.pieces.get(ia).is_some_and(|iv| &iv.lo <= p);
            let in_b = other.pieces.get(ib).is_some_and(|iv| &iv.lo <= p);
            if !keep(in_a, in_b) {
                continue;
            }
            match out.last_mut() {
                Some(last) if &last.hi == p => last.hi = q.clone(),
                _ => out.push(Interval {
                    lo: p.clone(),
                    hi: q.clone(),
                }),
            }
        }
        IntervalSet { pieces: out }
    }
}

fn merge_breakpoints<'a>(a: &'a [Interval], b: &'a [Interval]) -> Vec<&'a PiScalar> {
    let ea = a.iter().flat_map(|p| [&p.lo, &p.hi]);
    let eb = b.iter().flat_map(|p| [&p.lo, &p.hi]);
    let mut out: Vec<&PiScalar> = Vec::with_capacity(2 * (a.len() + b.len()));
    let mut ea = ea.peekable();
    let mut eb = eb.peekable();
    loop {
        let next = match (ea.peek(), eb.peek()) {
            (Some(x), Some(y)) => {
                if x <= y {
                    ea.next()
                } else {
                    eb.next()
                }
            }
            (Some(_), None) => ea.next(),
            (None, Some(_)) => eb.next(),
            (None, None) => break,
        };
        let next = next.unwrap();
        if out.last() != Some(&next) {
            out.push(next);
        }
    }
    out
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return write!(f, "∅");
        }
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl Serialize for IntervalSet {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        self.pieces.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for IntervalSet {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = Vec::<(String, String)>::deserialize(de)?;
        let mut pairs = Vec::with_capacity(raw.len());
        for (lo, hi) in raw {
            let lo = PiScalar::parse(&lo).map_err(D::Error::custom)?;
            let hi = PiScalar::parse(&hi).map_err(D::Error::custom)?;
            pairs.push((lo, hi));
        }
        Ok(IntervalSet::canonicalize(pairs))
    }
}

impl FromIterator<Interval> for IntervalSet {
    fn from_iter<T: IntoIterator<Item = Interval>>(iter: T) -> Self {
        IntervalSet::from_intervals(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: (i64, i64), hi: (i64, i64)) -> Interval {
        Interval::from_ratios(lo, hi)
    }

    fn p(n: i64, d: i64) -> PiScalar {
        PiScalar::from_ratio(n, d)
    }

    #[test]
    fn abutting_pieces_merge() {
        let s = IntervalSet::canonicalize([(p(2, 1), p(3, 1)), (p(3, 1), p(4, 1))]);
        assert_eq!(s, IntervalSet::single(iv((2, 1), (4, 1))));
    }

    #[test]
    fn unordered_input_sorted() {
        let s = IntervalSet::canonicalize([(p(4, 1), p(16, 3)), (p(4, 3), p(2, 1))]);
        assert_eq!(s.pieces(), &[iv((4, 3), (2, 1)), iv((4, 1), (16, 3))]);
    }

    #[test]
    fn degenerate_dropped() {
        assert!(IntervalSet::canonicalize([(p(1, 1), p(1, 1))]).is_empty());
        assert!(IntervalSet::canonicalize([(p(2, 1), p(1, 1))]).is_empty());
    }

    #[test]
    fn subtract_half_interval_from_j1() {
        let j1 = IntervalSet::single(iv((4, 1), (16, 3)));
        let m = IntervalSet::single(iv((14, 3), (5, 1)));
        assert_eq!(
            j1.subtract(&m).pieces(),
            &[iv((4, 1), (14, 3)), iv((5, 1), (16, 3))]
        );
    }

    #[test]
    fn translate_and_dilate_pieces() {
        let i1 = IntervalSet::single(iv((4, 3), (2, 1)));
        assert_eq!(i1.translate(4), IntervalSet::single(iv((28, 3), (10, 1))));
        assert_eq!(i1.dilate(-1), IntervalSet::single(iv((2, 3), (1, 1))));
        assert_eq!(i1.translate(0), i1);
        assert_eq!(i1.dilate(0), i1);
        assert_eq!(i1.dilate(3).measure(), p(16, 3));
    }

    #[test]
    fn measures() {
        let k1 = IntervalSet::from_intervals([iv((4, 3), (2, 1)), iv((4, 1), (16, 3))]);
        assert_eq!(k1.measure(), p(2, 1));
        assert_eq!(IntervalSet::empty().measure(), p(0, 1));
        assert_eq!(IntervalSet::single(iv((2, 1), (4, 1))).measure(), p(2, 1));
    }

    #[test]
    fn half_open_membership() {
        let s = IntervalSet::from_intervals([iv((1, 1), (2, 1)), iv((3, 1), (4, 1))]);
        assert!(s.contains(&p(1, 1)));
        assert!(!s.contains(&p(2, 1)));
        assert!(s.contains(&p(7, 2)));
        assert!(!s.contains(&p(4, 1)));
        assert!(!s.contains(&p(0, 1)));
    }

    #[test]
    fn json_pairs() {
        let k1 = IntervalSet::from_intervals([iv((4, 3), (2, 1)), iv((4, 1), (16, 3))]);
        let text = serde_json::to_string(&k1).unwrap();
        assert_eq!(text, r#"[["4/3","2"],["4","16/3"]]"#);
        let back: IntervalSet = serde_json::from_str(&text).unwrap();
        assert_eq!(back, k1);
    }
}
