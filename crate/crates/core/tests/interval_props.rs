mod common;

use common::{grid, same_on_grid};
use h2wave_core::exact::rat;
use h2wave_core::{IntervalSet, PiScalar};
use proptest::prelude::*;

fn raw_pairs() -> impl Strategy<Value = Vec<(PiScalar, PiScalar)>> {
    prop::collection::vec((-24i64..24, -3i64..12, 1i64..7), 0..7).prop_map(|v| {
        v.into_iter()
            .map(|(lo, len, d)| (PiScalar::new(rat(lo, d)), PiScalar::new(rat(lo + len, d))))
            .collect()
    })
}

fn small_set() -> impl Strategy<Value = IntervalSet> {
    raw_pairs().prop_map(IntervalSet::canonicalize)
}

fn probe_points() -> &'static [PiScalar] {
    // denominators up to 6 divide 60, so cell midpoints of a 1/120 grid never hit an endpoint
    static PTS: std::sync::OnceLock<Vec<PiScalar>> = std::sync::OnceLock::new();
    PTS.get_or_init(|| grid((-30, 1), (30, 1), 7200))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_is_normal(raw in raw_pairs()) {
        let s = IntervalSet::canonicalize(raw.clone());
        let mut rev = raw.clone();
        rev.reverse();
        prop_assert_eq!(IntervalSet::canonicalize(rev), s.clone());
        let again = IntervalSet::canonicalize(s.iter().map(|p| (p.lo().clone(), p.hi().clone())));
        prop_assert_eq!(&again, &s);
        for w in s.pieces().windows(2) {
            prop_assert!(w[0].hi() < w[1].lo());
        }
    }

    #[test]
    fn boolean_ops_match_membership(a in small_set(), b in small_set()) {
        let (u, i, d) = (a.union(&b), a.intersect(&b), a.subtract(&b));
        for x in probe_points().iter().step_by(7) {
            let (ina, inb) = (a.contains(x), b.contains(x));
            prop_assert_eq!(u.contains(x), ina || inb);
            prop_assert_eq!(i.contains(x), ina && inb);
            prop_assert_eq!(d.contains(x), ina && !inb);
        }
    }

    #[test]
    fn de_morgan(a in small_set(), b in small_set(), c in small_set()) {
        prop_assert_eq!(a.subtract(&b.union(&c)), a.subtract(&b).intersect(&a.subtract(&c)));
        prop_assert_eq!(a.subtract(&b.intersect(&c)), a.subtract(&b).union(&a.subtract(&c)));
        prop_assert_eq!(a.intersect(&a), a.clone());
        prop_assert!(a.subtract(&a).is_empty());
    }

    #[test]
    fn measure_additive(a in small_set(), b in small_set()) {
        let b = b.subtract(&a);
        prop_assert_eq!(a.union(&b).measure(), a.measure() + b.measure());
        // inclusion-exclusion in general
        prop_assert_eq!(
            a.union(&b).measure() + a.intersect(&b).measure(),
            a.measure() + b.measure()
        );
    }

    #[test]
    fn translate_dilate_commute(a in small_set(), k in -5i64..5, j in 0i64..4) {
        prop_assert_eq!(a.translate(k).dilate(j), a.dilate(j).translate((1 << j) * k));
        prop_assert_eq!(a.translate(k).translate(-k), a.clone());
        prop_assert_eq!(a.dilate(j).measure(), a.measure().scale_pow2(j));
    }

    #[test]
    fn json_round_trip(a in small_set()) {
        let text = serde_json::to_string(&a).unwrap();
        let back: IntervalSet = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn subtract_example_against_grid() {
    let j1 = common::set(&[((4, 1), (16, 3))]);
    let m = common::set(&[((14, 3), (5, 1))]);
    let expected = common::set(&[((4, 1), (14, 3)), ((5, 1), (16, 3))]);
    assert_eq!(j1.subtract(&m), expected);
    assert!(same_on_grid(
        &j1.subtract(&m),
        &expected,
        &grid((3, 1), (6, 1), 3000)
    ));
}
