mod common;

use common::{d_count, grid, set, tau_count, triangle_points};
use h2wave_core::exact::rat;
use h2wave_core::tiling::{d_profile, is_wavelet_set, tau_profile};
use h2wave_core::{
    dilation_equivalent, make_k_r, make_k_xy, shannon_set, translation_equivalent, IntervalSet,
    PiScalar,
};
use proptest::prelude::*;

fn domain_grid() -> Vec<PiScalar> {
    grid((2, 1), (4, 1), 840)
}

fn profile_matches_oracle(s: &IntervalSet) {
    let tp = tau_profile(s);
    let dp = d_profile(s).unwrap();
    for xi in domain_grid() {
        assert_eq!(
            tp.count_at(&xi),
            Some(tau_count(s, &xi)),
            "tau at {xi} for {s}"
        );
        assert_eq!(dp.count_at(&xi), Some(d_count(s, &xi)), "d at {xi} for {s}");
    }
}

#[test]
fn k1_profiles_against_counting_oracle() {
    profile_matches_oracle(&make_k_r(1).unwrap().set);
    profile_matches_oracle(&shannon_set());
}

#[test]
fn shifted_tile_against_oracle() {
    let s = set(&[((1, 1), (3, 1))]);
    profile_matches_oracle(&s);
    assert!(tau_profile(&s).is_identically(1));
    let dp = d_profile(&s).unwrap();
    assert_eq!(dp.count_at(&PiScalar::from_ratio(5, 2)), Some(2));
    assert_eq!(dp.count_at(&PiScalar::from_ratio(7, 2)), Some(1));
}

#[test]
fn five_interval_sample_against_oracle() {
    let s = make_k_xy(&PiScalar::from_ratio(3, 2), &PiScalar::from_ratio(8, 5)).unwrap();
    profile_matches_oracle(&s);
    assert!(is_wavelet_set(&s).unwrap().is_wavelet_set);
}

#[test]
fn profile_integral_is_measure() {
    for s in [
        make_k_r(2).unwrap().set,
        set(&[((1, 3), (17, 5)), ((9, 1), (19, 2))]),
        set(&[((-7, 2), (-1, 1)), ((5, 1), (6, 1))]),
    ] {
        assert_eq!(tau_profile(&s).integral(), s.measure());
    }
}

#[test]
fn wavelet_sets_have_measure_two_pi() {
    let mut sets = vec![shannon_set()];
    for r in 1..=5 {
        sets.push(make_k_r(r).unwrap().set);
    }
    for (x, y) in triangle_points(8) {
        sets.push(make_k_xy(&x, &y).unwrap());
    }
    for s in sets {
        assert!(is_wavelet_set(&s).unwrap().is_wavelet_set);
        assert_eq!(s.measure(), PiScalar::from_int(2));
    }
}

#[test]
fn equivalence_examples() {
    let k1 = make_k_r(1).unwrap().set;
    let sh = shannon_set();
    let w = translation_equivalent(&k1, &sh).expect("both tile by translation");
    assert!(w.is_valid_between(&k1, &sh));
    // K_1 and [2π,4π) are also dilation equivalent, so both are wavelet sets together
    let w = dilation_equivalent(&k1, &sh).unwrap().unwrap();
    assert!(w.is_valid_between(&k1, &sh));
    assert_eq!(
        is_wavelet_set(&k1).unwrap().is_wavelet_set,
        is_wavelet_set(&sh).unwrap().is_wavelet_set
    );
    assert!(translation_equivalent(&set(&[((2, 1), (3, 1))]), &sh).is_none());
    assert!(dilation_equivalent(&set(&[((2, 1), (3, 1))]), &sh)
        .unwrap()
        .is_none());
}

fn positive_set() -> impl Strategy<Value = IntervalSet> {
    prop::collection::vec((1i64..30, 1i64..8, 1i64..5), 1..5).prop_map(|v| {
        IntervalSet::canonicalize(
            v.into_iter()
                .map(|(lo, len, d)| (PiScalar::new(rat(lo, d)), PiScalar::new(rat(lo + len, d)))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn equivalence_reflexive_symmetric(a in positive_set(), b in positive_set()) {
        let w = translation_equivalent(&a, &a).unwrap();
        prop_assert!(w.is_valid_between(&a, &a));
        let w = dilation_equivalent(&a, &a).unwrap().unwrap();
        prop_assert!(w.is_valid_between(&a, &a));

        let ab = translation_equivalent(&a, &b);
        prop_assert_eq!(ab.is_some(), translation_equivalent(&b, &a).is_some());
        if let Some(w) = ab {
            prop_assert!(w.is_valid_between(&a, &b));
        }
        let ab = dilation_equivalent(&a, &b).unwrap();
        prop_assert_eq!(ab.is_some(), dilation_equivalent(&b, &a).unwrap().is_some());
        if let Some(w) = ab {
            prop_assert!(w.is_valid_between(&a, &b));
        }
    }

    #[test]
    fn moved_pieces_stay_equivalent(a in positive_set(), k in -4i64..4, j in -3i64..3) {
        // moving a set as a whole keeps it in its class; chain through a third set
        let b = a.translate(k);
        let c = b.translate(1);
        prop_assert!(translation_equivalent(&a, &b).is_some());
        prop_assert!(translation_equivalent(&b, &c).is_some());
        prop_assert!(translation_equivalent(&a, &c).is_some());
        let d = a.dilate(j);
        prop_assert!(dilation_equivalent(&a, &d).unwrap().unwrap().is_valid_between(&a, &d));
    }

    #[test]
    fn tau_integral_identity(a in positive_set()) {
        prop_assert_eq!(tau_profile(&a).integral(), a.measure());
    }
}
