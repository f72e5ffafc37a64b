mod common;

use std::f64::consts::PI;

use common::iv;
use h2wave_core::exact::rat;
use h2wave_core::numeric::{integrate, quad_inner_product, GRAM_TOL, QUADRATURE_TOL};
use h2wave_core::{
    gram, inner_product, make_k_r, make_psi_0, make_psi_r, origin_probe, sample_time, shannon_set,
    IntervalSet, PiScalar, StepFunction, Q2,
};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn mixed() -> StepFunction {
    StepFunction::from_pieces([
        (iv((1, 2), (3, 2)), Q2::from_rational(rat(1, 2))),
        (iv((5, 2), (4, 1)), Q2::inv_sqrt2()),
        (iv((9, 1), (21, 2)), Q2::new(rat(1, 3), rat(-1, 4))),
    ])
    .unwrap()
}

#[test]
fn samples_match_direct_quadrature() {
    for f in [make_psi_r(1).unwrap(), make_psi_r(3).unwrap(), mixed()] {
        for x in [0.5, -1.25, 3.0, 17.0] {
            let s = sample_time(&f, &[x])[0].value();
            let q: Complex64 = f
                .pieces()
                .iter()
                .map(|(p, v)| {
                    let g = |xi: f64| Complex64::from_polar(v.to_f64(), xi * x);
                    integrate(g, p.lo().to_f64(), p.hi().to_f64(), 1e-12)
                })
                .sum::<Complex64>()
                / (2.0 * PI);
            assert!((s - q).norm() < 1e-8, "x={x}: {s} vs {q}");
        }
    }
}

#[test]
fn value_at_origin_is_exact_mean() {
    // ψ₁(0) = 1/2 + √2/6
    let f = make_psi_r(1).unwrap();
    let expected = 0.5 + 2f64.sqrt() / 6.0;
    let s = sample_time(&f, &[0.0])[0];
    assert!((s.re - expected).abs() < 1e-14 && s.im.abs() < 1e-14);
    // and for any step function it is Σ v·|piece| / 2π
    let g = mixed();
    let mean: Q2 = g
        .pieces()
        .iter()
        .map(|(p, v)| v.scale(p.length().coeff()))
        .fold(Q2::zero(), |a, b| a + b);
    let s = sample_time(&g, &[0.0])[0];
    assert!((s.re - mean.to_f64() / 2.0).abs() < 1e-14);
}

#[test]
fn plancherel() {
    for f in [make_psi_r(2).unwrap(), mixed()] {
        let z = inner_product(&f, (0, 0), (0, 0));
        let expected = f.norm_sq().to_f64() / 2.0;
        assert!((z.re - expected).abs() < 1e-14 && z.im.abs() < 1e-14);
        for j in -3..=3 {
            assert!((inner_product(&f, (j, 5), (j, 5)) - z).norm() < 1e-13);
        }
    }
}

#[test]
fn joint_time_shift_invariance() {
    // shifting both functions by the same integer m leaves the inner product fixed
    let f = make_psi_r(2).unwrap();
    for (a, b) in [
        ((0i64, 1i64), (1i64, -3i64)),
        ((0, 0), (2, 2)),
        ((1, 4), (1, -4)),
    ] {
        let base = inner_product(&f, a, b);
        for m in [-3i64, 2, 7] {
            let shift = |(j, k): (i64, i64)| (j, k + m * (1i64 << j));
            let z = inner_product(&f, shift(a), shift(b));
            assert!((z - base).norm() < 1e-12, "{a:?} {b:?} m={m}");
        }
    }
}

#[test]
fn hermitian_symmetry() {
    let f = mixed();
    for a in [(0, 0), (1, -2), (-1, 3)] {
        for b in [(0, 1), (2, 0), (-1, -1)] {
            let ab = inner_product(&f, a, b);
            let ba = inner_product(&f, b, a);
            assert!((ab - ba.conj()).norm() < 1e-14);
        }
    }
}

#[test]
fn random_entries_match_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for f in [make_psi_r(1).unwrap(), mixed()] {
        for _ in 0..10 {
            let a = (rng.random_range(-2..=2), rng.random_range(-3..=3));
            let b = (rng.random_range(-2..=2), rng.random_range(-3..=3));
            let closed = inner_product(&f, a, b);
            let quad = quad_inner_product(&f, a, b, 1e-9);
            assert!(
                (closed - quad).norm() < QUADRATURE_TOL,
                "{a:?} {b:?}: {closed} vs {quad}"
            );
        }
    }
}

#[test]
fn orthonormal_systems() {
    for f in [
        StepFunction::indicator(&shannon_set()),
        StepFunction::indicator(&make_k_r(2).unwrap().set),
        make_psi_r(1).unwrap(),
        make_psi_r(3).unwrap(),
        make_psi_0(&PiScalar::from_ratio(3, 2), &PiScalar::from_ratio(8, 5)).unwrap(),
    ] {
        let g = gram(&f, -3..=3, -5..=5);
        assert!(g.max_deviation() < GRAM_TOL, "{}", g.max_deviation());
        assert_eq!(g.index_grid.len(), 77);
    }
}

#[test]
fn non_wavelet_gram_is_visibly_off() {
    let psi = make_psi_r(1).unwrap();
    let i1 = make_k_r(1).unwrap().i_r;
    let bad = psi
        .with_value_on(&i1.translate(4), Q2::inv_sqrt2())
        .unwrap();
    let g = gram(&bad, -3..=3, -5..=5);
    assert!(g.max_offdiag > 0.1);
    assert!(g.worst_pair.is_some());
}

#[test]
fn probe_on_known_sets() {
    let deltas: Vec<PiScalar> = (0..8).map(|e| PiScalar::new(rat(1, 1 << e))).collect();
    let away = origin_probe(&make_k_r(3).unwrap().set, &deltas);
    assert!(away.iter().all(|(_, h)| !h));
    let near = IntervalSet::single(iv((1, 64), (1, 32))).union(&shannon_set());
    let hits = origin_probe(&near, &deltas);
    let flags: Vec<bool> = hits.iter().map(|(_, h)| *h).collect();
    assert_eq!(flags, [true, true, true, true, true, true, false, false]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn probe_is_monotone_in_delta(lo in 1i64..200, len in 1i64..50, d in 1i64..400) {
        let s = IntervalSet::single(iv((lo, 100), (lo + len, 100)));
        let small = PiScalar::new(rat(d, 100));
        let big = PiScalar::new(rat(d + 1, 100));
        let r = origin_probe(&s, &[small, big]);
        prop_assert!(!r[0].1 || r[1].1);
        prop_assert_eq!(r[0].1, d > lo);
    }
}
