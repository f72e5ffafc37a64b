//! Parameter sweeps: one row per grid point, in grid order.

use h2wave_core::constructions::{in_xy_triangle, k_xy_raw, make_k_r_eps};
use h2wave_core::exact::{int, rat, Rational};
use h2wave_core::tiling::{check_pieces, is_wavelet_set, TilingReport};
use h2wave_core::{make_k_rk, Interval, IntervalSet, PiScalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::output::Failure;

#[derive(Debug, Serialize)]
pub struct Defects {
    pub tau_overlap: PiScalar,
    pub tau_gap: PiScalar,
    pub d_overlap: PiScalar,
    pub d_gap: PiScalar,
}

impl Defects {
    pub const HEADER: [&'static str; 4] = ["tau_overlap", "tau_gap", "d_overlap", "d_gap"];

    fn fields(&self) -> [String; 4] {
        [
            &self.tau_overlap,
            &self.tau_gap,
            &self.d_overlap,
            &self.d_gap,
        ]
        .map(ToString::to_string)
    }

    fn from_reports(t: &TilingReport, d: &TilingReport) -> Self {
        Defects {
            tau_overlap: t.overlap_defect.clone(),
            tau_gap: t.gap_defect.clone(),
            d_overlap: d.overlap_defect.clone(),
            d_gap: d.gap_defect.clone(),
        }
    }
}

fn check(s: &IntervalSet) -> Result<(bool, Defects), Failure> {
    let c = is_wavelet_set(s)?;
    Ok((
        c.is_wavelet_set,
        Defects::from_reports(&c.translation, &c.dilation),
    ))
}

/// A sweep row: parameter columns, then `passed`, then the four defects.
pub trait Row: Serialize {
    fn params(&self) -> Vec<String>;
    fn passed(&self) -> bool;
    fn defects(&self) -> &Defects;

    fn record(&self) -> Vec<String> {
        let mut out = self.params();
        out.push(self.passed().to_string());
        out.extend(self.defects().fields());
        out
    }
}

macro_rules! row {
    ($t:ty, |$s:ident| $params:expr) => {
        impl Row for $t {
            fn params(&$s) -> Vec<String> {
                $params
            }
            fn passed(&self) -> bool {
                self.passed
            }
            fn defects(&self) -> &Defects {
                &self.defects
            }
        }
    };
}

row!(KrkRow, |self| vec![self.r.to_string(), self.k.to_string()]);
row!(KxyRow, |self| vec![
    self.x.to_string(),
    self.y.to_string(),
    self.in_domain.to_string()
]);
row!(KrepsRow, |self| vec![
    self.r.to_string(),
    self.eps.to_string(),
    self.depth.to_string(),
    self.tail_defect.to_string()
]);
row!(IntervalRow, |self| vec![
    self.lo.to_string(),
    self.hi.to_string()
]);

fn header(params: &[&'static str]) -> Vec<&'static str> {
    params
        .iter()
        .copied()
        .chain(["passed"])
        .chain(Defects::HEADER)
        .collect()
}

#[derive(Debug, Serialize)]
pub struct KrkRow {
    pub r: u32,
    pub k: i64,
    pub passed: bool,
    #[serde(flatten)]
    pub defects: Defects,
}

pub fn krk(r_min: u32, r_max: u32) -> Result<(Vec<&'static str>, Vec<KrkRow>), Failure> {
    if r_min < 1 || r_min > r_max || r_max > 16 {
        return Err(Failure::usage(
            "grid",
            format!("need 1 <= r-min <= r-max <= 16, got {r_min}..{r_max}"),
        ));
    }
    let mut rows = Vec::new();
    for r in r_min..=r_max {
        for k in 1..2 * ((1i64 << r) - 1) {
            let (passed, defects) = check(&make_k_rk(r, k)?)?;
            rows.push(KrkRow {
                r,
                k,
                passed,
                defects,
            });
        }
    }
    Ok((header(&["r", "k"]), rows))
}

#[derive(Debug, Serialize)]
pub struct KxyRow {
    pub x: PiScalar,
    pub y: PiScalar,
    pub in_domain: bool,
    pub passed: bool,
    #[serde(flatten)]
    pub defects: Defects,
}

/// Cell midpoints of an `n × n` grid over `[π, 2π] × [3π/2, 2π]`. Points
/// outside the open triangle use the raw five-interval formula: empty pieces
/// are dropped and overlapping pieces are counted with multiplicity.
pub fn kxy(n: i64) -> Result<(Vec<&'static str>, Vec<KxyRow>), Failure> {
    if n < 1 {
        return Err(Failure::usage(
            "grid",
            format!("grid resolution must be >= 1, got {n}"),
        ));
    }
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let x = PiScalar::new(int(1) + rat(2 * i + 1, 2 * n));
            let y = PiScalar::new(rat(3, 2) + rat(2 * j + 1, 4 * n));
            let pieces: Vec<Interval> = k_xy_raw(&x, &y)
                .into_iter()
                .filter_map(|(lo, hi)| Interval::new(lo, hi))
                .collect();
            let c = check_pieces(&pieces)?;
            let (passed, defects) = (
                c.is_wavelet_set,
                Defects::from_reports(&c.translation, &c.dilation),
            );
            let in_domain = in_xy_triangle(&x, &y);
            rows.push(KxyRow {
                x,
                y,
                in_domain,
                passed,
                defects,
            });
        }
    }
    Ok((header(&["x", "y", "in_domain"]), rows))
}

#[derive(Debug, Serialize)]
pub struct KrepsRow {
    pub r: u32,
    pub eps: PiScalar,
    pub depth: usize,
    pub tail_defect: PiScalar,
    pub passed: bool,
    #[serde(flatten)]
    pub defects: Defects,
}

pub fn kreps(
    r: u32,
    eps: &PiScalar,
    depth_max: usize,
) -> Result<(Vec<&'static str>, Vec<KrepsRow>), Failure> {
    let mut rows = Vec::new();
    for depth in 0..=depth_max {
        let b = make_k_r_eps(r, eps, depth)?;
        let (passed, defects) = check(&b.set)?;
        rows.push(KrepsRow {
            r,
            eps: eps.clone(),
            depth,
            tail_defect: b.tail_defect,
            passed,
            defects,
        });
    }
    Ok((header(&["r", "eps", "depth", "tail_defect"]), rows))
}

#[derive(Debug, Serialize)]
pub struct IntervalRow {
    pub lo: PiScalar,
    pub hi: PiScalar,
    pub passed: bool,
    #[serde(flatten)]
    pub defects: Defects,
}

/// Random single intervals `[aπ, (a+2)π)` with rational `a` in `(0, 120]`.
pub fn interval(count: usize, seed: u64) -> Result<(Vec<&'static str>, Vec<IntervalRow>), Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(count);
    for _ in 0..count {
        let d: i64 = rng.random_range(1..=16);
        let a: Rational = rat(rng.random_range(1..=120 * d), d);
        let lo = PiScalar::new(a);
        let hi = lo.shift_2pi(1);
        let s = IntervalSet::canonicalize([(lo.clone(), hi.clone())]);
        let (passed, defects) = check(&s)?;
        rows.push(IntervalRow {
            lo,
            hi,
            passed,
            defects,
        });
    }
    Ok((header(&["lo", "hi"]), rows))
}
