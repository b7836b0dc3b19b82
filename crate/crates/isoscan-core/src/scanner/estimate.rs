use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::ToPrimitive;

use super::record::{DefectLabel, PrimeRecord, Side};
use crate::error::Result;
use crate::numtheory::Rational;
use crate::theory::{predict, CoefficientVector, GaloisImageProfile};

/// Two-sided normal quantile for 99% coverage.
pub const WILSON_Z99: f64 = 2.5758293035489004;

/// Wilson score interval for `k` successes out of `n > 0`.
pub fn wilson_interval(k: u64, n: u64, z: f64) -> (f64, f64) {
    let nf = n as f64;
    let ph = k as f64 / nf;
    let z2 = z * z;
    let denom = 1.0 + z2 / nf;
    let center = (ph + z2 / (2.0 * nf)) / denom;
    let half = z * libm::sqrt(ph * (1.0 - ph) / nf + z2 / (4.0 * nf * nf)) / denom;
    let lo = if k == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if k == n { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

/// A coefficient estimate snapped to the values the theory allows.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Snapped {
    Zero,
    Half,
    One,
    Indeterminate,
}

impl Snapped {
    pub fn value(&self) -> Option<Rational> {
        match self {
            Snapped::Zero => Some(Rational::from_integer(0.into())),
            Snapped::Half => Some(Rational::new(1.into(), 2.into())),
            Snapped::One => Some(Rational::from_integer(1.into())),
            Snapped::Indeterminate => None,
        }
    }
}

impl fmt::Display for Snapped {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Snapped::Zero => "0",
            Snapped::Half => "1/2",
            Snapped::One => "1",
            Snapped::Indeterminate => "indeterminate",
        })
    }
}

#[derive(Clone, PartialEq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CoefficientEstimate {
    pub m: u32,
    pub side: Side,
    /// Primes of defect `(m+1, m)` (mirrored for `E'`).
    pub hits: u64,
    /// Primes with `A_m` on this side.
    pub n_conditioned: u64,
    /// `hits / n_conditioned`, undefined when nothing was conditioned on.
    pub raw_c: Option<f64>,
    pub snapped: Snapped,
    pub wilson: Option<(f64, f64)>,
}

impl CoefficientEstimate {
    /// With no `A_m` primes and `-I` known to be absent at this level, the
    /// coefficient is 0 by convention.
    pub fn resolve_empty(mut self, minus_i_absent: bool) -> Self {
        if self.n_conditioned == 0 && minus_i_absent {
            self.snapped = Snapped::Zero;
        }
        self
    }
}

/// `c_{2^m}` (or `c'_{2^m}`) as the share of `A_m` primes with defect
/// `(m+1, m)` (or `(m, m+1)`), snapped when the 99% Wilson interval contains
/// exactly one of 0, 1/2, 1.
pub fn estimate_c(records: &[PrimeRecord], m: u32, side: Side) -> CoefficientEstimate {
    let want = match side {
        Side::E => DefectLabel { d_e: m + 1, d_ep: m },
        Side::Ep => DefectLabel { d_e: m, d_ep: m + 1 },
    };
    let n = records.iter().filter(|r| r.am(side, m)).count() as u64;
    let hits = records.iter().filter(|r| r.am(side, m) && r.defect == Some(want)).count() as u64;
    if n == 0 {
        return CoefficientEstimate { m, side, hits, n_conditioned: 0, raw_c: None, snapped: Snapped::Indeterminate, wilson: None };
    }
    let (lo, hi) = wilson_interval(hits, n, WILSON_Z99);
    let inside: Vec<Snapped> = [(0.0, Snapped::Zero), (0.5, Snapped::Half), (1.0, Snapped::One)]
        .into_iter()
        .filter(|&(v, _)| lo <= v && v <= hi)
        .map(|(_, s)| s)
        .collect();
    let snapped = if inside.len() == 1 { inside[0] } else { Snapped::Indeterminate };
    CoefficientEstimate {
        m,
        side,
        hits,
        n_conditioned: n,
        raw_c: Some(hits as f64 / n as f64),
        snapped,
        wilson: Some((lo, hi)),
    }
}

#[derive(Clone, PartialEq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DefectRow {
    pub defect: DefectLabel,
    pub count: u64,
    pub expected: Option<f64>,
    /// `count / expected`.
    pub ratio: Option<f64>,
}

#[derive(Clone, PartialEq, Debug, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DefectTable {
    /// Good primes scanned.
    pub primes: u64,
    pub anomalous: u64,
    pub rows: Vec<DefectRow>,
    pub expected_total: Option<f64>,
}

impl DefectTable {
    pub fn count(&self, d_e: u32, d_ep: u32) -> u64 {
        self.rows.iter().find(|r| r.defect == DefectLabel { d_e, d_ep }).map_or(0, |r| r.count)
    }
}

/// Histogram of defects, with expected counts `density · N` when the image
/// profiles and coefficients are known.
pub fn defect_table(
    records: &[PrimeRecord],
    model: Option<(&GaloisImageProfile, &GaloisImageProfile, &CoefficientVector)>,
) -> Result<DefectTable> {
    let primes = records.iter().filter(|r| r.good).count() as u64;
    let mut counts: BTreeMap<DefectLabel, u64> = BTreeMap::new();
    for d in records.iter().filter_map(|r| r.defect) {
        *counts.entry(d).or_default() += 1;
    }
    let anomalous = counts.values().sum();
    let mut expected: BTreeMap<DefectLabel, f64> = BTreeMap::new();
    let mut expected_total = None;
    if let Some((pe, pep, c)) = model {
        let b = predict(pe, pep, c)?;
        for d in &b.per_defect {
            let label = DefectLabel { d_e: d.defect.0, d_ep: d.defect.1 };
            let x = d.density.to_f64().unwrap_or(0.0) * primes as f64;
            if x > 0.0 {
                expected.insert(label, x);
            }
        }
        expected_total = Some(b.total.to_f64().unwrap_or(0.0) * primes as f64);
    }
    let mut labels: Vec<DefectLabel> = counts.keys().chain(expected.keys()).copied().collect();
    labels.sort_by_key(|d| (d.d_e.min(d.d_ep), core::cmp::Reverse(d.d_e)));
    labels.dedup();
    let rows = labels
        .into_iter()
        .map(|d| {
            let count = counts.get(&d).copied().unwrap_or(0);
            let exp = expected.get(&d).copied().or(model.map(|_| 0.0));
            let ratio = exp.filter(|&x| x > 0.0).map(|x| count as f64 / x);
            DefectRow { defect: d, count, expected: exp, ratio }
        })
        .collect();
    Ok(DefectTable { primes, anomalous, rows, expected_total })
}
