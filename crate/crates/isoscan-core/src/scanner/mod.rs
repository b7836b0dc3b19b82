//! Per-prime classification of a 2-isogenous pair, sequential scans over
//! the first good primes, and estimators built on the resulting records.

mod estimate;
mod record;

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

pub use estimate::{defect_table, estimate_c, wilson_interval, CoefficientEstimate, DefectRow, DefectTable, Snapped, WILSON_Z99};
pub use record::{DefectLabel, PrimeRecord, Side};

use crate::elliptic::{
    full_torsion_level, reduce_in, sylow2_shape, trace_of_frobenius_seeded, RationalCurve, ReducedCurve, SylowShape,
    TraceData,
};
use crate::error::{internal, validation, Result};
use crate::numtheory::{prime_stream, Fq};
use crate::torsion_isogeny::{two_isogeny_class, TowerFq, MAX_LEVEL};

/// Two rationally 2-isogenous curves, `E` first.
#[derive(Clone, Debug)]
pub struct CurvePair {
    pub e: RationalCurve,
    pub ep: RationalCurve,
    /// Numerators and denominators of both discriminants.
    disc: Vec<BigInt>,
    /// Coefficient denominators of both short models.
    denoms: Vec<BigInt>,
}

impl CurvePair {
    /// Checks that `E'` is 2-isogenous to `E` over `Q`.
    pub fn new(e: RationalCurve, ep: RationalCurve) -> Result<CurvePair> {
        let class = two_isogeny_class(&e);
        let linked = match (class.index_of(&e), class.index_of(&ep)) {
            (Some(i), Some(k)) => class.edges.contains(&(i.min(k), i.max(k))),
            _ => false,
        };
        if !linked {
            return Err(validation!("{} and {} are not 2-isogenous over Q", e.name(), ep.name()));
        }
        Ok(Self::new_unchecked(e, ep))
    }

    /// Skips the isogeny check.
    pub fn new_unchecked(e: RationalCurve, ep: RationalCurve) -> CurvePair {
        let mut disc: Vec<BigInt> = Vec::new();
        let mut denoms: Vec<BigInt> = Vec::new();
        for c in [&e, &ep] {
            let d = c.discriminant();
            disc.push(d.numer().clone());
            disc.push(d.denom().clone());
            denoms.push(c.a.denom().clone());
            denoms.push(c.b.denom().clone());
        }
        CurvePair { e, ep, disc, denoms }
    }

    /// `p > 2` and `p` divides neither discriminant. Short models built
    /// from long ones keep the long discriminant, so this is good reduction
    /// whenever the long model is minimal. For `p ≥ 5` the coefficients must
    /// also be `p`-integral; at `p = 3` they may not be, and
    /// [`classify_prime`] then records the prime as skipped.
    pub fn is_good(&self, p: u64) -> bool {
        let pb = BigInt::from(p);
        let divides = |n: &BigInt| (n % &pb).is_zero();
        p > 2 && !self.disc.iter().any(divides) && (p == 3 || !self.denoms.iter().any(divides))
    }

    /// Good, but the short models do not reduce at `p`.
    fn needs_long_model(&self, p: u64) -> bool {
        let pb = BigInt::from(p);
        self.denoms.iter().any(|n| (n % &pb).is_zero())
    }

    pub fn name(&self) -> alloc::string::String {
        alloc::format!("{} / {}", self.e.name(), self.ep.name())
    }
}

/// `A_m(E)`: the Frobenius at `p` is `-I` modulo `2^m`, detected as
/// `p ≡ 1 (mod 2^m)`, `v2(#E(F_p)) = 2` with shape `(1,1)`, and every
/// abscissa of `E[2^m]` in `F_p`.
pub fn detect_am(e: &ReducedCurve, t: &TraceData, shape_p: SylowShape, m: u32) -> Result<bool> {
    if !(2..=MAX_LEVEL).contains(&m) {
        return Err(crate::error::usage!("A_m is defined here for 2 <= m <= {MAX_LEVEL}"));
    }
    if (t.p - 1) % (1 << m) != 0 || t.np.trailing_zeros() != 2 || shape_p != (SylowShape { a: 1, b: 1 }) {
        return Ok(false);
    }
    Ok(TowerFq::new(e).splitting_prefix(m)? == m)
}

/// Largest `m ≤ cap` with `A_m`, given that `A_2`'s cheap conditions hold.
fn am_prefix(e: &ReducedCurve, cap: u32) -> Result<u32> {
    if cap < 2 {
        return Ok(0);
    }
    let k = TowerFq::new(e).splitting_prefix(cap)?;
    Ok(if k >= 2 { k } else { 0 })
}

fn seed_for(master_seed: u64, p: u64) -> u64 {
    master_seed ^ p.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// Classify one prime. Bad primes give a record with `good = false`.
pub fn classify_prime(pair: &CurvePair, p: u64, master_seed: u64) -> Result<PrimeRecord> {
    if !pair.is_good(p) {
        return Ok(PrimeRecord::bad(p));
    }
    if pair.needs_long_model(p) {
        // Only p = 3, which is never anomalous and never an A_m prime.
        let mut rec = PrimeRecord::bad(p);
        rec.good = true;
        rec.skip = Some("short model does not reduce at 3".into());
        return Ok(rec);
    }
    let f = Fq::new_unchecked(p, 1);
    let e = reduce_in(&pair.e, f)?;
    let ep = reduce_in(&pair.ep, f)?;
    let t = trace_of_frobenius_seeded(&e, seed_for(master_seed, p))?;
    let v = t.np.trailing_zeros();
    let shp_e = sylow2_shape(&e, t.np as u128)?;
    let shp_ep = sylow2_shape(&ep, t.np as u128)?;
    let v2np2 = t.np2.trailing_zeros();
    let mut rec = PrimeRecord {
        p,
        good: true,
        skip: None,
        ap: Some(t.ap),
        v2np: Some(v),
        shp_e: Some(shp_e),
        shp_ep: Some(shp_ep),
        v2np2: Some(v2np2),
        lvl_e: None,
        lvl_ep: None,
        am_e: Some([false; 4]),
        am_ep: Some([false; 4]),
        defect: None,
    };
    let klein = SylowShape { a: 1, b: 1 };
    if v != 2 || shp_e != klein || shp_ep != klein {
        return Ok(rec);
    }
    let e2 = e.base_change(2);
    let ep2 = ep.base_change(2);
    let lvl_e = full_torsion_level(&e2, v2np2 / 2);
    let lvl_ep = full_torsion_level(&ep2, v2np2 / 2);
    rec.lvl_e = Some(lvl_e);
    rec.lvl_ep = Some(lvl_ep);

    // A_m needs p ≡ 1 mod 2^m and, since then F² ≡ I mod 2^m, full 2^m-torsion over F_{p²}.
    let cong = (p - 1).trailing_zeros().min(MAX_LEVEL);
    let ke = am_prefix(&e, cong.min(lvl_e))?;
    let kep = am_prefix(&ep, cong.min(lvl_ep))?;
    let flags = |k: u32| core::array::from_fn(|i| i as u32 + 2 <= k);
    rec.am_e = Some(flags(ke));
    rec.am_ep = Some(flags(kep));

    if lvl_e != lvl_ep {
        let d = DefectLabel { d_e: lvl_e, d_ep: lvl_ep };
        rec.defect = Some(d);
        check_anomalous(&rec, d, ke, kep)?;
    }
    Ok(rec)
}

/// Invariants every anomalous record must satisfy; a violation means a bug
/// or a wrong group order.
fn check_anomalous(rec: &PrimeRecord, d: DefectLabel, ke: u32, kep: u32) -> Result<()> {
    let p = rec.p;
    let lo = d.d_e.min(d.d_ep);
    if d.d_e.abs_diff(d.d_ep) != 1 || lo < 2 {
        return Err(internal!("defect {d} at p = {p} violates the gap invariant"));
    }
    if (p - 1) % (1u64 << lo) != 0 {
        return Err(internal!("defect {d} at p = {p} but p is not 1 mod 2^{lo}"));
    }
    if lo <= MAX_LEVEL {
        let (hi_side, lo_side) = if d.d_e > d.d_ep { (ke, kep) } else { (kep, ke) };
        if hi_side < lo || lo_side >= lo {
            return Err(internal!("defect {d} at p = {p} disagrees with the A_{lo} flags"));
        }
    }
    Ok(())
}

/// Records for the good primes in increasing order, starting at `start`.
pub struct Scan<'a> {
    pair: &'a CurvePair,
    primes: crate::numtheory::PrimeStream,
    master_seed: u64,
}

impl Iterator for Scan<'_> {
    type Item = Result<PrimeRecord>;

    fn next(&mut self) -> Option<Result<PrimeRecord>> {
        loop {
            let p = self.primes.next()?;
            if self.pair.is_good(p) {
                return Some(classify_prime(self.pair, p, self.master_seed));
            }
        }
    }
}

/// Stream of records for the good primes `≥ start`.
pub fn scan_from(pair: &CurvePair, start: u64, master_seed: u64) -> Scan<'_> {
    Scan { pair, primes: prime_stream(start.max(3)), master_seed }
}

/// Records for the first `n` good primes.
pub fn scan(pair: &CurvePair, n: usize, master_seed: u64) -> Result<Vec<PrimeRecord>> {
    scan_from(pair, 3, master_seed).take(n).collect()
}

/// The first `n` good primes.
pub fn good_primes(pair: &CurvePair, n: usize) -> Vec<u64> {
    prime_stream(3).filter(|&p| pair.is_good(p)).take(n).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::int;

    fn pair_400g() -> CurvePair {
        let c = |a: [i64; 5]| RationalCurve::from_long_weierstrass(&a.map(int)).unwrap();
        CurvePair::new(c([0, -1, 0, -28, -48]), c([0, -1, 0, -3, 2])).unwrap()
    }

    #[test]
    fn first_ten_good_primes() {
        let pair = pair_400g();
        let recs = scan(&pair, 10, 0).unwrap();
        let ps: Vec<u64> = recs.iter().map(|r| r.p).collect();
        assert_eq!(ps, [3, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(recs.iter().all(|r| r.good && !r.is_anomalous()));
        assert!(recs[0].skip.is_some());
        assert_eq!(good_primes(&pair, 3), [3, 7, 11]);
    }

    #[test]
    fn scans_are_deterministic() {
        let pair = pair_400g();
        assert_eq!(scan(&pair, 300, 5).unwrap(), scan(&pair, 300, 5).unwrap());
        assert_eq!(scan(&pair, 300, 5).unwrap(), scan(&pair, 300, 6).unwrap());
        let tail: Vec<PrimeRecord> = scan_from(&pair, 100, 5).take(5).collect::<Result<_>>().unwrap();
        assert_eq!(tail[0].p, 101);
    }

    #[test]
    fn smallest_a2_prime_of_400g() {
        let pair = pair_400g();
        let r = scan(&pair, 50, 0).unwrap().into_iter().find(|r| r.am(Side::E, 2)).unwrap();
        assert_eq!(r.p, 29);
        assert_eq!(r.am_e, Some([true, false, false, false]));
        assert!(r.v2np2.unwrap() >= 6);
    }

    #[test]
    fn detect_am_filters() {
        let f = Fq::prime(5).unwrap();
        let e = ReducedCurve::new(f.from_i64(-1), f.zero()).unwrap();
        let t = trace_of_frobenius_seeded(&e, 0).unwrap();
        assert_eq!(t.np, 8);
        let shape = sylow2_shape(&e, 8).unwrap();
        assert!(!detect_am(&e, &t, shape, 2).unwrap());
        // p ≡ 3 mod 4 never qualifies.
        let f = Fq::prime(7).unwrap();
        let e = ReducedCurve::new(f.from_i64(-1), f.zero()).unwrap();
        let t = trace_of_frobenius_seeded(&e, 0).unwrap();
        let shape = sylow2_shape(&e, t.np as u128).unwrap();
        assert!((2..=5).all(|m| !detect_am(&e, &t, shape, m).unwrap()));
        assert!(detect_am(&e, &t, shape, 6).is_err());
    }

    #[test]
    fn non_isogenous_pair_is_rejected() {
        let e = RationalCurve::from_ints(-1, 0).unwrap();
        let ep = RationalCurve::from_ints(1, 1).unwrap();
        assert!(CurvePair::new(e, ep).is_err());
    }
}
