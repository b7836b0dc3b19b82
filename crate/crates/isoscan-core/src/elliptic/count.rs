use alloc::vec::Vec;

use super::group::{random_point, Point};
use super::ReducedCurve;
use crate::error::{internal, usage, Result};
use crate::numtheory::modular::{factor_u64, gcd_u64, isqrt_u128};

/// Below this bound points are counted by enumeration; above it the
/// twist argument guarantees a unique group order in the Hasse interval.
const NAIVE_BOUND: u64 = 457;

/// Frobenius trace of a curve over `F_p` and the derived group orders.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TraceData {
    pub p: u64,
    pub ap: i64,
    /// `#E(F_p) = p + 1 - ap`
    pub np: u64,
    /// `#E(F_{p²}) = (p + 1)² - ap²`
    pub np2: u128,
}

impl TraceData {
    pub fn from_ap(p: u64, ap: i64) -> TraceData {
        let np = (p as i64 + 1 - ap) as u64;
        let s = p as i128 + 1;
        let np2 = (s * s - ap as i128 * ap as i128) as u128;
        TraceData { p, ap, np, np2 }
    }

    /// Trace of Frobenius over `F_{p²}`: `ap² - 2p`.
    pub fn ap2(&self) -> i128 {
        self.ap as i128 * self.ap as i128 - 2 * self.p as i128
    }
}

/// `#E(F_q)` by enumerating `x`.
pub fn naive_count(e: &ReducedCurve) -> u128 {
    let f = e.field();
    let mut n: u128 = 1;
    for x in f.elements() {
        n += (1 + e.rhs(x).legendre()) as u128;
    }
    n
}

/// Every point of `E(F_q)`, the point at infinity first.
pub fn all_points(e: &ReducedCurve) -> Vec<Point> {
    let mut pts = alloc::vec![Point::Infinity];
    for x in e.field().elements() {
        let r = e.rhs(x);
        if r.is_zero() {
            pts.push(Point::Affine(x, r));
        } else if let Some(y) = r.sqrt() {
            pts.push(Point::Affine(x, y));
            pts.push(Point::Affine(x, -y));
        }
    }
    pts
}

/// 2-Sylow structure by enumeration: `#S[2^k] = 2^(min(a,k) + min(b,k))`,
/// so `a` counts the steps where `#S[2^k]` grows fourfold.
pub fn sylow2_shape_naive(e: &ReducedCurve) -> super::SylowShape {
    let pts = all_points(e);
    let n = pts.len() as u128;
    let v = n.trailing_zeros();
    let odd = (n >> v) as i128;
    let mut killed = alloc::vec![0u64; v as usize + 1];
    for pt in &pts {
        let mut q = e.scalar_mul(odd, pt);
        let mut k = 0;
        while !q.is_infinity() {
            q = e.double(&q);
            k += 1;
        }
        for c in killed.iter_mut().skip(k) {
            *c += 1;
        }
    }
    let a = (1..=v as usize).filter(|&k| killed[k] == 4 * killed[k - 1]).count() as u32;
    super::SylowShape::new(a, v - a)
}

/// Exact trace of Frobenius of a curve over a prime field.
pub fn trace_of_frobenius(e: &ReducedCurve) -> Result<TraceData> {
    trace_of_frobenius_seeded(e, 0)
}

/// As [`trace_of_frobenius`]; `seed` picks the sample points, which affects
/// only the running time.
pub fn trace_of_frobenius_seeded(e: &ReducedCurve, seed: u64) -> Result<TraceData> {
    let f = e.field();
    if f.degree() != 1 {
        return Err(usage!("trace_of_frobenius expects a curve over F_p"));
    }
    let p = f.p();
    let n = if p < NAIVE_BOUND { naive_count(e) as u64 } else { bsgs_order(e, seed)? };
    let ap = p as i64 + 1 - n as i64;
    if (ap as i128) * (ap as i128) > 4 * p as i128 {
        return Err(internal!("Hasse bound violated: p={p} ap={ap}"));
    }
    Ok(TraceData::from_ap(p, ap))
}

/// Some `m` in `[lo, hi]` with `[m]P = O`, by baby-step giant-step.
fn multiple_in_interval(e: &ReducedCurve, pt: &Point, lo: u64, hi: u64) -> Option<u64> {
    let s = isqrt_u128(((hi - lo) / 2 + 1) as u128) as u64 + 1;
    let mut baby: Vec<((u64, u64), u64)> = Vec::with_capacity(s as usize);
    let mut q = *pt;
    for j in 1..=s {
        match q {
            Point::Infinity => {
                // The order divides j; take its first multiple in range.
                let m = lo.div_ceil(j) * j;
                return (m <= hi).then_some(m);
            }
            Point::Affine(x, _) => baby.push((x.encode(), j)),
        }
        q = e.add(&q, pt);
    }
    baby.sort_unstable();
    let step = 2 * s + 1;
    let giant = e.scalar_mul(step as i128, pt);
    let mut c = lo + s;
    let mut r = e.scalar_mul(c as i128, pt);
    while c <= hi + s {
        let found = match r {
            Point::Infinity => Some(c),
            Point::Affine(x, y) => {
                let key = x.encode();
                let i = baby.partition_point(|b| b.0 < key);
                baby.get(i).filter(|b| b.0 == key).map(|&(_, j)| {
                    let jp = e.scalar_mul(j as i128, pt);
                    if jp == Point::Affine(x, y) {
                        c - j
                    } else {
                        c + j
                    }
                })
            }
        };
        if let Some(m) = found.filter(|m| (lo..=hi).contains(m)) {
            return Some(m);
        }
        r = e.add(&r, &giant);
        c += step;
    }
    None
}

/// Exact order of `P` given a multiple `m` of it.
fn order_from_multiple(e: &ReducedCurve, pt: &Point, mut m: u64) -> u64 {
    for (q, k) in factor_u64(m) {
        for _ in 0..k {
            if e.scalar_mul((m / q) as i128, pt).is_infinity() {
                m /= q;
            } else {
                break;
            }
        }
    }
    m
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd_u64(a, b) * b
}

/// `#E(F_p)` for `p >= 457`: orders of points on `E` and on its quadratic
/// twist pin down a unique candidate in the Hasse interval.
fn bsgs_order(e: &ReducedCurve, seed: u64) -> Result<u64> {
    let f = e.field();
    let p = f.p();
    let bound = isqrt_u128(4 * p as u128) as u64;
    let (lo, hi) = (p + 1 - bound, p + 1 + bound);
    let twist = e.twist(f.from_u64(f.nonresidue()));
    let (mut l_e, mut l_t) = (1u64, 1u64);
    for attempt in 0..64u64 {
        let on_twist = attempt % 2 == 1;
        let curve = if on_twist { &twist } else { e };
        let pt = random_point(curve, seed.wrapping_add(p.wrapping_mul(0x9e37_79b9_7f4a_7c15)) ^ attempt);
        // The twist has 2p + 2 - N points, which lies in the same interval.
        let m = multiple_in_interval(curve, &pt, lo, hi)
            .ok_or_else(|| internal!("no multiple of a point order in the Hasse interval, p={p}"))?;
        let ord = order_from_multiple(curve, &pt, m);
        if on_twist {
            l_t = lcm(l_t, ord);
        } else {
            l_e = lcm(l_e, ord);
        }
        let mut candidates = (lo.div_ceil(l_e) * l_e..=hi)
            .step_by(l_e as usize)
            .filter(|n| (2 * p + 2 - n) % l_t == 0);
        if let (Some(n), None) = (candidates.next(), candidates.next()) {
            return Ok(n);
        }
    }
    Err(internal!("group order not determined for p={p}"))
}
