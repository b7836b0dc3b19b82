use super::group::{random_point, Point};
use super::ReducedCurve;
use crate::error::{internal, Result};
use crate::numtheory::{distinct_roots, splits_completely, Fe};

/// `E(F_q)[2^∞] ≅ Z/2^a × Z/2^b` with `a ≤ b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(from = "[u32; 2]", into = "[u32; 2]"))]
pub struct SylowShape {
    pub a: u32,
    pub b: u32,
}

impl SylowShape {
    pub fn new(a: u32, b: u32) -> SylowShape {
        SylowShape { a: a.min(b), b: a.max(b) }
    }

    pub fn v2(&self) -> u32 {
        self.a + self.b
    }

    pub fn is_cyclic(&self) -> bool {
        self.a == 0
    }
}

impl From<[u32; 2]> for SylowShape {
    fn from([a, b]: [u32; 2]) -> Self {
        SylowShape { a, b }
    }
}

impl From<SylowShape> for [u32; 2] {
    fn from(s: SylowShape) -> Self {
        [s.a, s.b]
    }
}

impl core::fmt::Display for SylowShape {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Some `Q` in `E(F_q)` with `2Q = P`, assuming `E[2] ⊆ E(F_q)` with
/// `x`-coordinates `e`.
///
/// Uses 2-descent: `P ∈ 2E(F_q)` iff every `x(P) - e_i` is a square, and then
/// `x(Q) = x + r1r2 + r1r3 + r2r3` for suitable square roots `r_i`.
pub fn halve(e: &ReducedCurve, pt: &Point, roots: &[Fe; 3]) -> Option<Point> {
    let Point::Affine(x, _) = *pt else {
        return Some(Point::Infinity);
    };
    let r = [
        (x - roots[0]).sqrt()?,
        (x - roots[1]).sqrt()?,
        (x - roots[2]).sqrt()?,
    ];
    for (s1, s2) in [(false, false), (true, false), (false, true), (true, true)] {
        let r1 = if s1 { -r[0] } else { r[0] };
        let r2 = if s2 { -r[1] } else { r[1] };
        let xq = x + r1 * r2 + r1 * r[2] + r2 * r[2];
        let Some(yq) = e.rhs(xq).sqrt() else { continue };
        for q in [Point::Affine(xq, yq), Point::Affine(xq, -yq)] {
            if e.double(&q) == *pt {
                return Some(q);
            }
        }
    }
    None
}

/// Largest `k` with `E[2^k] ⊆ E(F_q)`, stopping once `cap` is reached.
///
/// Starts from two generators of `E[2]` and halves both as long as possible;
/// rational halves of a basis of `E[2^k]` form a basis of `E[2^{k+1}]`.
pub fn full_torsion_level(e: &ReducedCurve, cap: u32) -> u32 {
    if cap == 0 {
        return 0;
    }
    let rs = distinct_roots(&e.cubic());
    if rs.len() != 3 {
        return 0;
    }
    let roots = [rs[0], rs[1], rs[2]];
    let zero = e.field().zero();
    let mut t1 = Point::Affine(roots[0], zero);
    let mut t2 = Point::Affine(roots[1], zero);
    let mut level = 1;
    while level < cap {
        let (Some(h1), Some(h2)) = (halve(e, &t1, &roots), halve(e, &t2, &roots)) else {
            break;
        };
        t1 = h1;
        t2 = h2;
        level += 1;
    }
    level
}

/// 2-Sylow shape of `E(F_q)` given its exact order `n`.
///
/// Deterministic: the smaller exponent is the full-torsion level.
pub fn sylow2_shape(e: &ReducedCurve, n: u128) -> Result<SylowShape> {
    if n == 0 {
        return Err(internal!("group order 0"));
    }
    let v = n.trailing_zeros();
    if v < 2 {
        return Ok(SylowShape { a: 0, b: v });
    }
    let a = full_torsion_level(e, v / 2);
    Ok(SylowShape { a, b: v - a })
}

/// 2-Sylow shape by sampling: the largest 2-power order among `k` points
/// projected to the 2-part gives `b`, and `a = v2(n) - b`.
///
/// Wrong with probability at most `2^-k`. When `a ≥ 1` the split of the
/// cubic is checked and one rerun with fresh seeds is tried on mismatch.
pub fn sylow2_shape_sampled(e: &ReducedCurve, n: u128, seed: u64, k: u32) -> Result<SylowShape> {
    if n == 0 {
        return Err(internal!("group order 0"));
    }
    let v = n.trailing_zeros();
    let odd = (n >> v) as i128;
    for round in 0..2u64 {
        let mut b = 0;
        for i in 0..k as u64 {
            let seed = seed.wrapping_add(round << 32).wrapping_add(i);
            let mut s = e.scalar_mul(odd, &random_point(e, seed));
            let mut ord = 0;
            while !s.is_infinity() {
                s = e.double(&s);
                ord += 1;
                if ord > v {
                    return Err(internal!("point of 2-power order above 2^{v}: wrong group order {n}"));
                }
            }
            b = b.max(ord);
        }
        let a = v - b;
        if a > b {
            continue;
        }
        if a == 0 || splits_completely(&e.cubic())? {
            return Ok(SylowShape { a, b });
        }
    }
    Err(internal!("sampled 2-Sylow shape inconsistent with the 2-torsion"))
}
