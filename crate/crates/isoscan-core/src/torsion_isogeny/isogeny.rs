use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};

use crate::elliptic::{random_point, Point, RationalCurve, ReducedCurve};
use crate::error::{internal, usage, Result};
use crate::numtheory::rational::{common_denominator, is_rational_square, rational_root, rational_sqrt};
use crate::numtheory::{roots, Fe, Poly, PolyFq, Rational, Ring};

/// Codomain coefficients of the 2-isogeny with kernel `(x0, 0)`:
/// `t = 3x0² + a`, `w = x0·t`, `a' = a - 5t`, `b' = b - 7w`.
pub fn velu2_coeffs<T: Ring>(a: &T, b: &T, x0: &T) -> Result<(T, T)> {
    let k = |n: i64| a.int_like(n);
    let f = x0.clone() * x0.clone() * x0.clone() + a.clone() * x0.clone() + b.clone();
    if !f.is_zero_elem() {
        return Err(usage!("kernel abscissa is not a root of x^3 + ax + b"));
    }
    let t = k(3) * x0.clone() * x0.clone() + a.clone();
    let w = x0.clone() * t.clone();
    Ok((a.clone() - k(5) * t, b.clone() - k(7) * w))
}

/// The 2-isogenous curve `E/⟨(x0, 0)⟩` over `Q`.
pub fn velu2(e: &RationalCurve, x0: &Rational) -> Result<RationalCurve> {
    let (a, b) = velu2_coeffs(&e.a, &e.b, x0)?;
    RationalCurve::new(a, b)
}

/// The 2-isogenous curve `E/⟨(x0, 0)⟩` over `F_q`.
pub fn velu2_fq(e: &ReducedCurve, x0: Fe) -> Result<ReducedCurve> {
    let (a, b) = velu2_coeffs(&e.a, &e.b, &x0)?;
    ReducedCurve::new(a, b)
}

/// A 2-isogeny over `F_q`, `(x, y) ↦ (u²X, u³Y)` where
/// `X = x + t/(x - x0)` and `Y = y - t·y/(x - x0)²`.
#[derive(Clone, Copy, Debug)]
pub struct TwoIsogeny {
    pub source: ReducedCurve,
    pub target: ReducedCurve,
    pub kernel_x: Fe,
    /// `(u², u³)`, the isomorphism applied after the Vélu map.
    scale: (Fe, Fe),
}

impl TwoIsogeny {
    pub fn new(source: &ReducedCurve, kernel_x: Fe) -> Result<TwoIsogeny> {
        let target = velu2_fq(source, kernel_x)?;
        let one = kernel_x.field().one();
        Ok(TwoIsogeny { source: *source, target, kernel_x, scale: (one, one) })
    }

    pub fn apply(&self, pt: &Point) -> Point {
        let Point::Affine(x, y) = *pt else {
            return Point::Infinity;
        };
        let d = x - self.kernel_x;
        let Some(di) = d.inv() else {
            return Point::Infinity;
        };
        let t = self.kernel_x.field().from_u64(3) * self.kernel_x * self.kernel_x + self.source.a;
        let xx = x + t * di;
        let yy = y - t * y * di * di;
        Point::Affine(self.scale.0 * xx, self.scale.1 * yy)
    }

    /// The dual isogeny `E' → E`, with `φ̂ ∘ φ = [2]`.
    ///
    /// Its kernel is `(-2x0, 0)`; the Vélu codomain is `(16a, 64b)`, which is
    /// mapped back to `E` by `(x, y) ↦ (x/4, ±y/8)`. The sign is fixed by
    /// testing on points of `E`.
    pub fn dual(&self) -> Result<TwoIsogeny> {
        let f = self.kernel_x.field();
        let x1 = -(f.from_u64(2) * self.kernel_x);
        let back = velu2_fq(&self.target, x1)?;
        if back.a != f.from_u64(16) * self.source.a || back.b != f.from_u64(64) * self.source.b {
            return Err(internal!("dual Vélu codomain is not (16a, 64b)"));
        }
        let u2 = f.from_u64(4).inv().expect("p odd");
        let u3 = f.from_u64(8).inv().expect("p odd");
        let mut dual = TwoIsogeny { source: self.target, target: self.source, kernel_x: x1, scale: (u2, u3) };
        for seed in 0..8 {
            let pt = random_point(&self.source, seed);
            let want = self.source.double(&pt);
            if want.is_infinity() {
                continue;
            }
            if dual.apply(&self.apply(&pt)) != want {
                dual.scale.1 = -u3;
            }
            return Ok(dual);
        }
        Ok(dual)
    }
}

/// The halving quartic at `ξ`: `x⁴ - 4ξx³ - 2ax² - (4ξa + 8b)x + a² - 4ξb`.
/// Its roots are the abscissas of the points `P` with `x(2P) = ξ`.
pub fn halving_quartic<T: Ring>(a: &T, b: &T, xi: &T) -> Poly<T> {
    let k = |n: i64| a.int_like(n);
    Poly::new(
        a.zero_like(),
        vec![
            a.clone() * a.clone() - k(4) * xi.clone() * b.clone(),
            -(k(4) * xi.clone() * a.clone() + k(8) * b.clone()),
            k(-2) * a.clone(),
            k(-4) * xi.clone(),
            a.one_like(),
        ],
    )
}

/// Factorization pattern of a quartic over `F_q`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum QuarticSplit {
    Irreducible,
    TwoConjugateQuadratics,
    SplitsCompletely,
    /// Any other pattern: sorted factor degrees, with repetition.
    Other(Vec<usize>),
}

pub fn quartic_split_type(q: &PolyFq) -> Result<QuarticSplit> {
    if q.degree() != Some(4) {
        return Err(usage!("quartic_split_type needs a degree-4 polynomial"));
    }
    let m = q.monic();
    let rs = roots(&m);
    let mut rest = m.clone();
    for r in &rs {
        rest = rest.divrem(&Poly::linear_root(*r)).0;
    }
    let mut distinct = rs.clone();
    distinct.dedup();
    let mut degrees = vec![1; rs.len()];
    match rest.degree().unwrap_or(0) {
        0 => {}
        4 => {
            let sq = rest.gcd(&rest.derivative());
            if sq.degree().unwrap_or(0) > 0 {
                degrees.extend([2, 2]);
            } else {
                let f = rest.field();
                let x = Poly::x(f.zero());
                let xq2 = x.powmod(f.q() * f.q(), &rest);
                if xq2 == x {
                    return Ok(QuarticSplit::TwoConjugateQuadratics);
                }
                return Ok(QuarticSplit::Irreducible);
            }
        }
        d => degrees.push(d),
    }
    if degrees == [1, 1, 1, 1] && distinct.len() == 4 {
        return Ok(QuarticSplit::SplitsCompletely);
    }
    degrees.sort_unstable();
    Ok(QuarticSplit::Other(degrees))
}

/// Integer roots of the monic `X³ + AX + B`, by bisection on the pieces
/// where it is monotone.
fn integer_cubic_roots(a: &BigInt, b: &BigInt) -> Vec<BigInt> {
    let f = |x: &BigInt| x * x * x + a * x + b;
    let bound = BigInt::one() + a.abs().max(b.abs());
    // Critical points lie in (-(s+1), -s] and [s, s+1).
    let s: BigInt = if a.is_negative() { Roots::sqrt(&(-a / 3)) } else { BigInt::zero() };
    let mut pieces: Vec<(BigInt, BigInt, bool)> = Vec::new();
    if a.is_negative() {
        pieces.push((-&bound, -&s - 1, true));
        pieces.push((-&s, s.clone(), false));
        pieces.push((&s + 1, bound.clone(), true));
    } else {
        pieces.push((-&bound, bound.clone(), true));
    }
    let two = BigInt::from(2);
    let mut out = Vec::new();
    for (mut lo, mut hi, increasing) in pieces {
        if lo > hi {
            continue;
        }
        let sgn = |x: &BigInt| {
            let v = f(x);
            if increasing {
                v
            } else {
                -v
            }
        };
        if sgn(&lo).is_positive() || sgn(&hi).is_negative() {
            continue;
        }
        while lo < hi {
            let mid: BigInt = (&lo + &hi).div_floor(&two);
            if sgn(&mid).is_negative() {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        if f(&lo).is_zero() {
            out.push(lo);
        }
    }
    out
}

/// All rational roots of `x³ + ax + b`, sorted and without repetition.
pub fn rational_two_torsion(e: &RationalCurve) -> Vec<Rational> {
    // x = X/d turns the cubic into the monic integral X³ + a d² X + b d³.
    let d = common_denominator([&e.a, &e.b]);
    let dr = Rational::from_integer(d.clone());
    let big_a = &e.a * &dr * &dr;
    let big_b = &e.b * &dr * &dr * &dr;
    debug_assert!(big_a.is_integer() && big_b.is_integer());
    let mut out: Vec<Rational> = integer_cubic_roots(&big_a.to_integer(), &big_b.to_integer())
        .into_iter()
        .map(|x| Rational::new(x, d.clone()))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// `E1 ≅ E2` over `Q`: `(a2, b2) = (u⁴a1, u⁶b1)` for some `u ∈ Q*`.
pub fn is_q_isomorphic(e1: &RationalCurve, e2: &RationalCurve) -> bool {
    if e1.a.is_zero() != e2.a.is_zero() || e1.b.is_zero() != e2.b.is_zero() {
        return false;
    }
    if e1.a.is_zero() {
        return rational_root(&(&e2.b / &e1.b), 6).is_some();
    }
    if e1.b.is_zero() {
        return rational_root(&(&e2.a / &e1.a), 4).is_some();
    }
    // u² = (b2/b1) / (a2/a1), then u⁴ must equal a2/a1.
    let ra = &e2.a / &e1.a;
    let u2 = (&e2.b / &e1.b) / &ra;
    is_rational_square(&u2) && &u2 * &u2 == ra
}

/// Curves of a rational 2-isogeny class (up to `Q`-isomorphism) and the
/// 2-isogenies between them, as index pairs.
#[derive(Clone, Debug)]
pub struct IsogenyClass {
    pub curves: Vec<RationalCurve>,
    pub edges: Vec<(usize, usize)>,
}

impl IsogenyClass {
    pub fn index_of(&self, e: &RationalCurve) -> Option<usize> {
        self.curves.iter().position(|c| is_q_isomorphic(c, e))
    }
}

/// Closure of `E` under rational 2-isogenies.
pub fn two_isogeny_class(e: &RationalCurve) -> IsogenyClass {
    let mut class = IsogenyClass { curves: vec![e.clone()], edges: Vec::new() };
    let mut i = 0;
    while i < class.curves.len() {
        let c = class.curves[i].clone();
        for x0 in rational_two_torsion(&c) {
            let img = velu2(&c, &x0).expect("kernel is a rational root of a nonsingular cubic");
            let j = match class.index_of(&img) {
                Some(j) => j,
                None => {
                    class.curves.push(img);
                    class.curves.len() - 1
                }
            };
            let edge = (i.min(j), i.max(j));
            if i != j && !class.edges.contains(&edge) {
                class.edges.push(edge);
            }
        }
        i += 1;
    }
    class
}

/// Whether `E(Q)` has a point of order 4.
///
/// At a rational 2-torsion abscissa `x0` the halving quartic is the square
/// of `x² - 2x0x - (2x0² + a)`, so the candidates are `x0 ± √(3x0² + a)`.
pub fn has_rational_4torsion(e: &RationalCurve) -> bool {
    rational_two_torsion(e).iter().any(|x0| {
        let disc = Rational::from_integer(3.into()) * x0 * x0 + &e.a;
        let Some(r) = rational_sqrt(&disc) else {
            return false;
        };
        [x0 + &r, x0 - &r].iter().any(|x1| {
            let y2 = e.rhs(x1);
            !y2.is_zero() && is_rational_square(&y2)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::{naive_count, trace_of_frobenius};
    use crate::numtheory::{int, rat, Fq};

    fn q(a: i64, b: i64) -> RationalCurve {
        RationalCurve::from_ints(a, b).unwrap()
    }

    #[test]
    fn velu_examples() {
        assert_eq!(velu2(&q(0, 1), &int(-1)).unwrap(), q(-15, 22));
        assert_eq!(velu2(&q(-1, 0), &int(0)).unwrap(), q(4, 0));
        assert_eq!(velu2(&q(-1, 0), &int(1)).unwrap(), q(-11, -14));
        assert!(velu2(&q(-1, 0), &int(2)).is_err());
    }

    #[test]
    fn two_torsion_examples() {
        assert_eq!(rational_two_torsion(&q(-1, 0)), [int(-1), int(0), int(1)]);
        assert_eq!(rational_two_torsion(&q(0, 1)), [int(-1)]);
        assert!(rational_two_torsion(&q(1, 1)).is_empty());
        // Non-integral coefficients: (x - 1/2)(x² + x/2 + 1)
        let e = RationalCurve::new(rat(3, 4), rat(-1, 2)).unwrap();
        assert_eq!(rational_two_torsion(&e), [rat(1, 2)]);
        // 2304.i1 = [0,0,0,-120,448]: (x - 8)(x² + 8x - 56)
        assert_eq!(rational_two_torsion(&q(-120, 448)), [int(8)]);
    }

    #[test]
    fn halving_quartic_examples() {
        let h = halving_quartic(&int(0), &int(1), &int(2));
        let want: Vec<Rational> = [-8, -8, 0, -8, 1].iter().map(|&c| int(c)).collect();
        assert_eq!(h.coeffs(), &want[..]);
        let h = halving_quartic(&int(-1), &int(0), &int(0));
        let want: Vec<Rational> = [1, 0, 2, 0, 1].iter().map(|&c| int(c)).collect();
        assert_eq!(h.coeffs(), &want[..]);
    }

    #[test]
    fn quartic_split_examples() {
        let f = Fq::prime(5).unwrap();
        // (x² + 1)² = (x - 2)²(x - 3)² over F_5
        let sq = PolyFq::from_i64s(f, &[1, 0, 2, 0, 1]);
        assert_eq!(quartic_split_type(&sq).unwrap(), QuarticSplit::Other(vec![1, 1, 1, 1]));
        // Factorizations over F_5 below were checked with an independent CAS.
        let g = PolyFq::from_i64s(f, &[1, 1, 0, 0, 1]);
        assert_eq!(quartic_split_type(&g).unwrap(), QuarticSplit::Other(vec![1, 3]));
        let g = PolyFq::from_i64s(f, &[2, 0, 0, 0, 1]);
        assert_eq!(quartic_split_type(&g).unwrap(), QuarticSplit::Irreducible);
        let g = PolyFq::from_i64s(f, &[2, 0, 0, 1, 1]);
        assert_eq!(quartic_split_type(&g).unwrap(), QuarticSplit::Other(vec![1, 1, 2]));
        // (x² - 2)(x² - 3) over F_5
        let h = &PolyFq::from_i64s(f, &[-2, 0, 1]) * &PolyFq::from_i64s(f, &[-3, 0, 1]);
        assert_eq!(quartic_split_type(&h).unwrap(), QuarticSplit::TwoConjugateQuadratics);
        let s = PolyFq::from_i64s(f, &[24, -50, 35, -10, 1]);
        assert_eq!(quartic_split_type(&s).unwrap(), QuarticSplit::SplitsCompletely);
        let c = &PolyFq::from_i64s(f, &[-1, 1]) * &PolyFq::from_i64s(f, &[1, 1, 0, 1]);
        assert_eq!(quartic_split_type(&c).unwrap(), QuarticSplit::Other(vec![1, 3]));
    }

    #[test]
    fn isomorphism() {
        assert!(is_q_isomorphic(&q(-1, 0), &q(-16, 0)));
        assert!(!is_q_isomorphic(&q(-1, 0), &q(-4, 0)));
        assert!(is_q_isomorphic(&q(0, 1), &q(0, 64)));
        assert!(!is_q_isomorphic(&q(0, 1), &q(0, -1)));
        assert!(is_q_isomorphic(&q(-15, 22), &q(-240, 1408)));
        assert!(!is_q_isomorphic(&q(-15, 22), &q(-15, -22)));
    }

    #[test]
    fn class_examples() {
        let c = two_isogeny_class(&q(-1, 0));
        assert!(c.curves.len() >= 4);
        for t in [q(4, 0), q(-11, -14), q(-11, 14)] {
            assert!(c.index_of(&t).is_some(), "{t}");
        }
        assert!(two_isogeny_class(&q(0, 1)).index_of(&q(-15, 22)).is_some());
        let lone = two_isogeny_class(&q(1, 1));
        assert_eq!((lone.curves.len(), lone.edges.len()), (1, 0));
    }

    #[test]
    fn four_torsion_examples() {
        assert!(has_rational_4torsion(&q(4, 0)));
        assert!(!has_rational_4torsion(&q(-1, 0)));
        assert!(!has_rational_4torsion(&q(1, 1)));
    }

    #[test]
    fn duality_pointwise() {
        for p in [5u64, 7, 11, 13, 17, 29, 37, 41, 43, 47] {
            let f = Fq::prime(p).unwrap();
            for (a, b) in [(-1, 0), (0, 1), (-7, 6), (3, 4), (-2, 1)] {
                let Ok(e) = ReducedCurve::new(f.from_i64(a), f.from_i64(b)) else { continue };
                for x0 in crate::numtheory::distinct_roots(&e.cubic()) {
                    let phi = TwoIsogeny::new(&e, x0).unwrap();
                    let dual = phi.dual().unwrap();
                    assert_eq!(naive_count(&e), naive_count(&phi.target));
                    assert_eq!(trace_of_frobenius(&e).unwrap(), trace_of_frobenius(&phi.target).unwrap());
                    for x in f.elements() {
                        let Some(y) = e.rhs(x).sqrt() else { continue };
                        let pt = Point::Affine(x, y);
                        let img = phi.apply(&pt);
                        assert!(phi.target.contains(&img));
                        assert_eq!(dual.apply(&img), e.double(&pt), "p={p} a={a} b={b}");
                    }
                }
            }
        }
    }
}
