//! Exact-order polynomials and full-torsion levels, 2-isogenies over `Q` and
//! `F_q`, and 2-isogeny volcanoes.

mod isogeny;
mod volcano;

use alloc::vec;
use alloc::vec::Vec;

pub use isogeny::{
    halving_quartic, has_rational_4torsion, is_q_isomorphic, quartic_split_type, rational_two_torsion,
    two_isogeny_class, velu2, velu2_coeffs, velu2_fq, IsogenyClass, QuarticSplit, TwoIsogeny,
};
pub use volcano::{build_volcano, kohel_height, Volcano, VolcanoNode};

use crate::elliptic::{RationalCurve, ReducedCurve};
use crate::error::{usage, Result};
use crate::numtheory::{roots, splits_completely, Poly, PolyFq, Rational, Ring};

/// Largest supported level: the 2-adic level of the image divides 32.
pub const MAX_LEVEL: u32 = 5;

/// Polynomial whose roots are the `x`-coordinates of the points of exact
/// order `2^m`.
#[derive(Clone, PartialEq, Debug)]
pub struct ExactOrderPoly<T: Ring> {
    pub m: u32,
    pub poly: Poly<T>,
}

/// Degree of the exact-order polynomial: 3, then `(4^m - 4^{m-1}) / 2`.
pub fn exact_order_degree(m: u32) -> usize {
    if m == 1 {
        3
    } else {
        3 * (1usize << (2 * m - 3))
    }
}

/// `h_1 = x³ + ax + b` and `h_2 = x⁶ + 5ax⁴ + 20bx³ - 5a²x² - 4abx - 8b² - a³`.
fn base_polys<T: Ring>(a: &T, b: &T) -> (Poly<T>, Poly<T>) {
    let z = a.zero_like();
    let k = |n: i64| a.int_like(n);
    let h1 = Poly::new(z.clone(), vec![b.clone(), a.clone(), z.clone(), a.one_like()]);
    let a2 = a.clone() * a.clone();
    let h2 = Poly::new(
        z.clone(),
        vec![
            k(-8) * b.clone() * b.clone() - a2.clone() * a.clone(),
            k(-4) * a.clone() * b.clone(),
            k(-5) * a2,
            k(20) * b.clone(),
            k(5) * a.clone(),
            z,
            a.one_like(),
        ],
    );
    (h1, h2)
}

/// `h_{k+1}(x) = D(x)^{deg h_k} h_k(N(x)/D(x))` with `x(2P) = N/D`; valid for
/// `k ≥ 2` because then no root of `h_k` is a 2-torsion abscissa.
fn double_preimage<T: Ring>(h: &Poly<T>, a: &T, b: &T) -> Poly<T> {
    let z = a.zero_like();
    let k = |n: i64| a.int_like(n);
    let num = Poly::new(
        z.clone(),
        vec![a.clone() * a.clone(), k(-8) * b.clone(), k(-2) * a.clone(), z.clone(), a.one_like()],
    );
    let den = Poly::new(z.clone(), vec![k(4) * b.clone(), k(4) * a.clone(), z, k(4)]);
    h.compose_homogeneous(&num, &den)
}

/// The exact-order polynomials `h_1..h_m` for `y² = x³ + ax + b`.
pub fn exact_order_tower<T: Ring>(a: &T, b: &T, m: u32) -> Result<Vec<Poly<T>>> {
    if !(1..=MAX_LEVEL).contains(&m) {
        return Err(usage!("level m = {m} outside 1..={MAX_LEVEL}"));
    }
    let (h1, h2) = base_polys(a, b);
    let mut out = vec![h1];
    if m >= 2 {
        out.push(h2);
    }
    while out.len() < m as usize {
        let next = double_preimage(out.last().expect("nonempty"), a, b);
        out.push(next);
    }
    Ok(out)
}

/// `h_m` over `Q`.
pub fn exact_order_poly(curve: &RationalCurve, m: u32) -> Result<ExactOrderPoly<Rational>> {
    let poly = exact_order_tower(&curve.a, &curve.b, m)?.pop().expect("m >= 1");
    Ok(ExactOrderPoly { m, poly })
}

/// `h_m` over the field of a reduced curve.
pub fn exact_order_poly_fq(e: &ReducedCurve, m: u32) -> Result<ExactOrderPoly<crate::numtheory::Fe>> {
    let poly = exact_order_tower(&e.a, &e.b, m)?.pop().expect("m >= 1");
    Ok(ExactOrderPoly { m, poly })
}

/// Lazily built `h_1, h_2, ...` over `F_q`, for cascades that usually stop
/// after the first levels.
pub struct TowerFq {
    e: ReducedCurve,
    polys: Vec<PolyFq>,
}

impl TowerFq {
    pub fn new(e: &ReducedCurve) -> TowerFq {
        TowerFq { e: *e, polys: Vec::new() }
    }

    /// `h_k` for `1 ≤ k ≤ 5`.
    pub fn get(&mut self, k: u32) -> &PolyFq {
        debug_assert!((1..=MAX_LEVEL).contains(&k));
        if self.polys.is_empty() {
            let (h1, h2) = base_polys(&self.e.a, &self.e.b);
            self.polys.push(h1);
            self.polys.push(h2);
        }
        while self.polys.len() < k as usize {
            let next = double_preimage(self.polys.last().expect("nonempty"), &self.e.a, &self.e.b);
            self.polys.push(next);
        }
        &self.polys[k as usize - 1]
    }

    /// Whether `x(E[2^k]) ⊆ F_q` for `k = 1..=m`, as a vector of prefixes.
    pub fn splitting_prefix(&mut self, m: u32) -> Result<u32> {
        for k in 1..=m {
            if !splits_completely(self.get(k))? {
                return Ok(k - 1);
            }
        }
        Ok(m)
    }
}

/// True iff every `h_k`, `k ≤ m`, splits over the field of `e`, i.e. all
/// `x`-coordinates of `E[2^m]` are rational.
pub fn x_all_rational(e: &ReducedCurve, m: u32) -> Result<bool> {
    if !(1..=MAX_LEVEL).contains(&m) {
        return Err(usage!("level m = {m} outside 1..={MAX_LEVEL}"));
    }
    Ok(TowerFq::new(e).splitting_prefix(m)? == m)
}

/// Largest `k ≤ m_max` with `E[2^k] ⊆ E(F_q)`, from splitting of `h_k` and
/// the quadratic character of `x³ + ax + b` at each root. Slow oracle for the
/// halving-chain computation.
pub fn full_torsion_level_verified(e: &ReducedCurve, m_max: u32) -> Result<u32> {
    let mut tower = TowerFq::new(e);
    for k in 1..=m_max.min(MAX_LEVEL) {
        let h = tower.get(k);
        if !splits_completely(h)? {
            return Ok(k - 1);
        }
        if !roots(h).iter().all(|x| e.rhs(*x).is_square()) {
            return Ok(k - 1);
        }
    }
    Ok(m_max.min(MAX_LEVEL))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::{full_torsion_level, naive_count, sylow2_shape};
    use crate::numtheory::{int, Fq};

    fn curve(p: u64, a: i64, b: i64) -> ReducedCurve {
        let f = Fq::prime(p).unwrap();
        ReducedCurve::new(f.from_i64(a), f.from_i64(b)).unwrap()
    }

    #[test]
    fn spec_polys() {
        let e = RationalCurve::from_ints(0, 1).unwrap();
        let h2 = exact_order_poly(&e, 2).unwrap().poly;
        let want: Vec<Rational> = [-8, 0, 0, 20, 0, 0, 1].iter().map(|&c| int(c)).collect();
        assert_eq!(h2.coeffs(), &want[..]);
        assert_eq!(exact_order_poly(&e, 1).unwrap().poly, e.cubic());
        assert!(exact_order_poly(&e, 0).is_err());
        assert!(exact_order_poly(&e, 6).is_err());
    }

    #[test]
    fn degrees() {
        let e = RationalCurve::from_ints(-7, 3).unwrap();
        for m in 1..=3 {
            assert_eq!(exact_order_poly(&e, m).unwrap().poly.degree(), Some(exact_order_degree(m)));
        }
        let r = curve(1009, -7, 3);
        for m in 1..=5 {
            assert_eq!(exact_order_poly_fq(&r, m).unwrap().poly.degree(), Some(exact_order_degree(m)));
        }
        assert_eq!((2..=5).map(exact_order_degree).collect::<Vec<_>>(), [6, 24, 96, 384]);
    }

    #[test]
    fn x_rationality_examples() {
        assert!(x_all_rational(&curve(5, -1, 0), 1).unwrap());
        assert!(!x_all_rational(&curve(5, 1, 2), 1).unwrap());
        // Smallest p > 3 with every abscissa of E[4] rational on y² = x³ - x.
        let p = crate::numtheory::prime_stream(5)
            .find(|&p| x_all_rational(&curve(p, -1, 0), 2).unwrap())
            .unwrap();
        assert_eq!(p, 17);
    }

    #[test]
    fn verified_level_matches_halving_chain() {
        assert_eq!(full_torsion_level_verified(&curve(5, -1, 0), 5).unwrap(), 1);
        assert_eq!(full_torsion_level_verified(&curve(5, 1, 1), 5).unwrap(), 0);
        for p in [17u64, 41, 73, 89, 97, 113, 193, 257] {
            for (a, b) in [(-1, 0), (-4, 0), (-7, 6), (-21, 20), (-43, 42), (2, 5)] {
                let Ok(e) = ReducedCurve::new(Fq::prime(p).unwrap().from_i64(a), Fq::prime(p).unwrap().from_i64(b))
                else {
                    continue;
                };
                let v = full_torsion_level_verified(&e, 5).unwrap();
                assert_eq!(full_torsion_level(&e, 5), v, "p={p} a={a} b={b}");
                assert_eq!(sylow2_shape(&e, naive_count(&e)).unwrap().a, v.min(naive_count(&e).trailing_zeros() / 2));
            }
        }
    }
}
