use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ReducedCurve;
use crate::numtheory::Fe;

/// A point in affine coordinates, or the point at infinity.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Point {
    Infinity,
    Affine(Fe, Fe),
}

impl Point {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<Fe> {
        match self {
            Point::Infinity => None,
            Point::Affine(x, _) => Some(*x),
        }
    }
}

impl ReducedCurve {
    pub fn neg(&self, pt: &Point) -> Point {
        match *pt {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x, -y),
        }
    }

    pub fn double(&self, pt: &Point) -> Point {
        let Point::Affine(x, y) = *pt else {
            return Point::Infinity;
        };
        if y.is_zero() {
            return Point::Infinity;
        }
        let f = self.field();
        let l = (f.from_u64(3) * x * x + self.a) * (y + y).inv().expect("y != 0");
        let x3 = l * l - x - x;
        Point::Affine(x3, l * (x - x3) - y)
    }

    pub fn add(&self, p1: &Point, p2: &Point) -> Point {
        let (Point::Affine(x1, y1), Point::Affine(x2, y2)) = (*p1, *p2) else {
            return if p1.is_infinity() { *p2 } else { *p1 };
        };
        if x1 == x2 {
            return if y1 == y2 { self.double(p1) } else { Point::Infinity };
        }
        let l = (y2 - y1) * (x2 - x1).inv().expect("x1 != x2");
        let x3 = l * l - x1 - x2;
        Point::Affine(x3, l * (x1 - x3) - y1)
    }

    pub fn sub(&self, p1: &Point, p2: &Point) -> Point {
        self.add(p1, &self.neg(p2))
    }

    /// `[k]P` by double-and-add.
    pub fn scalar_mul(&self, k: i128, pt: &Point) -> Point {
        let base = if k < 0 { self.neg(pt) } else { *pt };
        let mut k = k.unsigned_abs();
        let mut acc = Point::Infinity;
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &b);
            }
            k >>= 1;
            if k > 0 {
                b = self.double(&b);
            }
        }
        acc
    }
}

fn random_element(rng: &mut ChaCha8Rng, e: &ReducedCurve) -> Fe {
    let f = e.field();
    let c0 = rng.next_u64() % f.p();
    let c1 = if f.degree() == 2 { rng.next_u64() % f.p() } else { 0 };
    f.from_pair(c0, c1)
}

/// A pseudo-random affine point, fully determined by `seed`.
///
/// Samples `x` until `x³ + ax + b` is a square, takes the canonical root, and
/// flips its sign on one seeded bit.
pub fn random_point(e: &ReducedCurve, seed: u64) -> Point {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let x = random_element(&mut rng, e);
        if let Some(y) = e.rhs(x).sqrt() {
            let y = if rng.next_u32() & 1 == 1 { -y } else { y };
            return Point::Affine(x, y);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::Fq;
    use alloc::vec::Vec;

    fn curve(p: u64, a: i64, b: i64) -> ReducedCurve {
        let f = Fq::prime(p).unwrap();
        ReducedCurve::new(f.from_i64(a), f.from_i64(b)).unwrap()
    }

    fn all_points(e: &ReducedCurve) -> Vec<Point> {
        let f = e.field();
        let mut v = alloc::vec![Point::Infinity];
        for x in f.elements() {
            for y in f.elements() {
                if y * y == e.rhs(x) {
                    v.push(Point::Affine(x, y));
                }
            }
        }
        v
    }

    #[test]
    fn identity_and_inverse() {
        let e = curve(5, 1, 2);
        for pt in all_points(&e) {
            assert_eq!(e.add(&pt, &Point::Infinity), pt);
            assert_eq!(e.add(&pt, &e.neg(&pt)), Point::Infinity);
        }
    }

    #[test]
    fn orders_divide_group_order() {
        // y^2 = x^3 + x + 2 over F_5 has 4 points
        let e = curve(5, 1, 2);
        let pts = all_points(&e);
        assert_eq!(pts.len(), 4);
        for pt in &pts {
            assert_eq!(e.scalar_mul(4, pt), Point::Infinity);
            let mut multiples: Vec<Point> = (0..8).map(|k| e.scalar_mul(k, pt)).collect();
            multiples.sort_by_key(|q| match q {
                Point::Infinity => None,
                Point::Affine(x, y) => Some((x.encode(), y.encode())),
            });
            multiples.dedup();
            assert_eq!(4 % multiples.len(), 0);
        }
    }

    #[test]
    fn associativity_exhaustive() {
        let e = curve(13, 2, 7);
        let pts = all_points(&e);
        for a in &pts {
            for b in &pts {
                for c in pts.iter().take(5) {
                    assert_eq!(e.add(&e.add(a, b), c), e.add(a, &e.add(b, c)));
                }
            }
        }
    }

    #[test]
    fn random_point_is_deterministic_and_on_curve() {
        let e = curve(1_000_003, 3, 11);
        let p1 = random_point(&e, 42);
        assert_eq!(p1, random_point(&e, 42));
        assert!(e.contains(&p1));
        let f2 = e.base_change(2);
        assert!(f2.contains(&random_point(&f2, 7)));
    }
}
