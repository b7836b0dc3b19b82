//! The fields `F_p` and `F_{p²} = F_p[s]/(s² - n)`.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use super::modular::{add_mod, inv_mod, is_prime_u64, jacobi, mul_mod, neg_mod, reduce_i128, sub_mod};
use super::ring::{Field, Ring};
use crate::error::{usage, Result};

/// Field context: an odd prime, the extension degree (1 or 2), and the
/// smallest positive quadratic nonresidue `n` used to build `F_{p²}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fq {
    p: u64,
    n: u64,
    degree: u8,
}

fn smallest_nonresidue(p: u64) -> u64 {
    (2..p).find(|&a| jacobi(a, p) == -1).expect("odd prime has a nonresidue")
}

impl Fq {
    /// `F_p` for an odd prime `p`.
    pub fn prime(p: u64) -> Result<Fq> {
        Self::new(p, 1)
    }

    /// `F_{p²}` for an odd prime `p`.
    pub fn quadratic(p: u64) -> Result<Fq> {
        Self::new(p, 2)
    }

    pub fn new(p: u64, degree: u8) -> Result<Fq> {
        if p < 3 || !is_prime_u64(p) {
            return Err(usage!("{p} is not an odd prime"));
        }
        if degree == 2 && p > u32::MAX as u64 {
            return Err(usage!("F_(p^2) needs p < 2^32"));
        }
        if degree != 1 && degree != 2 {
            return Err(usage!("extension degree must be 1 or 2"));
        }
        Ok(Self::new_unchecked(p, degree))
    }

    /// Skips the primality test; for hot loops over known primes.
    pub fn new_unchecked(p: u64, degree: u8) -> Fq {
        Fq { p, n: smallest_nonresidue(p), degree }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn nonresidue(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    /// The field size `q`.
    pub fn q(&self) -> u128 {
        if self.degree == 1 {
            self.p as u128
        } else {
            self.p as u128 * self.p as u128
        }
    }

    /// The same prime with the other extension degree.
    pub fn with_degree(&self, degree: u8) -> Fq {
        Fq { degree, ..*self }
    }

    pub fn zero(&self) -> Fe {
        Fe { c0: 0, c1: 0, f: *self }
    }

    pub fn one(&self) -> Fe {
        Fe { c0: 1, c1: 0, f: *self }
    }

    pub fn from_u64(&self, a: u64) -> Fe {
        Fe { c0: a % self.p, c1: 0, f: *self }
    }

    pub fn from_i64(&self, a: i64) -> Fe {
        Fe { c0: reduce_i128(a as i128, self.p), c1: 0, f: *self }
    }

    /// `c0 + c1·s`; `c1` must be zero in `F_p`.
    pub fn from_pair(&self, c0: u64, c1: u64) -> Fe {
        debug_assert!(self.degree == 2 || c1 % self.p == 0);
        Fe { c0: c0 % self.p, c1: c1 % self.p, f: *self }
    }

    /// The generator `s` of `F_{p²}` over `F_p`, with `s² = n`.
    pub fn gen(&self) -> Fe {
        debug_assert_eq!(self.degree, 2);
        Fe { c0: 0, c1: 1, f: *self }
    }

    /// Every element, in encoding order. Only sensible for tiny fields.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        let c1_range = if self.degree == 2 { self.p } else { 1 };
        (0..c1_range).flat_map(move |c1| (0..self.p).map(move |c0| self.from_pair(c0, c1)))
    }

    /// A fixed non-square of the field, used by Tonelli-Shanks.
    fn non_square(&self) -> Fe {
        if self.degree == 1 {
            return self.from_u64(self.n);
        }
        // x is a square in F_{p²} iff its norm is a square in F_p.
        (0..self.p)
            .map(|c0| self.from_pair(c0, 1))
            .find(|z| jacobi(z.norm(), self.p) == -1)
            .expect("F_(p^2) has non-squares")
    }
}

/// An element `c0 + c1·s` of `F_q` together with its field context.
#[derive(Clone, Copy)]
pub struct Fe {
    c0: u64,
    c1: u64,
    f: Fq,
}

impl PartialEq for Fe {
    fn eq(&self, other: &Fe) -> bool {
        self.c0 == other.c0 && self.c1 == other.c1
    }
}

impl Eq for Fe {}

impl core::hash::Hash for Fe {
    fn hash<H: core::hash::Hasher>(&self, h: &mut H) {
        (self.c0, self.c1).hash(h);
    }
}

/// Ordered by the canonical encoding `(c0, c1)`.
impl Ord for Fe {
    fn cmp(&self, other: &Fe) -> Ordering {
        self.encode().cmp(&other.encode())
    }
}

impl PartialOrd for Fe {
    fn partial_cmp(&self, other: &Fe) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.f.degree == 1 || self.c1 == 0 {
            write!(f, "{}", self.c0)
        } else if self.c0 == 0 {
            write!(f, "{}*s", self.c1)
        } else {
            write!(f, "{}+{}*s", self.c0, self.c1)
        }
    }
}

impl Fe {
    pub fn field(&self) -> Fq {
        self.f
    }

    pub fn encode(&self) -> (u64, u64) {
        (self.c0, self.c1)
    }

    pub fn c0(&self) -> u64 {
        self.c0
    }

    pub fn c1(&self) -> u64 {
        self.c1
    }

    pub fn is_zero(&self) -> bool {
        self.c0 == 0 && self.c1 == 0
    }

    pub fn is_one(&self) -> bool {
        self.c0 == 1 && self.c1 == 0
    }

    /// True when the element lies in the prime field.
    pub fn in_base_field(&self) -> bool {
        self.c1 == 0
    }

    /// Reinterpret in the field of the given degree (embedding `F_p ⊂ F_{p²}`).
    pub fn lift(&self, f: Fq) -> Fe {
        debug_assert_eq!(f.p, self.f.p);
        debug_assert!(f.degree == 2 || self.c1 == 0);
        Fe { f, ..*self }
    }

    pub fn square(&self) -> Fe {
        *self * *self
    }

    /// `N(x) = x·x^p` in `F_p`; the identity on `F_p`.
    pub fn norm(&self) -> u64 {
        let p = self.f.p;
        if self.f.degree == 1 {
            return self.c0;
        }
        sub_mod(
            mul_mod(self.c0, self.c0, p),
            mul_mod(self.f.n, mul_mod(self.c1, self.c1, p), p),
            p,
        )
    }

    /// The Frobenius `x ↦ x^p`.
    pub fn frobenius(&self) -> Fe {
        Fe { c1: neg_mod(self.c1, self.f.p), ..*self }
    }

    pub fn pow(&self, mut e: u128) -> Fe {
        let mut acc = self.f.one();
        let mut b = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc *= b;
            }
            b = b.square();
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Option<Fe> {
        let p = self.f.p;
        if self.f.degree == 1 {
            return inv_mod(self.c0, p).map(|c0| Fe { c0, ..*self });
        }
        let ni = inv_mod(self.norm(), p)?;
        Some(Fe {
            c0: mul_mod(self.c0, ni, p),
            c1: mul_mod(neg_mod(self.c1, p), ni, p),
            f: self.f,
        })
    }

    /// Quadratic character: 1 for nonzero squares, 0 for zero, -1 otherwise.
    pub fn legendre(&self) -> i32 {
        jacobi(self.norm(), self.f.p)
    }

    pub fn is_square(&self) -> bool {
        self.legendre() >= 0
    }

    /// A square root by Tonelli-Shanks in the cyclic group `F_q^*`.
    ///
    /// Of the two roots, the one with the smaller encoding is returned.
    pub fn sqrt(&self) -> Option<Fe> {
        if self.is_zero() {
            return Some(*self);
        }
        if !self.is_square() {
            return None;
        }
        let q1 = self.f.q() - 1;
        let e = q1.trailing_zeros();
        let t = q1 >> e;
        let mut m = e;
        let mut c = self.f.non_square().pow(t);
        let mut x = self.pow(t.div_ceil(2));
        let mut b = self.pow(t);
        while !b.is_one() {
            let mut i = 0;
            let mut b2 = b;
            while !b2.is_one() {
                b2 = b2.square();
                i += 1;
            }
            if i >= m {
                return None;
            }
            let mut g = c;
            for _ in 0..(m - i - 1) {
                g = g.square();
            }
            x *= g;
            c = g.square();
            b *= c;
            m = i;
        }
        debug_assert!(x.square() == *self);
        let y = -x;
        Some(if y.encode() < x.encode() { y } else { x })
    }
}

impl Add for Fe {
    type Output = Fe;
    #[inline]
    fn add(self, o: Fe) -> Fe {
        let p = self.f.p;
        Fe { c0: add_mod(self.c0, o.c0, p), c1: add_mod(self.c1, o.c1, p), f: self.f }
    }
}

impl Sub for Fe {
    type Output = Fe;
    #[inline]
    fn sub(self, o: Fe) -> Fe {
        let p = self.f.p;
        Fe { c0: sub_mod(self.c0, o.c0, p), c1: sub_mod(self.c1, o.c1, p), f: self.f }
    }
}

impl Neg for Fe {
    type Output = Fe;
    #[inline]
    fn neg(self) -> Fe {
        let p = self.f.p;
        Fe { c0: neg_mod(self.c0, p), c1: neg_mod(self.c1, p), f: self.f }
    }
}

impl Mul for Fe {
    type Output = Fe;
    #[inline]
    fn mul(self, o: Fe) -> Fe {
        let p = self.f.p;
        if self.c1 == 0 && o.c1 == 0 {
            return Fe { c0: mul_mod(self.c0, o.c0, p), c1: 0, f: self.f };
        }
        let a0b0 = mul_mod(self.c0, o.c0, p);
        let a1b1 = mul_mod(self.c1, o.c1, p);
        let c0 = add_mod(a0b0, mul_mod(self.f.n, a1b1, p), p);
        let c1 = add_mod(mul_mod(self.c0, o.c1, p), mul_mod(self.c1, o.c0, p), p);
        Fe { c0, c1, f: self.f }
    }
}

impl AddAssign for Fe {
    fn add_assign(&mut self, o: Fe) {
        *self = *self + o;
    }
}

impl SubAssign for Fe {
    fn sub_assign(&mut self, o: Fe) {
        *self = *self - o;
    }
}

impl MulAssign for Fe {
    fn mul_assign(&mut self, o: Fe) {
        *self = *self * o;
    }
}

impl Ring for Fe {
    fn zero_like(&self) -> Fe {
        self.f.zero()
    }
    fn one_like(&self) -> Fe {
        self.f.one()
    }
    fn int_like(&self, k: i64) -> Fe {
        self.f.from_i64(k)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

impl Field for Fe {
    fn inverse(&self) -> Option<Fe> {
        self.inv()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_in_prime_field() {
        let f = Fq::prime(5).unwrap();
        assert_eq!(f.from_u64(4).sqrt(), Some(f.from_u64(2)));
        assert_eq!(f.from_u64(3).sqrt(), None);
    }

    #[test]
    fn sqrt_in_f25() {
        let f = Fq::quadratic(5).unwrap();
        assert_eq!(f.nonresidue(), 2);
        // s itself has norm -2, a nonresidue mod 5
        assert_eq!(f.gen().sqrt(), None);
        let s = f.gen() + f.one();
        let r = s.sqrt().unwrap();
        assert_eq!(r * r, s);
        // exhaustive oracle: the smaller of the two roots by encoding
        let mut roots: alloc::vec::Vec<Fe> = f.elements().filter(|x| x.square() == s).collect();
        roots.sort();
        assert_eq!(roots.len(), 2);
        assert_eq!(r, roots[0]);
    }

    #[test]
    fn frobenius_fixes_exactly_the_prime_field() {
        let f = Fq::quadratic(7).unwrap();
        for x in f.elements() {
            assert_eq!(x.pow(7), x.frobenius());
            assert_eq!(x.frobenius() == x, x.in_base_field());
        }
    }

    #[test]
    fn every_nonzero_element_inverts() {
        let f = Fq::quadratic(11).unwrap();
        for x in f.elements().filter(|x| !x.is_zero()) {
            assert!((x * x.inv().unwrap()).is_one());
        }
    }
}
