//! Dense univariate polynomials, coefficients in ascending degree order.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::fq::{Fe, Fq};
use super::ring::{Field, Ring};
use crate::error::{usage, Result};

/// A polynomial over a [`Ring`]. `zero` witnesses the coefficient ring so
/// that the zero polynomial still knows which field it lives in.
#[derive(Clone, PartialEq)]
pub struct Poly<T: Ring> {
    coeffs: Vec<T>,
    zero: T,
}

pub type PolyFq = Poly<Fe>;

impl<T: Ring> Poly<T> {
    pub fn new(zero: T, mut coeffs: Vec<T>) -> Poly<T> {
        while coeffs.last().is_some_and(|c| c.is_zero_elem()) {
            coeffs.pop();
        }
        Poly { coeffs, zero }
    }

    pub fn zero(zero: T) -> Poly<T> {
        Poly { coeffs: Vec::new(), zero }
    }

    pub fn constant(c: T) -> Poly<T> {
        let zero = c.zero_like();
        Poly::new(zero, vec![c])
    }

    /// The monomial `x`.
    pub fn x(zero: T) -> Poly<T> {
        let one = zero.one_like();
        Poly::new(zero.clone(), vec![zero, one])
    }

    /// `x - r`
    pub fn linear_root(r: T) -> Poly<T> {
        let one = r.one_like();
        Poly::new(r.zero_like(), vec![-r, one])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn ring_zero(&self) -> &T {
        &self.zero
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = self.zero.clone();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn scale(&self, k: &T) -> Poly<T> {
        Poly::new(self.zero.clone(), self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    pub fn derivative(&self) -> Poly<T> {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.int_like(i as i64) * c.clone())
            .collect();
        Poly::new(self.zero.clone(), c)
    }

    pub fn pow(&self, mut e: u32) -> Poly<T> {
        let mut acc = Poly::constant(self.zero.one_like());
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        acc
    }

    /// `den^d · self(num/den)` where `d = deg self`; the numerator of the
    /// composition with a rational function, as a polynomial.
    pub fn compose_homogeneous(&self, num: &Poly<T>, den: &Poly<T>) -> Poly<T> {
        let Some(d) = self.degree() else {
            return self.clone();
        };
        // Horner in the homogenized form: acc = acc·num + c_i·den^(d-i).
        let mut den_pows = Vec::with_capacity(d + 1);
        den_pows.push(Poly::constant(self.zero.one_like()));
        for i in 1..=d {
            let next = &den_pows[i - 1] * den;
            den_pows.push(next);
        }
        let mut acc = Poly::constant(self.coeffs[d].clone());
        for i in (0..d).rev() {
            acc = &(&acc * num) + &den_pows[d - i].scale(&self.coeffs[i]);
        }
        acc
    }

    pub fn map<U: Ring>(&self, zero: U, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(zero, self.coeffs.iter().map(f).collect())
    }
}

impl<T: Field> Poly<T> {
    pub fn monic(&self) -> Poly<T> {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&l.inverse().expect("nonzero leading coefficient")),
        }
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn divrem(&self, d: &Poly<T>) -> (Poly<T>, Poly<T>) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.coeffs[dd].inverse().expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(self.zero.clone()), self.clone());
        }
        let mut q = vec![self.zero.clone(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = r[i].clone() * inv.clone();
            if c.is_zero_elem() {
                continue;
            }
            for j in 0..=dd {
                let t = c.clone() * d.coeffs[j].clone();
                r[i - dd + j] = r[i - dd + j].clone() - t;
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        (Poly::new(self.zero.clone(), q), Poly::new(self.zero.clone(), r))
    }

    pub fn rem(&self, d: &Poly<T>) -> Poly<T> {
        self.divrem(d).1
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Poly<T>) -> Poly<T> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u128, m: &Poly<T>) -> Poly<T> {
        let mut acc = Poly::constant(self.zero.one_like()).rem(m);
        let mut b = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &b).rem(m);
            }
            e >>= 1;
            if e > 0 {
                b = (&b * &b).rem(m);
            }
        }
        acc
    }
}

impl<T: Ring> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, o: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect();
        Poly::new(self.zero.clone(), c)
    }
}

impl<T: Ring> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, o: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n).map(|i| self.coeff(i) - o.coeff(i)).collect();
        Poly::new(self.zero.clone(), c)
    }
}

impl<T: Ring> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.zero.clone(), self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Ring> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, o: &Poly<T>) -> Poly<T> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.zero.clone());
        }
        let mut c = vec![self.zero.clone(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(self.zero.clone(), c)
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero_elem() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<T: Ring + fmt::Debug> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl PolyFq {
    pub fn from_u64s(f: Fq, coeffs: &[u64]) -> PolyFq {
        Poly::new(f.zero(), coeffs.iter().map(|&c| f.from_u64(c)).collect())
    }

    pub fn from_i64s(f: Fq, coeffs: &[i64]) -> PolyFq {
        Poly::new(f.zero(), coeffs.iter().map(|&c| f.from_i64(c)).collect())
    }

    pub fn field(&self) -> Fq {
        self.zero.field()
    }

    /// `x^q mod self`.
    fn frobenius_x(&self) -> PolyFq {
        Poly::x(self.zero).powmod(self.field().q(), self)
    }
}

/// True iff `f` is a product of `deg f` linear factors over its field.
///
/// Tests `x^q ≡ x (mod f)`; exact for squarefree `f`, which callers guarantee.
pub fn splits_completely(f: &PolyFq) -> Result<bool> {
    let d = f.degree().ok_or_else(|| usage!("splits_completely of the zero polynomial"))?;
    if d <= 1 {
        return Ok(true);
    }
    let m = f.monic();
    let x = Poly::x(m.zero).rem(&m);
    Ok(m.frobenius_x() == x)
}

/// All roots of a nonzero `f` in its field, with multiplicity, sorted by encoding.
///
/// Distinct roots come from `gcd(f, x^q - x)` split by equal-degree
/// factorization with a fixed sequence of shifts, so the output is deterministic.
pub fn roots(f: &PolyFq) -> Vec<Fe> {
    let Some(d) = f.degree() else {
        return Vec::new();
    };
    if d == 0 {
        return Vec::new();
    }
    let m = f.monic();
    let x = Poly::x(m.zero);
    let g = m.gcd(&(&m.frobenius_x() - &x));
    let mut distinct = Vec::new();
    split_linear(&g, &mut distinct);
    let mut out = Vec::new();
    for r in distinct {
        let lin = Poly::linear_root(r);
        let mut rest = m.clone();
        loop {
            let (q, rem) = rest.divrem(&lin);
            if !rem.is_zero() {
                break;
            }
            out.push(r);
            rest = q;
        }
    }
    out.sort();
    out
}

/// Distinct roots of `f`, sorted by encoding.
pub fn distinct_roots(f: &PolyFq) -> Vec<Fe> {
    let mut r = roots(f);
    r.dedup();
    r
}

/// Split a monic squarefree product of distinct linear factors.
fn split_linear(g: &PolyFq, out: &mut Vec<Fe>) {
    let Some(d) = g.degree() else {
        return;
    };
    match d {
        0 => {}
        1 => out.push(-g.coeffs[0] * g.coeffs[1].inv().expect("monic")),
        _ => {
            let fq = g.field();
            let half = (fq.q() - 1) / 2;
            let shifts = (0..fq.p()).flat_map(|i| {
                let c1_range = if fq.degree() == 2 { 1..4u64 } else { 0..1u64 };
                c1_range.map(move |j| fq.from_pair(i, j))
            });
            for delta in shifts {
                let shifted = Poly::new(fq.zero(), vec![delta, fq.one()]);
                let h = &shifted.powmod(half, g) - &Poly::constant(fq.one());
                let h = g.gcd(&h);
                let hd = h.degree().unwrap_or(0);
                if hd > 0 && hd < d {
                    let (q, _) = g.divrem(&h);
                    split_linear(&h, out);
                    split_linear(&q, out);
                    return;
                }
            }
            // Unreachable in practice; exhaustive search keeps the contract.
            out.extend(fq.elements().filter(|x| g.eval(x).is_zero()));
        }
    }
}
