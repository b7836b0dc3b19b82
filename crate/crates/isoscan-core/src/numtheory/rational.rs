//! Exact rationals (arbitrary precision, always in lowest terms).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// `num-rational`'s big rational keeps numerator and denominator coprime with
/// a positive denominator, so the representation is canonical.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `r mod p`, or `None` when `p` divides the denominator.
pub fn rat_mod_p(r: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = r.denom().mod_floor(&pb).to_u64()?;
    if den == 0 {
        return None;
    }
    let num = r.numer().mod_floor(&pb).to_u64()?;
    let inv = super::modular::inv_mod(den, p)?;
    Some(super::modular::mul_mod(num, inv, p))
}

/// Exact `k`-th root of a non-negative integer, if it exists.
pub fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        if k % 2 == 1 {
            return exact_root(&-n, k).map(|r| -r);
        }
        return None;
    }
    let r = n.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact `k`-th root of a rational, if it exists.
pub fn rational_root(r: &Rational, k: u32) -> Option<Rational> {
    let n = exact_root(r.numer(), k)?;
    let d = exact_root(r.denom(), k)?;
    Some(Rational::new(n, d))
}

pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    rational_root(r, 2)
}

pub fn is_rational_square(r: &Rational) -> bool {
    r.is_zero() || rational_sqrt(r).is_some()
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()))
}
