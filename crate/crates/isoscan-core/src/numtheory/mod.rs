//! Exact and modular arithmetic: primes, `F_p` and `F_{p²}`, polynomials over
//! them, square roots, splitting tests, and rationals.

pub mod fq;
pub mod modular;
pub mod poly;
pub mod primes;
pub mod rational;
pub mod ring;

pub use fq::{Fe, Fq};
pub use poly::{distinct_roots, roots, splits_completely, Poly, PolyFq};
pub use primes::{prime_stream, PrimeStream};
pub use rational::{int, rat, Rational};
pub use ring::{Field, Ring};

use crate::error::{usage, Result};

/// Legendre symbol `(a/p)` for an odd prime `p`.
pub fn legendre(a: i64, p: u64) -> Result<i32> {
    if p < 3 || !modular::is_prime_u64(p) {
        return Err(usage!("{p} is not an odd prime"));
    }
    Ok(modular::jacobi(modular::reduce_i128(a as i128, p), p))
}

/// Square root in `F_q`; see [`Fe::sqrt`].
pub fn sqrt_fq(a: &Fe) -> Option<Fe> {
    a.sqrt()
}

/// Exponent of 2 in `n != 0`.
pub fn v2(n: i128) -> Result<u32> {
    if n == 0 {
        return Err(usage!("v2(0) is undefined"));
    }
    Ok(n.trailing_zeros())
}

/// `n` divided by its largest square divisor, sign preserved.
pub fn squarefree_part(n: i128) -> Result<i128> {
    if n == 0 {
        return Err(usage!("squarefree part of 0 is undefined"));
    }
    let sign = n.signum();
    let mut m = n.unsigned_abs();
    let mut out: u128 = 1;
    let mut d: u128 = 2;
    while d * d * d <= m {
        let mut e = 0;
        while m % d == 0 {
            m /= d;
            e += 1;
        }
        if e % 2 == 1 {
            out *= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    // What is left has at most two prime factors, both above the cube root.
    let r = modular::isqrt_u128(m);
    if r * r != m {
        out *= m;
    }
    Ok(sign * out as i128)
}
