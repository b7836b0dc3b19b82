//! Short Weierstrass curves over `Q` and `F_q`, the group law, point
//! counting, and 2-Sylow structure.

mod count;
mod group;
mod sylow;

use alloc::string::String;
use alloc::vec;
use core::fmt;

use num_traits::{One, Zero};

pub use count::{all_points, naive_count, sylow2_shape_naive, trace_of_frobenius, trace_of_frobenius_seeded, TraceData};
pub use group::{random_point, Point};
pub use sylow::{full_torsion_level, halve, sylow2_shape, sylow2_shape_sampled, SylowShape};

use crate::error::{usage, validation, Error, Result};
use crate::numtheory::rational::{int, rat_mod_p};
use crate::numtheory::{Fe, Fq, Poly, PolyFq, Rational};

/// `y² = x³ + ax + b` over `Q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalCurve {
    pub a: Rational,
    pub b: Rational,
    pub label: Option<String>,
}

impl RationalCurve {
    pub fn new(a: Rational, b: Rational) -> Result<RationalCurve> {
        let c = RationalCurve { a, b, label: None };
        if c.discriminant().is_zero() {
            return Err(validation!("singular curve y^2 = x^3 + ({})x + ({})", c.a, c.b));
        }
        Ok(c)
    }

    pub fn from_ints(a: i64, b: i64) -> Result<RationalCurve> {
        Self::new(int(a), int(b))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> RationalCurve {
        self.label = Some(label.into());
        self
    }

    /// Short model of `y² + a1xy + a3y = x³ + a2x² + a4x + a6`, obtained by
    /// completing the square and the cube with `u = 1`:
    /// `y² = x³ - c4/48 x - c6/864`.
    pub fn from_long_weierstrass(ainvs: &[Rational; 5]) -> Result<RationalCurve> {
        let [a1, a2, a3, a4, a6] = ainvs;
        let b2 = a1 * a1 + int(4) * a2;
        let b4 = int(2) * a4 + a1 * a3;
        let b6 = a3 * a3 + int(4) * a6;
        let c4 = &b2 * &b2 - int(24) * &b4;
        let c6 = -(&b2 * &b2 * &b2) + int(36) * &b2 * &b4 - int(216) * &b6;
        Self::new(-c4 / int(48), -c6 / int(864))
    }

    /// `-16(4a³ + 27b²)`
    pub fn discriminant(&self) -> Rational {
        int(-16) * (int(4) * &self.a * &self.a * &self.a + int(27) * &self.b * &self.b)
    }

    /// `1728 · 4a³ / (4a³ + 27b²)`
    pub fn j_invariant(&self) -> Rational {
        let a3 = int(4) * &self.a * &self.a * &self.a;
        int(1728) * &a3 / (&a3 + int(27) * &self.b * &self.b)
    }

    /// The 2-division cubic `x³ + ax + b`.
    pub fn cubic(&self) -> Poly<Rational> {
        Poly::new(Rational::zero(), vec![self.b.clone(), self.a.clone(), Rational::zero(), Rational::one()])
    }

    /// `x³ + ax + b` at `x`.
    pub fn rhs(&self, x: &Rational) -> Rational {
        x * x * x + &self.a * x + &self.b
    }

    pub fn name(&self) -> String {
        match &self.label {
            Some(l) => l.clone(),
            None => alloc::format!("[{},{}]", self.a, self.b),
        }
    }
}

impl fmt::Display for RationalCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + ({})x + ({})", self.a, self.b)?;
        if let Some(l) = &self.label {
            write!(f, " [{l}]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for RationalCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `y² = x³ + ax + b` over `F_q`, nonsingular.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ReducedCurve {
    pub a: Fe,
    pub b: Fe,
}

impl ReducedCurve {
    pub fn new(a: Fe, b: Fe) -> Result<ReducedCurve> {
        let c = ReducedCurve { a, b };
        if c.disc_factor().is_zero() {
            return Err(Error::BadPrime(a.field().p()));
        }
        Ok(c)
    }

    pub fn field(&self) -> Fq {
        self.a.field()
    }

    /// `4a³ + 27b²`, zero exactly when the curve is singular.
    fn disc_factor(&self) -> Fe {
        let f = self.field();
        f.from_u64(4) * self.a * self.a * self.a + f.from_u64(27) * self.b * self.b
    }

    pub fn j_invariant(&self) -> Fe {
        let f = self.field();
        let a3 = f.from_u64(4) * self.a * self.a * self.a;
        f.from_u64(1728) * a3 * self.disc_factor().inv().expect("nonsingular")
    }

    pub fn rhs(&self, x: Fe) -> Fe {
        (x * x + self.a) * x + self.b
    }

    pub fn cubic(&self) -> PolyFq {
        let f = self.field();
        Poly::new(f.zero(), vec![self.b, self.a, f.zero(), f.one()])
    }

    /// The same equation read over the other field degree.
    pub fn base_change(&self, degree: u8) -> ReducedCurve {
        let f = self.field().with_degree(degree);
        ReducedCurve { a: self.a.lift(f), b: self.b.lift(f) }
    }

    /// The quadratic twist `y² = x³ + d²a x + d³b`.
    pub fn twist(&self, d: Fe) -> ReducedCurve {
        ReducedCurve { a: d * d * self.a, b: d * d * d * self.b }
    }

    pub fn contains(&self, pt: &Point) -> bool {
        match pt {
            Point::Infinity => true,
            Point::Affine(x, y) => *y * *y == self.rhs(*x),
        }
    }
}

/// Reduce a rational model modulo `p` in `F_p` (`degree = 1`) or `F_{p²}`.
pub fn reduce(curve: &RationalCurve, p: u64, degree: u8) -> Result<ReducedCurve> {
    let f = Fq::new(p, degree)?;
    reduce_in(curve, f)
}

/// As [`reduce`], with an already-built field context.
pub fn reduce_in(curve: &RationalCurve, f: Fq) -> Result<ReducedCurve> {
    let p = f.p();
    let a = rat_mod_p(&curve.a, p).ok_or(Error::BadPrime(p))?;
    let b = rat_mod_p(&curve.b, p).ok_or(Error::BadPrime(p))?;
    ReducedCurve::new(f.from_u64(a), f.from_u64(b))
}

/// `p > 2`, no coefficient denominator divisible by `p`, and both reduced
/// discriminants nonzero.
pub fn is_good_prime(e: &RationalCurve, e2: &RationalCurve, p: u64) -> bool {
    if p <= 2 {
        return false;
    }
    match Fq::prime(p) {
        Ok(f) => reduce_in(e, f).is_ok() && reduce_in(e2, f).is_ok(),
        Err(_) => false,
    }
}

/// `ap ≡ 0 (mod p)`; for `p ≥ 5` this means `ap = 0`.
pub fn is_supersingular(t: &TraceData) -> Result<bool> {
    if t.p < 5 {
        return Err(usage!("supersingularity test needs p >= 5"));
    }
    Ok(t.ap.rem_euclid(t.p as i64) == 0)
}
