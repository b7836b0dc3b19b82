use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::elliptic::RationalCurve;
use crate::error::{validation, Result};
use crate::numtheory::{rat, Rational};
use crate::torsion_isogeny::{has_rational_4torsion, two_isogeny_class};

/// The thirteen rational CM `j`-invariants with their discriminants.
pub const CM_J_INVARIANTS: [(i64, i64); 13] = [
    (0, -3),
    (1728, -4),
    (-3375, -7),
    (8000, -8),
    (-32768, -11),
    (54000, -12),
    (287496, -16),
    (-884736, -19),
    (-12288000, -27),
    (16581375, -28),
    (-884736000, -43),
    (-147197952000, -67),
    (-262537412640768000, -163),
];

/// Discriminant of the CM order when `E` has CM over `Q̄`.
pub fn is_cm(e: &RationalCurve) -> Option<i64> {
    let j = e.j_invariant();
    if !j.is_integer() {
        return None;
    }
    let j = j.to_integer();
    CM_J_INVARIANTS.iter().find(|(cj, _)| BigInt::from(*cj) == j).map(|&(_, d)| d)
}

/// `Σ_{m≥2} (1/2) / (2·4^{m-1})`, summed as a geometric series.
pub fn cm_series() -> Rational {
    let first = rat(1, 2) / rat(2 * 4, 1);
    let r = rat(1, 4);
    first / (rat(1, 1) - r)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CmReason {
    EqualJ,
    FourTorsionInClass,
    /// Neither obstruction applies; one side carries `c = 1/2` at every level.
    Generic,
}

impl fmt::Display for CmReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CmReason::EqualJ => "equal j-invariants: E and E' are isomorphic over F_p2 at every good prime",
            CmReason::FourTorsionInClass => "a curve in the 2-isogeny class has a rational point of order 4",
            CmReason::Generic => "no obstruction: anomalous primes of every defect (m+1,m) on one side",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CmPrediction {
    pub value: Rational,
    pub reason: CmReason,
}

/// The proportion for a 2-isogenous CM pair: 0 or 1/12.
pub fn cm_predict(e: &RationalCurve, ep: &RationalCurve) -> Result<CmPrediction> {
    if is_cm(e).is_none() || is_cm(ep).is_none() {
        return Err(validation!("cm_predict needs two CM curves"));
    }
    let class = two_isogeny_class(e);
    let (Some(i), Some(k)) = (class.index_of(e), class.index_of(ep)) else {
        return Err(validation!("{} and {} are not in the same 2-isogeny class", e.name(), ep.name()));
    };
    if !class.edges.contains(&(i.min(k), i.max(k))) {
        return Err(validation!("{} and {} are not 2-isogenous", e.name(), ep.name()));
    }
    if e.j_invariant() == ep.j_invariant() {
        return Ok(CmPrediction { value: Rational::zero(), reason: CmReason::EqualJ });
    }
    if class.curves.iter().any(has_rational_4torsion) {
        return Ok(CmPrediction { value: Rational::zero(), reason: CmReason::FourTorsionInClass });
    }
    Ok(CmPrediction { value: cm_series(), reason: CmReason::Generic })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series() {
        assert_eq!(cm_series(), rat(1, 12));
    }

    #[test]
    fn cm_membership() {
        assert_eq!(is_cm(&RationalCurve::from_ints(-1, 0).unwrap()), Some(-4));
        assert_eq!(is_cm(&RationalCurve::from_ints(-15, 22).unwrap()), Some(-12));
        assert_eq!(is_cm(&RationalCurve::from_ints(-11, 14).unwrap()), Some(-16));
        assert_eq!(is_cm(&RationalCurve::from_ints(1, 1).unwrap()), None);
    }

    #[test]
    fn j_zero_pair() {
        let e = RationalCurve::from_ints(0, 1).unwrap();
        let ep = RationalCurve::from_ints(-15, 22).unwrap();
        assert_eq!(cm_predict(&e, &ep).unwrap().value, rat(1, 12));
        assert!(cm_predict(&e, &RationalCurve::from_ints(1, 1).unwrap()).is_err());
    }
}
