//! Exact predictions of the proportion of anomalous primes from 2-adic image
//! data, and the rule for CM pairs. All arithmetic is exact.

mod cm;
mod extremal;

use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

pub use cm::{cm_predict, cm_series, is_cm, CmPrediction, CmReason, CM_J_INVARIANTS};
pub use extremal::{extremal_sweep, ExtremalSummary};

use crate::error::{usage, validation, Result};
use crate::numtheory::{int, rat, Rational};

/// Sizes of the images of the 2-adic Galois representation mod 4, 8, 16, 32.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct GaloisImageProfile {
    /// `|G(4)|, |G(8)|, |G(16)|, |G(32)|`
    pub sizes: [u64; 4],
    /// Whether `-I` lies in the image.
    pub minus_i: bool,
    pub cm: bool,
}

impl GaloisImageProfile {
    pub fn new(sizes: [u64; 4], minus_i: bool, cm: bool) -> Result<GaloisImageProfile> {
        let p = GaloisImageProfile { sizes, minus_i, cm };
        p.validate()?;
        Ok(p)
    }

    /// `|G(2^m)|`; beyond level 32 the image is the full preimage, so each
    /// further level multiplies the size by 16 (CM images: by 4).
    pub fn size(&self, m: u32) -> u128 {
        assert!(m >= 2, "image sizes start at level 4");
        if m <= 5 {
            return self.sizes[m as usize - 2] as u128;
        }
        let step: u128 = if self.cm { 4 } else { 16 };
        self.sizes[3] as u128 * step.pow(m - 5)
    }

    /// The largest non-CM image compatible with a rational 2-isogeny:
    /// index 3, so `|G(2^m)| = 2^{4m-3}`.
    pub fn maximal() -> GaloisImageProfile {
        GaloisImageProfile { sizes: [32, 512, 8192, 131072], minus_i: true, cm: false }
    }

    /// Image sizes `2·4^{m-1}` shared by the CM images that admit anomalous primes.
    pub fn cm_generic() -> GaloisImageProfile {
        GaloisImageProfile { sizes: [8, 32, 128, 512], minus_i: true, cm: true }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sizes.iter().any(|&s| s == 0 || !s.is_power_of_two()) {
            return Err(validation!("image sizes must be powers of two, got {:?}", self.sizes));
        }
        for m in 2..=5u32 {
            let s = self.size(m);
            if self.cm {
                let want = 2 * 4u128.pow(m - 1);
                if s != want {
                    return Err(validation!("CM image needs |G(2^{m})| = {want}, got {s}"));
                }
            } else if (1u128 << (4 * m - 3)) % s != 0 {
                return Err(validation!("|G(2^{m})| = {s} does not divide 2^{}", 4 * m - 3));
            }
            if m > 2 {
                let r = s / self.size(m - 1);
                if s % self.size(m - 1) != 0 || !matches!(r, 2 | 4 | 8 | 16) {
                    return Err(validation!("|G(2^{m})| / |G(2^{})| must be 2, 4, 8 or 16", m - 1));
                }
            }
        }
        Ok(())
    }
}

/// Degrees in the tower of torsion fields at one level `2^m`: `K`, `K'` are
/// the fields of `x`-coordinates and `L`, `L'` the full torsion fields.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FieldDegreeData {
    pub kk_over_k: u32,
    pub ll_over_l: u32,
    pub kk_over_kp: u32,
    pub ll_over_lp: u32,
    pub k_in_kp: bool,
    pub kp_in_k: bool,
}

/// Coefficients `c_{2^m}`, `c'_{2^m}` for `m = 2, 3, 4` (index 0, 1, 2).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CoefficientVector {
    pub c: [Rational; 3],
    pub cp: [Rational; 3],
}

impl CoefficientVector {
    pub fn new(c: [Rational; 3], cp: [Rational; 3]) -> Result<CoefficientVector> {
        let v = CoefficientVector { c, cp };
        v.validate()?;
        Ok(v)
    }

    pub fn uniform(c: Rational) -> CoefficientVector {
        CoefficientVector { c: [c.clone(), c.clone(), c.clone()], cp: [c.clone(), c.clone(), c] }
    }

    pub fn validate(&self) -> Result<()> {
        let allowed = [Rational::zero(), rat(1, 2), Rational::one()];
        for (c, cp) in self.c.iter().zip(&self.cp) {
            if !allowed.contains(c) || !allowed.contains(cp) {
                return Err(validation!("coefficients must lie in {{0, 1/2, 1}}, got ({c}, {cp})"));
            }
            if c + cp > Rational::one() {
                return Err(validation!("c + c' = {} exceeds 1", c + cp));
            }
        }
        Ok(())
    }
}

/// Predicted density of the primes of one defect.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DefectDensity {
    pub defect: (u32, u32),
    pub density: Rational,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProportionBreakdown {
    pub head: Rational,
    pub tail: Rational,
    pub total: Rational,
    /// Defects `(m+1, m)` and `(m, m+1)` for `m = 2..=7`.
    pub per_defect: Vec<DefectDensity>,
}

impl fmt::Display for ProportionBreakdown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "head = {}, tail = {}, total = {}", self.head, self.tail, self.total)
    }
}

/// `(c, c')` at one level from the tower degrees, via
/// `c = 1 - X` with `X = 2/[KK':K] - 1/[LL':L]` and the mirrored formula.
pub fn c_from_degrees(d: &FieldDegreeData) -> Result<(Rational, Rational)> {
    let degs = [d.kk_over_k, d.ll_over_l, d.kk_over_kp, d.ll_over_lp];
    if degs.iter().any(|&x| !matches!(x, 1 | 2 | 4)) {
        return Err(validation!("tower degrees must be 1, 2 or 4, got {degs:?}"));
    }
    if degs.contains(&4) {
        return Err(validation!("a tower degree of 4 cannot occur"));
    }
    if (d.kk_over_k, d.ll_over_l) == (2, 1) || (d.kk_over_kp, d.ll_over_lp) == (2, 1) {
        return Err(validation!("[KK':K] = 2 with [LL':L] = 1 cannot occur"));
    }
    if d.k_in_kp != (d.kk_over_kp == 1) || d.kp_in_k != (d.kk_over_k == 1) {
        return Err(validation!("containments disagree with the degrees [KK':K'], [KK':K]"));
    }
    let x = int(2) / int(d.kk_over_k as i64) - int(1) / int(d.ll_over_l as i64);
    let xp = int(2) / int(d.kk_over_kp as i64) - int(1) / int(d.ll_over_lp as i64);
    let (c, cp) = (Rational::one() - x, Rational::one() - xp);
    if c < Rational::zero() || cp < Rational::zero() {
        return Err(validation!("degrees give a negative coefficient ({c}, {cp})"));
    }
    Ok((c, cp))
}

/// Coefficients when at most one image contains `-I` at the level.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OneSided {
    /// Only `G(2^m)` contains `-I`: `c = 1`, and `c'` vanishes from here on.
    EOnly,
    /// Only `G'(2^m)` contains `-I`: `c' = 1`, and `c` vanishes from here on.
    EpOnly,
    /// Neither does: both vanish from here on.
    Neither,
}

impl OneSided {
    pub fn coefficients(&self) -> (Rational, Rational) {
        match self {
            OneSided::EOnly => (Rational::one(), Rational::zero()),
            OneSided::EpOnly => (Rational::zero(), Rational::one()),
            OneSided::Neither => (Rational::zero(), Rational::zero()),
        }
    }
}

pub fn c_one_sided(minus_i_e: bool, minus_i_ep: bool) -> Result<OneSided> {
    match (minus_i_e, minus_i_ep) {
        (true, false) => Ok(OneSided::EOnly),
        (false, true) => Ok(OneSided::EpOnly),
        (false, false) => Ok(OneSided::Neither),
        (true, true) => Err(usage!("both images contain -I; use c_from_degrees")),
    }
}

/// Contribution of the levels `m ≥ 5`: `8/15 (1/|G(32)| + 1/|G'(32)|)` when
/// `-I` is in the image, else 0.
pub fn tail(pe: &GaloisImageProfile, pep: &GaloisImageProfile) -> Result<Rational> {
    if pe.cm || pep.cm {
        return Err(usage!("CM profiles are handled by cm_predict"));
    }
    if pe.minus_i != pep.minus_i {
        return Err(validation!("-I lies in both images or in neither for isogenous curves"));
    }
    if !pe.minus_i {
        return Ok(Rational::zero());
    }
    let s = |p: &GaloisImageProfile| Rational::new(1.into(), p.sizes[3].into());
    Ok(rat(8, 15) * (s(pe) + s(pep)))
}

fn ratio(c: &Rational, size: u128) -> Rational {
    c / Rational::from_integer(size.into())
}

/// Head, tail and per-defect densities for a non-CM pair.
pub fn predict(
    pe: &GaloisImageProfile,
    pep: &GaloisImageProfile,
    coeffs: &CoefficientVector,
) -> Result<ProportionBreakdown> {
    pe.validate()?;
    pep.validate()?;
    coeffs.validate()?;
    for m in 2..=5 {
        let (s, sp) = (pe.size(m), pep.size(m));
        if s != sp && s != 2 * sp && sp != 2 * s {
            return Err(validation!("|G(2^{m})| / |G'(2^{m})| must be 1/2, 1 or 2"));
        }
    }
    if pe.minus_i && coeffs.c.iter().chain(&coeffs.cp).any(|c| c.is_one()) {
        return Err(validation!("a coefficient equal to 1 needs -I outside one image"));
    }
    let tail = tail(pe, pep)?;
    let mut head = Rational::zero();
    let mut per_defect = Vec::new();
    for m in 2..=7u32 {
        let (c, cp) = if m <= 4 {
            (coeffs.c[m as usize - 2].clone(), coeffs.cp[m as usize - 2].clone())
        } else if pe.minus_i {
            (rat(1, 2), rat(1, 2))
        } else {
            (Rational::zero(), Rational::zero())
        };
        let d = ratio(&c, pe.size(m));
        let dp = ratio(&cp, pep.size(m));
        if m <= 4 {
            head += &d + &dp;
        }
        per_defect.push(DefectDensity { defect: (m + 1, m), density: d });
        per_defect.push(DefectDensity { defect: (m, m + 1), density: dp });
    }
    let total = &head + &tail;
    Ok(ProportionBreakdown { head, tail, total, per_defect })
}

/// `P(E, E') ≤ 1/4`.
pub fn bound_check(b: &ProportionBreakdown) -> bool {
    b.total <= rat(1, 4)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> Rational {
        rat(1, 2)
    }

    pub(crate) fn profile(sizes: [u64; 4]) -> GaloisImageProfile {
        GaloisImageProfile::new(sizes, true, false).unwrap()
    }

    #[test]
    fn tail_examples() {
        let g = profile([16, 64, 256, 4096]);
        assert_eq!(tail(&g, &g).unwrap(), rat(1, 3840));
        let g = profile([16, 128, 1024, 16384]);
        assert_eq!(tail(&g, &g).unwrap(), rat(1, 15360));
        let mut g = profile([16, 64, 256, 4096]);
        g.minus_i = false;
        assert_eq!(tail(&g, &g).unwrap(), Rational::zero());
    }

    #[test]
    fn predictions() {
        let z = Rational::zero();
        let c = CoefficientVector::new([z.clone(), z.clone(), half()], [z.clone(), z.clone(), half()]).unwrap();
        let g = profile([16, 64, 256, 4096]);
        let b = predict(&g, &g, &c).unwrap();
        assert_eq!((b.head.clone(), b.total.clone()), (rat(1, 256), rat(1, 240)));
        let g = profile([16, 128, 1024, 16384]);
        assert_eq!(predict(&g, &g, &c).unwrap().total, rat(1, 960));
        let m = GaloisImageProfile::maximal();
        assert_eq!(predict(&m, &m, &CoefficientVector::uniform(half())).unwrap().total, rat(1, 30));
    }

    #[test]
    fn per_defect_sums_to_total() {
        let m = GaloisImageProfile::maximal();
        let b = predict(&m, &m, &CoefficientVector::uniform(half())).unwrap();
        let listed: Rational = b.per_defect.iter().map(|d| d.density.clone()).sum();
        // levels 8 and up are left out of the list
        let rest = rat(8, 15) * rat(2, 131072) * rat(1, 16 * 16 * 16);
        assert_eq!(listed + rest, b.total);
    }

    #[test]
    fn degree_table() {
        let d = |a, b, c, e, k_in_kp, kp_in_k| FieldDegreeData {
            kk_over_k: a,
            ll_over_l: b,
            kk_over_kp: c,
            ll_over_lp: e,
            k_in_kp,
            kp_in_k,
        };
        assert_eq!(c_from_degrees(&d(1, 1, 2, 2, false, true)).unwrap(), (Rational::zero(), half()));
        assert_eq!(c_from_degrees(&d(2, 2, 2, 2, false, false)).unwrap(), (half(), half()));
        assert_eq!(c_from_degrees(&d(1, 1, 1, 1, true, true)).unwrap(), (Rational::zero(), Rational::zero()));
        assert!(c_from_degrees(&d(4, 4, 4, 4, false, false)).is_err());
        assert!(c_from_degrees(&d(2, 1, 2, 2, false, false)).is_err());
        assert!(c_from_degrees(&d(1, 1, 2, 2, true, true)).is_err());
    }

    #[test]
    fn one_sided() {
        assert_eq!(c_one_sided(true, false).unwrap().coefficients(), (Rational::one(), Rational::zero()));
        assert_eq!(c_one_sided(false, true).unwrap().coefficients(), (Rational::zero(), Rational::one()));
        assert_eq!(c_one_sided(false, false).unwrap(), OneSided::Neither);
        assert!(c_one_sided(true, true).is_err());
    }

    #[test]
    fn bounds() {
        let mk = |t: Rational| ProportionBreakdown { head: t.clone(), tail: Rational::zero(), total: t, per_defect: Vec::new() };
        assert!(bound_check(&mk(rat(1, 240))));
        assert!(bound_check(&mk(rat(1, 4))));
        assert!(bound_check(&mk(rat(23, 120))));
        assert!(!bound_check(&mk(rat(26, 100))));
    }

    #[test]
    fn profile_validation() {
        assert!(GaloisImageProfile::new([8, 16, 256, 4096], true, false).is_ok());
        assert!(GaloisImageProfile::new([64, 512, 8192, 131072], true, false).is_err());
        assert!(GaloisImageProfile::new([8, 16, 512, 4096], true, false).is_err());
        assert!(GaloisImageProfile::new([8, 32, 128, 512], true, true).is_ok());
        assert!(GaloisImageProfile::new([8, 32, 256, 512], true, true).is_err());
    }
}
