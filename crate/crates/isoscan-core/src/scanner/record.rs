use alloc::string::String;
use core::fmt;

use crate::elliptic::SylowShape;

/// Full-torsion levels over `F_{p²}` of `E` and `E'` at an anomalous prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(from = "[u32; 2]", into = "[u32; 2]"))]
pub struct DefectLabel {
    pub d_e: u32,
    pub d_ep: u32,
}

impl From<[u32; 2]> for DefectLabel {
    fn from([d_e, d_ep]: [u32; 2]) -> Self {
        DefectLabel { d_e, d_ep }
    }
}

impl From<DefectLabel> for [u32; 2] {
    fn from(d: DefectLabel) -> Self {
        [d.d_e, d.d_ep]
    }
}

impl fmt::Display for DefectLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.d_e, self.d_ep)
    }
}

/// Which curve of the pair an estimate refers to.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Side {
    E,
    Ep,
}

/// Everything computed at one prime. Fields the cascade did not reach are
/// `None`.
#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PrimeRecord {
    pub p: u64,
    pub good: bool,
    pub skip: Option<String>,
    pub ap: Option<i64>,
    pub v2np: Option<u32>,
    #[cfg_attr(feature = "serde", serde(rename = "shpE"))]
    pub shp_e: Option<SylowShape>,
    #[cfg_attr(feature = "serde", serde(rename = "shpEp"))]
    pub shp_ep: Option<SylowShape>,
    pub v2np2: Option<u32>,
    #[cfg_attr(feature = "serde", serde(rename = "lvlE"))]
    pub lvl_e: Option<u32>,
    #[cfg_attr(feature = "serde", serde(rename = "lvlEp"))]
    pub lvl_ep: Option<u32>,
    /// `A_m(E)` for `m = 2, 3, 4, 5`.
    pub am_e: Option<[bool; 4]>,
    pub am_ep: Option<[bool; 4]>,
    pub defect: Option<DefectLabel>,
}

impl PrimeRecord {
    pub fn bad(p: u64) -> PrimeRecord {
        PrimeRecord {
            p,
            good: false,
            skip: Some(String::from("bad reduction")),
            ap: None,
            v2np: None,
            shp_e: None,
            shp_ep: None,
            v2np2: None,
            lvl_e: None,
            lvl_ep: None,
            am_e: None,
            am_ep: None,
            defect: None,
        }
    }

    pub fn is_anomalous(&self) -> bool {
        self.defect.is_some()
    }

    /// `A_m` on the given side; false when not computed.
    pub fn am(&self, side: Side, m: u32) -> bool {
        let flags = match side {
            Side::E => self.am_e,
            Side::Ep => self.am_ep,
        };
        (2..=5).contains(&m) && flags.is_some_and(|f| f[m as usize - 2])
    }
}
