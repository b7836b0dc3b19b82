//! Galois image profile files:
//! `{"sizes": {"4": …, "8": …, "16": …, "32": …}, "minusI": bool, "cm": bool}`,
//! optionally with `"c": ["0", "0", "1/2"]`, the coefficients `c_4, c_8, c_16`
//! of the curve the file describes.

use std::collections::BTreeMap;
use std::path::Path;

use isoscan_core::numtheory::Rational;
use isoscan_core::theory::GaloisImageProfile;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileFile {
    pub sizes: BTreeMap<String, u64>,
    #[serde(rename = "minusI")]
    pub minus_i: bool,
    pub cm: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<String>>,
}

#[derive(Clone, PartialEq, Debug)]
pub struct Profile {
    pub image: GaloisImageProfile,
    pub c: Option<[Rational; 3]>,
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim().parse::<Rational>().map_err(|_| CliError::validation(format!("{s:?} is not a rational number")))
}

/// `"0,0,1/2"` → `[0, 0, 1/2]`.
pub fn parse_coefficients(s: &str) -> Result<[Rational; 3]> {
    let xs = s.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
    <[Rational; 3]>::try_from(xs).map_err(|_| CliError::validation("give three coefficients, for m = 2, 3, 4"))
}

impl Profile {
    pub fn parse(text: &str) -> Result<Profile> {
        let f: ProfileFile = serde_json::from_str(text)?;
        let mut sizes = [0u64; 4];
        for (i, key) in ["4", "8", "16", "32"].iter().enumerate() {
            sizes[i] = *f.sizes.get(*key).ok_or_else(|| CliError::validation(format!("profile lacks sizes.{key}")))?;
        }
        if let Some(k) = f.sizes.keys().find(|k| !["4", "8", "16", "32"].contains(&k.as_str())) {
            return Err(CliError::validation(format!("unexpected level {k} in profile sizes")));
        }
        let image = GaloisImageProfile::new(sizes, f.minus_i, f.cm)?;
        let c = match &f.c {
            Some(v) => Some(parse_coefficients(&v.join(","))?),
            None => None,
        };
        Ok(Profile { image, c })
    }

    pub fn load(path: &Path) -> Result<Profile> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::validation(format!("cannot read profile {}: {e}", path.display())))?;
        Profile::parse(&text)
    }

    pub fn to_file(&self) -> ProfileFile {
        let sizes = ["4", "8", "16", "32"].iter().zip(self.image.sizes).map(|(k, v)| (k.to_string(), v)).collect();
        ProfileFile {
            sizes,
            minus_i: self.image.minus_i,
            cm: self.image.cm,
            c: self.c.as_ref().map(|c| c.iter().map(|x| x.to_string()).collect()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use isoscan_core::numtheory::rat;

    #[test]
    fn round_trip() {
        let text = include_str!("../fixtures/profiles/400.g1.json");
        let p = Profile::parse(text).unwrap();
        assert_eq!(p.image.sizes, [16, 64, 256, 4096]);
        assert_eq!(p.c.as_ref().unwrap()[2], rat(1, 2));
        let back = serde_json::to_string(&p.to_file()).unwrap();
        assert_eq!(Profile::parse(&back).unwrap(), p);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(Profile::parse(r#"{"sizes": {"4": 16}, "minusI": true, "cm": false}"#).is_err());
        assert!(Profile::parse(r#"{"sizes": {"4": 16, "8": 64, "16": 256, "32": 4096, "64": 1}, "minusI": true, "cm": false}"#).is_err());
        assert!(Profile::parse(r#"{"sizes": {"4": 16, "8": 64, "16": 256, "32": 4096}, "minusI": true, "cm": false, "c": ["x"]}"#).is_err());
        assert!(parse_coefficients("0,1/2").is_err());
    }
}
