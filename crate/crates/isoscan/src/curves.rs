//! Curve lookup: explicit coefficients, built-in fixtures, the on-disk
//! cache and the LMFDB API.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use isoscan_core::elliptic::RationalCurve;
use isoscan_core::numtheory::Rational;
use serde_json::Value;

use crate::error::{CliError, Result};

/// Every curve named in the examples, as long Weierstrass coefficients
/// `[a1, a2, a3, a4, a6]` keyed by LMFDB label.
pub const FIXTURES: &str = include_str!("../fixtures/curves.json");

pub const FIXTURE_PATH: &str = "crates/isoscan/fixtures/curves.json";

const LMFDB_API: &str = "https://www.lmfdb.org/api/ec_curvedata/";

/// A curve as given on the command line.
#[derive(Clone, PartialEq, Debug)]
pub enum CurveSpec {
    /// A curve label such as `400.g1`.
    Label(String),
    /// `[a1, a2, a3, a4, a6]`; two entries are read as `[a4, a6]`.
    Coefficients([Rational; 5]),
}

impl FromStr for CurveSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<CurveSpec> {
        let s = s.trim();
        if s.contains(',') {
            let inner = s.trim_start_matches('[').trim_end_matches(']');
            let xs = inner
                .split(',')
                .map(|t| t.trim().parse::<Rational>().map_err(|_| CliError::validation(format!("bad coefficient {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            let zero = || Rational::from_integer(0.into());
            let ainvs = match xs.len() {
                5 => <[Rational; 5]>::try_from(xs).unwrap(),
                2 => [zero(), zero(), zero(), xs[0].clone(), xs[1].clone()],
                n => return Err(CliError::validation(format!("expected 5 (or 2) coefficients, got {n}"))),
            };
            return Ok(CurveSpec::Coefficients(ainvs));
        }
        match split_label(s) {
            Some((_, Some(_))) => Ok(CurveSpec::Label(s.to_string())),
            Some((_, None)) => Err(CliError::validation(format!("{s} is an isogeny class; give a curve label like {s}1"))),
            None => Err(CliError::validation(format!("{s:?} is neither a curve label nor a coefficient list"))),
        }
    }
}

/// `"400.g1"` → `("400.g", Some(1))`, `"49.a"` → `("49.a", None)`.
pub fn split_label(s: &str) -> Option<(&str, Option<u32>)> {
    let (cond, rest) = s.split_once('.')?;
    if cond.is_empty() || !cond.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let letters = rest.bytes().take_while(|b| b.is_ascii_lowercase()).count();
    if letters == 0 {
        return None;
    }
    let digits = &rest[letters..];
    let class = &s[..cond.len() + 1 + letters];
    if digits.is_empty() {
        return Some((class, None));
    }
    digits.parse().ok().filter(|&n| n > 0 && !digits.starts_with('0')).map(|n| (class, Some(n)))
}

fn parse_int(v: &Value) -> Option<Rational> {
    let s = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return None,
    };
    s.parse::<Rational>().ok()
}

fn parse_ainvs(v: &Value) -> Result<[Rational; 5]> {
    let xs = v
        .as_array()
        .ok_or_else(|| CliError::validation("ainvs must be an array"))?
        .iter()
        .map(|x| parse_int(x).ok_or_else(|| CliError::validation(format!("bad coefficient {x}"))))
        .collect::<Result<Vec<_>>>()?;
    <[Rational; 5]>::try_from(xs).map_err(|xs| CliError::validation(format!("expected 5 coefficients, got {}", xs.len())))
}

/// A `{label: ainvs}` table, as in the fixtures and cache files.
pub fn parse_table(text: &str) -> Result<BTreeMap<String, [Rational; 5]>> {
    let v: Value = serde_json::from_str(text)?;
    let obj = v.as_object().ok_or_else(|| CliError::validation("expected a JSON object of curves"))?;
    obj.iter().map(|(k, v)| Ok((k.clone(), parse_ainvs(v)?))).collect()
}

/// Curves out of an `ec_curvedata` API response.
pub fn parse_lmfdb_response(text: &str) -> Result<BTreeMap<String, [Rational; 5]>> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::Network(format!("unreadable LMFDB response: {e}")))?;
    let data = v
        .get("data")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::Network("LMFDB response has no data array".into()))?;
    data.iter()
        .map(|row| {
            let label = row
                .get("lmfdb_label")
                .and_then(Value::as_str)
                .ok_or_else(|| CliError::Network("LMFDB row without lmfdb_label".into()))?;
            let ainvs = row.get("ainvs").ok_or_else(|| CliError::Network(format!("{label}: no ainvs")))?;
            Ok((label.to_string(), parse_ainvs(ainvs)?))
        })
        .collect()
}

fn table_to_json(t: &BTreeMap<String, [Rational; 5]>) -> String {
    let obj: serde_json::Map<String, Value> = t
        .iter()
        .map(|(k, a)| {
            let xs = a.iter().map(|x| Value::String(x.to_string())).collect();
            (k.clone(), Value::Array(xs))
        })
        .collect();
    serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable")
}

fn label_order(label: &str) -> (String, u32) {
    match split_label(label) {
        Some((c, n)) => (c.to_string(), n.unwrap_or(0)),
        None => (label.to_string(), 0),
    }
}

/// Where curves are looked up, in order: fixtures, cache, network.
#[derive(Clone, Debug)]
pub struct Source {
    pub cache_dir: PathBuf,
    pub allow_network: bool,
}

impl Source {
    /// Cache in `$ISOSCAN_CACHE`, else `$XDG_CACHE_HOME/isoscan`, else
    /// `~/.cache/isoscan`.
    pub fn from_env(allow_network: bool) -> Source {
        let cache_dir = std::env::var_os("ISOSCAN_CACHE")
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("XDG_CACHE_HOME").map(|d| Path::new(&d).join("isoscan")))
            .or_else(|| std::env::var_os("HOME").map(|h| Path::new(&h).join(".cache/isoscan")))
            .unwrap_or_else(|| PathBuf::from(".isoscan-cache"));
        Source { cache_dir, allow_network }
    }

    pub fn offline(cache_dir: impl Into<PathBuf>) -> Source {
        Source { cache_dir: cache_dir.into(), allow_network: false }
    }

    fn cache_file(&self, key: &str) -> PathBuf {
        self.cache_dir.join(format!("{key}.json"))
    }

    fn cached(&self, key: &str) -> Result<Option<BTreeMap<String, [Rational; 5]>>> {
        let path = self.cache_file(key);
        match fs::read_to_string(&path) {
            Ok(text) => Ok(Some(parse_table(&text)?)),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    /// All curves in a class (`"49.a"`) or one curve (`"49.a1"`), sorted by label.
    pub fn lookup(&self, key: &str) -> Result<Vec<(String, [Rational; 5])>> {
        let (class, number) = split_label(key).ok_or_else(|| CliError::validation(format!("{key:?} is not an LMFDB label")))?;
        let wanted = |l: &str| match number {
            Some(_) => l == key,
            None => split_label(l).is_some_and(|(c, n)| c == class && n.is_some()),
        };
        let mut found: Vec<(String, [Rational; 5])> =
            parse_table(FIXTURES)?.into_iter().filter(|(l, _)| wanted(l)).collect();
        if found.is_empty() {
            let table = match self.cached(key)? {
                Some(t) => t,
                None if self.allow_network => self.fetch(key)?,
                None => {
                    return Err(CliError::validation(format!(
                        "{key} is not in the fixtures ({FIXTURE_PATH}) or the cache ({}); rerun with --allow-network to fetch it",
                        self.cache_dir.display()
                    )))
                }
            };
            found = table.into_iter().filter(|(l, _)| wanted(l)).collect();
        }
        if found.is_empty() {
            return Err(CliError::validation(format!("no curve found for {key}")));
        }
        found.sort_by_key(|(l, _)| label_order(l));
        Ok(found)
    }

    /// Download a curve or class from the LMFDB and store it in the cache.
    pub fn fetch(&self, key: &str) -> Result<BTreeMap<String, [Rational; 5]>> {
        if !self.allow_network {
            return Err(CliError::Network("network access is disabled; pass --allow-network".into()));
        }
        let (_, number) = split_label(key).ok_or_else(|| CliError::validation(format!("{key:?} is not an LMFDB label")))?;
        let field = if number.is_some() { "lmfdb_label" } else { "lmfdb_iso" };
        let body = ureq::get(LMFDB_API)
            .query(field, key)
            .query("_format", "json")
            .query("_fields", "lmfdb_label,ainvs")
            .call()
            .and_then(|mut r| r.body_mut().read_to_string())
            .map_err(|e| CliError::Network(format!("{key}: {e}")))?;
        let table = parse_lmfdb_response(&body)?;
        if table.is_empty() {
            return Err(CliError::validation(format!("the LMFDB has no curve {key}")));
        }
        fs::create_dir_all(&self.cache_dir)?;
        fs::write(self.cache_file(key), table_to_json(&table))?;
        Ok(table)
    }

    pub fn resolve(&self, spec: &CurveSpec) -> Result<RationalCurve> {
        match spec {
            CurveSpec::Coefficients(a) => Ok(RationalCurve::from_long_weierstrass(a)?),
            CurveSpec::Label(l) => {
                let (label, a) = self.lookup(l)?.remove(0);
                Ok(RationalCurve::from_long_weierstrass(&a)?.with_label(label))
            }
        }
    }

    /// The curves of an isogeny class, labelled.
    pub fn class(&self, class: &str) -> Result<Vec<RationalCurve>> {
        self.lookup(class)?
            .into_iter()
            .map(|(l, a)| Ok(RationalCurve::from_long_weierstrass(&a)?.with_label(l)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use isoscan_core::numtheory::int;

    #[test]
    fn labels() {
        assert_eq!(split_label("400.g1"), Some(("400.g", Some(1))));
        assert_eq!(split_label("277440.dv12"), Some(("277440.dv", Some(12))));
        assert_eq!(split_label("49.a"), Some(("49.a", None)));
        assert_eq!(split_label("49a1"), None);
        assert_eq!(split_label("49.a01"), None);
        assert_eq!(split_label(".a1"), None);
    }

    #[test]
    fn explicit_coefficients() {
        let CurveSpec::Coefficients(a) = "[0,0,0,0,1]".parse().unwrap() else { panic!() };
        let e = RationalCurve::from_long_weierstrass(&a).unwrap();
        assert_eq!((e.a.clone(), e.b.clone()), (int(0), int(1)));
        let CurveSpec::Coefficients(a) = "0, 0, 0, -15, 22".parse().unwrap() else { panic!() };
        let e = RationalCurve::from_long_weierstrass(&a).unwrap();
        assert_eq!((e.a.clone(), e.b.clone()), (int(-15), int(22)));
        assert!("1,2,3".parse::<CurveSpec>().is_err());
        assert!("49.a".parse::<CurveSpec>().is_err());
    }

    #[test]
    fn fixture_lookup_and_offline_miss() {
        let dir = tempfile::tempdir().unwrap();
        let src = Source::offline(dir.path());
        let class = src.class("49.a").unwrap();
        let names: Vec<String> = class.iter().map(|c| c.name()).collect();
        assert_eq!(names, ["49.a1", "49.a2", "49.a3", "49.a4"]);
        let err = src.lookup("11.a1").unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("--allow-network"));
        assert_eq!(src.fetch("11.a1").unwrap_err().exit_code(), 3);
    }

    #[test]
    fn cache_is_consulted() {
        let dir = tempfile::tempdir().unwrap();
        let body = r#"{"data": [{"lmfdb_label": "11.a2", "ainvs": [0, -1, 1, -10, -20]}]}"#;
        let table = parse_lmfdb_response(body).unwrap();
        fs::write(dir.path().join("11.a2.json"), table_to_json(&table)).unwrap();
        let e = Source::offline(dir.path()).resolve(&"11.a2".parse().unwrap()).unwrap();
        assert_eq!(e.label.as_deref(), Some("11.a2"));
        assert_eq!(e.discriminant(), int(-161051));
    }
}
