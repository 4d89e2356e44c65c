//! Newform descriptions read from JSON.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arith::is_prime;
use crate::error::{MtError, Result};

fn trivial() -> String {
    "trivial".into()
}

fn rational_poly() -> Vec<i64> {
    vec![0, 1]
}

/// A newform given by Hecke eigenvalues. `an` maps a prime `l` to the
/// coordinates of `a_l` in the power basis of `Q[x]/(field_poly)`; a bare
/// number is accepted for rational eigenvalues.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormSpec {
    pub label: String,
    pub level: u64,
    pub weight: u32,
    #[serde(default = "trivial")]
    pub character: String,
    /// Integer coefficients, constant term first; `[0, 1]` is `Q`.
    #[serde(default = "rational_poly")]
    pub field_poly: Vec<i64>,
    pub an: BTreeMap<String, Value>,
    pub p: u64,
    #[serde(default)]
    pub prime_index: usize,
}

fn parse_rational(v: &Value) -> Result<BigRational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|x| BigRational::from_integer(x.into()))
            .ok_or_else(|| MtError::SchemaError(format!("eigenvalue {n} is not an integer; quote fractions"))),
        Value::String(s) => s.trim().parse::<BigRational>().map_err(|e| MtError::SchemaError(format!("{s:?}: {e}"))),
        other => Err(MtError::SchemaError(format!("unexpected eigenvalue entry {other}"))),
    }
}

impl FormSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: FormSpec = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn degree(&self) -> usize {
        self.field_poly.len().saturating_sub(1)
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn is_trivial_character(&self) -> bool {
        self.character.eq_ignore_ascii_case("trivial")
    }

    pub fn field_poly_big(&self) -> Vec<BigInt> {
        self.field_poly.iter().map(|&c| BigInt::from(c)).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.level == 0 || self.weight < 2 {
            return Err(MtError::SchemaError(format!("need level >= 1 and weight >= 2, got {} and {}", self.level, self.weight)));
        }
        if self.degree() == 0 || self.field_poly.last() != Some(&1) {
            return Err(MtError::SchemaError(format!("field_poly {:?} must be monic of degree >= 1", self.field_poly)));
        }
        if !is_prime(self.p) {
            return Err(MtError::SchemaError(format!("p = {} is not prime", self.p)));
        }
        if self.level.gcd(&self.p) != 1 {
            return Err(MtError::LevelDivisibleByP { level: self.level, p: self.p });
        }
        for k in self.an.keys() {
            let l: u64 = k.parse().map_err(|_| MtError::SchemaError(format!("an key {k:?} is not an integer")))?;
            if !is_prime(l) {
                return Err(MtError::SchemaError(format!("an key {l} is not prime")));
            }
        }
        if self.an.is_empty() {
            return Err(MtError::MissingEigenvalues("no eigenvalues given".into()));
        }
        if !self.an.contains_key(&self.p.to_string()) {
            return Err(MtError::MissingEigenvalues(format!("a_{} is required", self.p)));
        }
        self.eigenvalue_coords().map(|_| ())
    }

    /// `(l, coordinates of a_l)` sorted by `l`.
    pub fn eigenvalue_coords(&self) -> Result<Vec<(u64, Vec<BigRational>)>> {
        let d = self.degree();
        let mut out: Vec<(u64, Vec<BigRational>)> = self
            .an
            .iter()
            .map(|(k, v)| {
                let l: u64 = k.parse().map_err(|_| MtError::SchemaError(format!("bad prime {k:?}")))?;
                let coords = match v {
                    Value::Array(a) => a.iter().map(parse_rational).collect::<Result<Vec<_>>>()?,
                    other => vec![parse_rational(other)?],
                };
                if coords.len() > d {
                    return Err(MtError::SchemaError(format!("a_{l} has {} coordinates, field degree is {d}", coords.len())));
                }
                Ok((l, coords))
            })
            .collect::<Result<_>>()?;
        out.sort_by_key(|x| x.0);
        Ok(out)
    }

    /// Rational eigenvalues; fails for coordinates beyond the constant term.
    pub fn rational_eigenvalues(&self) -> Result<Vec<(u64, BigRational)>> {
        self.eigenvalue_coords()?
            .into_iter()
            .map(|(l, c)| {
                if c.iter().skip(1).any(|x| !x.is_zero()) {
                    return Err(MtError::SchemaError(format!("a_{l} is not rational")));
                }
                Ok((l, c.into_iter().next().unwrap_or_else(BigRational::zero)))
            })
            .collect()
    }

    /// `a_p`, when it is rational.
    pub fn a_p(&self) -> Option<BigRational> {
        let c = self.eigenvalue_coords().ok()?.into_iter().find(|x| x.0 == self.p)?.1;
        if c.iter().skip(1).all(|x| x.is_zero()) {
            Some(c.into_iter().next().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    pub fn a_p_is_zero(&self) -> bool {
        self.eigenvalue_coords()
            .ok()
            .and_then(|v| v.into_iter().find(|x| x.0 == self.p))
            .is_some_and(|(_, c)| c.iter().all(|x| x.is_zero()))
    }
}

/// Read and validate a form description.
pub fn ingest_form(path: &Path) -> Result<FormSpec> {
    let text = std::fs::read_to_string(path)?;
    FormSpec::from_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    const BASE: &str = r#"{"label":"26.6.a.a","level":26,"weight":6,"an":{"2":-4,"3":0,"5":-14,"7":"-170"},"p":3}"#;

    #[test]
    fn parses_rational_fixture() {
        let s = FormSpec::from_json(BASE).unwrap();
        assert!(s.is_rational() && s.is_trivial_character() && s.a_p_is_zero());
        assert_eq!(s.rational_eigenvalues().unwrap()[3], (7, rat(-170)));
    }

    #[test]
    fn rejects_bad_input() {
        let bad_p = BASE.replace("\"p\":3", "\"p\":2");
        assert_eq!(FormSpec::from_json(&bad_p), Err(MtError::LevelDivisibleByP { level: 26, p: 2 }));
        let no_ap = BASE.replace("\"3\":0,", "");
        assert!(matches!(FormSpec::from_json(&no_ap), Err(MtError::MissingEigenvalues(_))));
        assert!(matches!(FormSpec::from_json("{\"label\": 3}"), Err(MtError::SchemaError(_))));
        let not_monic = BASE.replace("\"p\":3", "\"p\":3,\"field_poly\":[1,2]");
        assert!(matches!(FormSpec::from_json(&not_monic), Err(MtError::SchemaError(_))));
    }
}
