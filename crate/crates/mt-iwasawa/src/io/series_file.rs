//! Series files: a JSON array whose entries are either exact coefficients
//! (`"num/den"` strings or integers, index = position) or valuation records
//! `{"i": index, "v": valuation}`. A valuation record stands for the
//! coefficient `p^v`; a `null` valuation stands for zero.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arith::{Poly, PrimeContext};
use crate::error::{MtError, Result};
use crate::iwasawa::{invariants, is_p_large, layer_invariants_via_theorem, project, InvariantPair};

pub fn parse_series(text: &str, p: u64) -> Result<Poly<BigRational>> {
    let v: Value = serde_json::from_str(text).map_err(|e| MtError::SchemaError(e.to_string()))?;
    let Value::Array(items) = v else {
        return Err(MtError::SchemaError("series file must be a JSON array".into()));
    };
    let mut cs: Vec<BigRational> = Vec::new();
    let mut set = |i: usize, c: BigRational| {
        if cs.len() <= i {
            cs.resize(i + 1, BigRational::from_integer(0.into()));
        }
        cs[i] = c;
    };
    for (pos, item) in items.iter().enumerate() {
        match item {
            Value::String(s) => set(pos, parse_rat(s)?),
            Value::Number(n) => set(pos, parse_rat(&n.to_string())?),
            Value::Object(o) => {
                let i = o
                    .get("i")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| MtError::SchemaError(format!("entry {pos}: missing index \"i\"")))?;
                let c = match o.get("v") {
                    Some(Value::Null) | None => BigRational::from_integer(0.into()),
                    Some(v) => {
                        let v = v
                            .as_i64()
                            .ok_or_else(|| MtError::SchemaError(format!("entry {pos}: valuation must be an integer")))?;
                        let pv = num_traits::pow(BigInt::from(p), v.unsigned_abs() as usize);
                        if v >= 0 {
                            BigRational::from_integer(pv)
                        } else {
                            BigRational::new(1.into(), pv)
                        }
                    }
                };
                set(i as usize, c);
            }
            other => return Err(MtError::SchemaError(format!("entry {pos}: unexpected {other}"))),
        }
    }
    Ok(Poly::new(cs))
}

fn parse_rat(s: &str) -> Result<BigRational> {
    s.trim().parse::<BigRational>().map_err(|e| MtError::SchemaError(format!("coefficient {s:?}: {e}")))
}

/// What the layer results say about one series at one layer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub p: u64,
    pub n: u32,
    pub invariants: InvariantPair,
    pub layer: InvariantPair,
    pub p_large: bool,
    /// Layer invariants from the transfer formula, when it applies.
    pub via_formula: Option<InvariantPair>,
}

pub fn series_report(f: &Poly<BigRational>, ctx: &PrimeContext, n: u32) -> Result<SeriesReport> {
    let inv = invariants(f, ctx.p)?;
    let layer = project(f, ctx, n).invariants(ctx.p)?;
    let p_large = is_p_large(f, ctx, n)?;
    let via_formula = if p_large { Some(layer_invariants_via_theorem(f, ctx, n)?) } else { None };
    Ok(SeriesReport { p: ctx.p, n, invariants: inv, layer, p_large, via_formula })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_entry_kinds() {
        let f = parse_series(r#"["3", "1/2", {"i": 4, "v": 2}, {"i": 5, "v": null}]"#, 3).unwrap();
        assert_eq!(f.degree(), Some(4));
        assert_eq!(f.coeff(4).unwrap(), &BigRational::from_integer(9.into()));
        assert!(parse_series("{}", 3).is_err());
        assert!(parse_series(r#"["x"]"#, 3).is_err());
    }

    #[test]
    fn counterexample_report() {
        let ctx = PrimeContext::new(3).unwrap();
        let f = parse_series("[0, 3, 0, 1]", 3).unwrap();
        let r = series_report(&f, &ctx, 1).unwrap();
        assert!(!r.p_large);
        assert_eq!(r.invariants, InvariantPair { lambda: 3, mu: 0 });
    }
}
