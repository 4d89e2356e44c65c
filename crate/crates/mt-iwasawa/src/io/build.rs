//! Eigen-symbols of a [`FormSpec`], over `Q` or over its coefficient field.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::spec::FormSpec;
use crate::arith::{rat, NfElem, NumberField, PrimeEmbedding};
use crate::error::{MtError, Result};
use crate::mazur_tate::FormSymbols;
use crate::modsym::{EigenSymbol, SymbolSpace};

/// Rational symbols scaled to primitive integral values; `scale_*` is the
/// factor applied to the raw eigen-functional.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalForm {
    pub symbols: FormSymbols<BigRational>,
    pub scale_plus: BigRational,
    pub scale_minus: BigRational,
}

/// Symbols over a number field with the embedding at the chosen prime above `p`.
#[derive(Clone, Debug)]
pub struct NumberFieldForm {
    pub symbols: FormSymbols<NfElem>,
    pub embedding: PrimeEmbedding,
    /// Both symbols were divided by `p^shift` to reach valuation 0 at the prime.
    pub shift_plus: i64,
    pub shift_minus: i64,
}

fn lifts(space: &SymbolSpace) -> Vec<[i64; 4]> {
    (0..space.p1().len()).map(|t| space.p1().lift(t)).collect()
}

fn check_character(spec: &FormSpec) -> Result<()> {
    if !spec.is_trivial_character() {
        return Err(MtError::UnsupportedCharacter(format!("character {:?}; only trivial characters are supported", spec.character)));
    }
    Ok(())
}

pub fn build_rational(spec: &FormSpec) -> Result<RationalForm> {
    check_character(spec)?;
    let eig = spec.rational_eigenvalues()?;
    let space = SymbolSpace::new(spec.level, spec.weight)?;
    let lifts = lifts(&space);
    let id = |x: &BigRational| x.clone();
    let build = |sign| -> Result<(EigenSymbol<BigRational>, BigRational)> {
        let mut s = EigenSymbol::from_eigenvalues(&space, &eig, sign, &rat(0), &id)?;
        let scale = s.normalize(&lifts);
        Ok((s, scale))
    };
    let (plus, scale_plus) = build(1)?;
    let (minus, scale_minus) = build(-1)?;
    Ok(RationalForm {
        symbols: FormSymbols { label: spec.label.clone(), plus, minus },
        scale_plus,
        scale_minus,
    })
}

pub fn build_number_field(spec: &FormSpec, precision: u32) -> Result<NumberFieldForm> {
    check_character(spec)?;
    let field: Arc<NumberField> = NumberField::new(spec.field_poly_big())?;
    let embedding = PrimeEmbedding::new(&field, spec.p, precision, spec.prime_index)?;
    let eig: Vec<(u64, NfElem)> =
        spec.eigenvalue_coords()?.into_iter().map(|(l, c)| (l, NfElem::from_coords(&field, c))).collect();
    let space = SymbolSpace::new(spec.level, spec.weight)?;
    let lifts = lifts(&space);
    let zero = NfElem::from_rational(&field, rat(0));
    let lift = |x: &BigRational| NfElem::from_rational(&field, x.clone());
    let ordp = |x: &NfElem| embedding.ordp(x);
    let build = |sign| -> Result<(EigenSymbol<NfElem>, i64)> {
        let mut s = EigenSymbol::from_eigenvalues(&space, &eig, sign, &zero, &lift)?;
        let v = s.min_valuation(&lifts, &ordp).ok_or(MtError::ZeroSeries)?;
        let p = BigInt::from(spec.p);
        let factor = if v >= 0 {
            BigRational::new(1.into(), num_traits::pow(p, v as usize))
        } else {
            BigRational::from_integer(num_traits::pow(p, (-v) as usize))
        };
        s.scale(&NfElem::from_rational(&field, factor));
        Ok((s, v))
    };
    let (plus, shift_plus) = build(1)?;
    let (minus, shift_minus) = build(-1)?;
    Ok(NumberFieldForm {
        symbols: FormSymbols { label: spec.label.clone(), plus, minus },
        embedding,
        shift_plus,
        shift_minus,
    })
}
