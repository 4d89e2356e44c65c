//! Mazur-Tate elements `theta_{n,j}^psi` assembled from eigen-symbol brackets, with
//! the three-term relation, the interpolation-zero divisibility and the
//! character-valuation identity as exact checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::context::eps;
use crate::arith::{
    resultant_valuation, teichmuller, Coeff, DlogTable, Field, Poly, PrimeContext, ResCtx, ZpRes,
};
use crate::cyclotomic::phi_shifted;
use crate::error::{MtError, Result};
use crate::iwasawa::{invariants, InvariantPair};
use crate::modsym::EigenSymbol;

/// Both signed eigen-symbols of one newform.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormSymbols<F> {
    pub label: String,
    pub plus: EigenSymbol<F>,
    pub minus: EigenSymbol<F>,
}

impl<F> FormSymbols<F> {
    pub fn for_sign(&self, s: i32) -> &EigenSymbol<F> {
        if s > 0 {
            &self.plus
        } else {
            &self.minus
        }
    }

    pub fn weight(&self) -> u32 {
        self.plus.weight
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaMeta {
    pub form: String,
    pub p: u64,
    pub n: u32,
    pub j: u32,
    /// `psi = omega^psi_exponent`.
    pub psi_exponent: u32,
    pub gamma: u64,
    pub sign: i32,
}

/// `theta_{n,j}^psi` both as its group-ring exponent vector (indexed by
/// `log_gamma(a) mod p^n`) and as a polynomial in `T` of degree `< p^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct MazurTateElement<F: Coeff> {
    pub meta: ThetaMeta,
    pub exponents: Vec<F>,
    pub poly: Poly<F>,
}

impl<F: Coeff> MazurTateElement<F> {
    pub fn invariants(&self) -> Result<InvariantPair> {
        invariants(&self.poly, self.meta.p)
    }

    /// Sum of the coefficients of the exponent vector, i.e. `theta(T = 0)`.
    pub fn augmentation(&self) -> F {
        let z = self.exponents[0].zero_like();
        self.exponents.iter().fold(z, |a, b| a.add(b))
    }
}

/// The sign of the symbol entering `theta_{n,j}^{omega^i}`: `(-1)^(i + k - j)`.
pub fn required_sign(k: u32, j: u32, psi_exponent: u32) -> i32 {
    eps(psi_exponent + k + j)
}

/// `sum_x e_x (1+T)^x`.
pub fn exponents_to_poly<F: Coeff>(e: &[F]) -> Poly<F> {
    if e.is_empty() {
        return Poly::zero();
    }
    Poly::new(e.to_vec()).shift_one()
}

/// Exponent vector of `sum_{a in (Z/p^N)^x} w(a) [a/p^N]_j (1+T)^(log a mod p^n)`.
fn exponent_vector<F: Field>(
    sym: &EigenSymbol<F>,
    ctx: &PrimeContext,
    n: u32,
    j: u32,
    weight: &impl Fn(u64) -> F,
) -> Vec<F> {
    let table = DlogTable::new(ctx, n);
    let q = table.q;
    let zero = sym.table[0][0].zero_like();
    let mut e = vec![zero; ctx.pn(n) as usize];
    for a in 1..q {
        if a % ctx.p == 0 {
            continue;
        }
        let b = sym.brackets(a as i64, q as i64)[j as usize].clone();
        let x = table.log(a) as usize;
        e[x] = e[x].add(&weight(a).mul(&b));
    }
    e
}

fn check_args<F>(sym: &EigenSymbol<F>, j: u32, psi: u32) -> Result<()> {
    if j + 2 > sym.weight {
        return Err(MtError::InvalidContext(format!("j = {j} exceeds k - 2 = {}", sym.weight - 2)));
    }
    let s = required_sign(sym.weight, j, psi);
    if sym.sign != s {
        return Err(MtError::InvalidContext(format!(
            "theta with j = {j}, psi = omega^{psi} needs the {} symbol",
            if s > 0 { "plus" } else { "minus" }
        )));
    }
    Ok(())
}

/// `psi(a) = omega(a)^i` as an exact integer; only possible when Teichmuller values are `+-1`.
fn exact_character(ctx: &PrimeContext, psi: u32) -> Result<impl Fn(u64) -> i64> {
    if !psi.is_multiple_of(ctx.delta_order() as u32) && ctx.p > 3 {
        return Err(MtError::PrecisionInsufficient(format!(
            "omega^{psi} is not rational for p = {}; use the residue path",
            ctx.p
        )));
    }
    let p = ctx.p;
    Ok(move |a: u64| {
        let w = if p == 2 {
            if a % 4 == 1 {
                1
            } else {
                -1
            }
        } else if a % p == 1 {
            1
        } else {
            -1
        };
        if psi.is_multiple_of(2) {
            1
        } else {
            w
        }
    })
}

/// `theta_{n,j}^psi(f)` with exact coefficients.
pub fn theta<F: Field>(
    sym: &EigenSymbol<F>,
    label: &str,
    ctx: &PrimeContext,
    n: u32,
    j: u32,
    psi: u32,
) -> Result<MazurTateElement<F>> {
    check_args(sym, j, psi)?;
    let chi = exact_character(ctx, psi)?;
    let unit = sym.table[0][0].one_like();
    let e = exponent_vector(sym, ctx, n, j, &|a| unit.from_int_like(&BigInt::from(chi(a))));
    let poly = exponents_to_poly(&e);
    Ok(MazurTateElement { meta: meta(label, ctx, n, j, psi, sym.sign), exponents: e, poly })
}

/// `theta_{n,j}^psi(f)` with coefficients in `Z/p^M`, for characters whose
/// Teichmuller values are not rational.
pub fn theta_residue(
    sym: &EigenSymbol<BigRational>,
    label: &str,
    ctx: &PrimeContext,
    n: u32,
    j: u32,
    psi: u32,
    m: u32,
) -> Result<MazurTateElement<ZpRes>> {
    check_args(sym, j, psi)?;
    let res = ResCtx::new(ctx.p, m)?;
    let table = DlogTable::new(ctx, n);
    let q = table.q;
    let mut e = vec![res.elem(0); ctx.pn(n) as usize];
    for a in 1..q {
        if a % ctx.p == 0 {
            continue;
        }
        let b = res.elem(res.reduce_rat(&sym.brackets(a as i64, q as i64)[j as usize])?);
        let w = res.elem(crate::arith::coeff::powmod(teichmuller(a as i64, ctx.p, m), psi as u64, res.q));
        let x = table.log(a) as usize;
        e[x] = e[x].add(&w.mul(&b));
    }
    let poly = exponents_to_poly(&e);
    Ok(MazurTateElement { meta: meta(label, ctx, n, j, psi, sym.sign), exponents: e, poly })
}

fn meta(label: &str, ctx: &PrimeContext, n: u32, j: u32, psi: u32, sign: i32) -> ThetaMeta {
    ThetaMeta { form: label.to_string(), p: ctx.p, n, j, psi_exponent: psi, gamma: ctx.gamma, sign }
}

/// `res`: reduce exponents from `Z/p^(n+1)` to `Z/p^n`.
pub fn restrict_exponents<F: Coeff>(e: &[F], pn: usize) -> Vec<F> {
    let mut out = vec![e[0].zero_like(); pn];
    for (x, v) in e.iter().enumerate() {
        out[x % pn] = out[x % pn].add(v);
    }
    out
}

/// `cor`: each exponent modulo `p^(n-1)` spreads to its `p` lifts modulo `p^n`.
pub fn corestrict_exponents<F: Coeff>(e: &[F], p: usize) -> Vec<F> {
    let lo = e.len();
    let mut out = vec![e[0].zero_like(); lo * p];
    for t in 0..p {
        for (x, v) in e.iter().enumerate() {
            out[x + t * lo] = v.clone();
        }
    }
    out
}

/// `res(theta_{n+1}) - a_p theta_n + p^(k-2) cor(theta_{n-1})` as an exponent vector.
/// At `n = 0` the lower term comes from the level `p^(N-1)` symbol itself
/// (the pair `m = 1`, `a = 0` for odd `p`).
pub fn three_term_residual<F: Field>(
    sym: &EigenSymbol<F>,
    ctx: &PrimeContext,
    n: u32,
    j: u32,
    psi: u32,
    a_p: &F,
) -> Result<Vec<F>> {
    check_args(sym, j, psi)?;
    let chi = exact_character(ctx, psi)?;
    let unit = sym.table[0][0].one_like();
    let w = |a: u64| unit.from_int_like(&BigInt::from(chi(a)));
    let upper = exponent_vector(sym, ctx, n + 1, j, &w);
    let mid = exponent_vector(sym, ctx, n, j, &w);
    let lower = if n >= 1 {
        exponent_vector(sym, ctx, n - 1, j, &w)
    } else {
        // cor from level p^(N-1) straight into layer 0
        let big = ctx.pn(ctx.big_n(0));
        let small = big / ctx.p;
        let mut acc = unit.zero_like();
        for a in 1..big {
            if a % ctx.p == 0 {
                continue;
            }
            let b = sym.brackets((a % small) as i64, small as i64)[j as usize].clone();
            acc = acc.add(&w(a).mul(&b));
        }
        // already a layer-0 value, so no spreading
        return Ok(combine_three_term(&upper, &mid, &[acc], ctx, a_p, sym.weight, false));
    };
    Ok(combine_three_term(&upper, &mid, &lower, ctx, a_p, sym.weight, true))
}

/// The three-term residual from the exponent vectors of `theta_{n+1}`,
/// `theta_n`, `theta_{n-1}` (all with the same `j` and `psi`), `n >= 1`.
pub fn three_term_from_elements<F: Coeff>(
    upper: &MazurTateElement<F>,
    mid: &MazurTateElement<F>,
    lower: &MazurTateElement<F>,
    ctx: &PrimeContext,
    a_p: &F,
    weight: u32,
) -> Vec<F> {
    combine_three_term(&upper.exponents, &mid.exponents, &lower.exponents, ctx, a_p, weight, true)
}

fn combine_three_term<F: Coeff>(
    upper: &[F],
    mid: &[F],
    lower: &[F],
    ctx: &PrimeContext,
    a_p: &F,
    weight: u32,
    spread: bool,
) -> Vec<F> {
    let unit = mid[0].one_like();
    let pk = unit.from_int_like(&num_traits::pow(BigInt::from(ctx.p), (weight - 2) as usize));
    let lower = if spread { corestrict_exponents(lower, ctx.p as usize) } else { lower.to_vec() };
    let res = restrict_exponents(upper, mid.len());
    res.iter()
        .zip(mid)
        .zip(&lower)
        .map(|((r, m), l)| r.sub(&a_p.mul(m)).add(&pk.mul(l)))
        .collect()
}

/// `prod Phi_i(1+T)` over `1 <= i <= n` with `eps(i) = star` (N even) or `-star` (N odd).
pub fn interpolation_divisor<F: Coeff>(ctx: &PrimeContext, n: u32, proto: &F) -> Poly<F> {
    let s = if ctx.big_n(n).is_multiple_of(2) { ctx.star() } else { -ctx.star() };
    let mut acc = Poly::constant(proto.one_like());
    for i in 1..=n {
        if eps(i) == s {
            acc = acc.mul(&phi_shifted(ctx, i, proto));
        }
    }
    acc
}

/// Exact divisibility of `theta` by the interpolation divisor.
pub fn interpolation_zero_check<F: Coeff>(th: &MazurTateElement<F>, ctx: &PrimeContext) -> Result<()> {
    if th.poly.is_zero() {
        return Ok(());
    }
    let proto = &th.poly.coeffs()[0];
    let d = interpolation_divisor(ctx, th.meta.n, proto);
    if th.poly.rem_monic(&d).is_zero() {
        Ok(())
    } else {
        Err(MtError::DivisibilityFails(format!(
            "theta_{} of {} is not divisible by the product of cyclotomic factors of degree {}",
            th.meta.n,
            th.meta.form,
            d.degree().unwrap_or(0)
        )))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharacterValuation {
    pub n: u32,
    /// `ord_p theta(zeta_{p^n} - 1)`; `None` when it vanishes.
    pub valuation: Option<BigRational>,
    /// `mu(theta) + lambda(theta) / t_n`.
    pub predicted: BigRational,
    pub matches: bool,
}

/// `ord_p theta(zeta_{p^n} - 1)` through the resultant with `Phi_n(1+T)`.
pub fn character_valuation(th: &MazurTateElement<BigRational>, ctx: &PrimeContext) -> Result<CharacterValuation> {
    let n = th.meta.n;
    if n == 0 {
        return Err(MtError::InvalidContext("character valuation needs n >= 1".into()));
    }
    let inv = th.invariants()?;
    let tn = ctx.t(n) as i64;
    let predicted = BigRational::new((inv.mu * tn + inv.lambda as i64).into(), tn.into());
    let phi = phi_shifted(ctx, n, &BigRational::zero());
    let valuation = match resultant_valuation(&phi, &th.poly, ctx.p) {
        Ok(v) => Some(BigRational::new(v.into(), tn.into())),
        Err(MtError::ZeroResultant) => None,
        Err(e) => return Err(e),
    };
    let matches = valuation.as_ref() == Some(&predicted);
    Ok(CharacterValuation { n, valuation, predicted, matches })
}

/// JSON export `{meta, coeffs: ["num/den", ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaExport {
    pub meta: ThetaMeta,
    pub coeffs: Vec<String>,
}

impl MazurTateElement<BigRational> {
    pub fn export(&self) -> ThetaExport {
        ThetaExport { meta: self.meta.clone(), coeffs: self.poly.coeffs().iter().map(|c| c.to_string()).collect() }
    }
}

impl ThetaExport {
    pub fn to_poly(&self) -> Result<Poly<BigRational>> {
        let cs = self
            .coeffs
            .iter()
            .map(|s| s.parse::<BigRational>().map_err(|e| MtError::SchemaError(format!("coefficient {s}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(cs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn res_cor_shapes() {
        let e: Vec<BigRational> = (0..9).map(|i| BigRational::from_integer(i.into())).collect();
        let r = restrict_exponents(&e, 3);
        assert_eq!(r[0], BigRational::from_integer(9.into()));
        let c = corestrict_exponents(&r, 3);
        assert_eq!(c.len(), 9);
        assert_eq!(c[4], r[1]);
    }

    #[test]
    fn divisor_parity() {
        let ctx = PrimeContext::new(3).unwrap();
        let z = BigRational::zero();
        assert_eq!(interpolation_divisor(&ctx, 1, &z).degree(), Some(0));
        assert_eq!(interpolation_divisor(&ctx, 2, &z), phi_shifted(&ctx, 1, &z));
        assert_eq!(interpolation_divisor(&ctx, 3, &z), phi_shifted(&ctx, 2, &z));
    }
}
