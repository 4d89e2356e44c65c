use serde::{Deserialize, Serialize};

use super::division::remainder_quotient;
use super::series::{invariants, InvariantPair};
use crate::arith::{Coeff, Poly, PrimeContext};
use crate::error::{MtError, Result};

/// The data entering the p-large test at layer `n` (unramified coefficients, `e = 1`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PLargeProfile {
    pub n: u32,
    pub lambda: u64,
    pub mu: i64,
    pub r: u64,
    pub q: u64,
    pub t_n: u64,
    /// Lower bounds `v_i(F, n)` for `0 <= i < lambda`.
    pub v: Vec<i64>,
}

impl PLargeProfile {
    pub fn from_invariants(ctx: &PrimeContext, n: u32, inv: InvariantPair) -> Option<Self> {
        let pn = ctx.pn(n);
        if inv.lambda < pn {
            return None;
        }
        let (r, q) = remainder_quotient(inv.lambda - pn, ctx, n);
        let pn1 = ctx.pn(n - 1);
        let mu = inv.mu;
        let e_inv = 1; // 1/e with e = 1
        let v = (0..inv.lambda)
            .map(|i| {
                if i <= r + pn1 {
                    mu + q as i64 + 1 + e_inv
                } else if i < pn {
                    mu + q as i64 + 1
                } else {
                    let (ri, qi) = remainder_quotient(i - pn, ctx, n);
                    let base = mu + q as i64 - qi as i64;
                    if ri <= r {
                        base + e_inv
                    } else {
                        base
                    }
                }
            })
            .collect();
        Some(PLargeProfile { n, lambda: inv.lambda, mu, r, q, t_n: ctx.t(n), v })
    }
}

/// The profile of `F` at `n`, or `None` when `lambda(F) < p^n`.
pub fn p_large_profile<C: Coeff>(f: &Poly<C>, ctx: &PrimeContext, n: u32) -> Result<Option<PLargeProfile>> {
    let inv = invariants(f, ctx.p)?;
    Ok(PLargeProfile::from_invariants(ctx, n, inv))
}

/// Whether `F` is p-large at `n`. Zero coefficients satisfy every bound.
pub fn is_p_large<C: Coeff>(f: &Poly<C>, ctx: &PrimeContext, n: u32) -> Result<bool> {
    if ctx.e != 1 {
        return Err(MtError::RamifiedContext);
    }
    let Some(prof) = p_large_profile(f, ctx, n)? else {
        return Ok(false);
    };
    for (i, &vi) in prof.v.iter().enumerate() {
        let Some(c) = f.coeff(i) else { continue };
        match c.ordp(ctx.p).at_least(vi) {
            Some(true) => {}
            Some(false) => return Ok(false),
            None => {
                return Err(MtError::PrecisionInsufficient(format!(
                    "coefficient {i} cannot be compared with bound {vi}"
                )))
            }
        }
    }
    Ok(true)
}

/// Invariants of `pi_n(F)` read off from those of a p-large `F`.
pub fn layer_invariants_via_theorem<C: Coeff>(f: &Poly<C>, ctx: &PrimeContext, n: u32) -> Result<InvariantPair> {
    if !is_p_large(f, ctx, n)? {
        return Err(MtError::NotPLarge(n));
    }
    let prof = p_large_profile(f, ctx, n)?.expect("p-large implies lambda >= p^n");
    Ok(InvariantPair { lambda: prof.r + ctx.pn(n - 1), mu: prof.mu + prof.q as i64 + 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::iwasawa::series::project;
    use num_rational::BigRational;

    #[test]
    fn examples() {
        let ctx = PrimeContext::new(3).unwrap();
        for n in 1..4 {
            let t = Poly::monomial(rat(1), ctx.pn(n) as usize);
            assert!(is_p_large(&t, &ctx, n).unwrap());
            let via = layer_invariants_via_theorem(&t, &ctx, n).unwrap();
            assert_eq!(via, InvariantPair { lambda: ctx.pn(n - 1), mu: 1 });
            assert_eq!(via, project(&t, &ctx, n).invariants(3).unwrap());
            let tp = t.add(&Poly::constant(rat(3)));
            assert!(!is_p_large(&tp, &ctx, n).unwrap());
            let w = crate::iwasawa::omega(&ctx, n, &rat(0));
            assert!(!is_p_large(&w, &ctx, n).unwrap());
        }
        let f: Poly<BigRational> = Poly::from_ints_q(&[0, 9, 0, 1]);
        assert!(is_p_large(&f, &ctx, 1).unwrap());
        assert_eq!(layer_invariants_via_theorem(&f, &ctx, 1).unwrap(), InvariantPair { lambda: 1, mu: 1 });
        assert_eq!(project(&f, &ctx, 1).poly, Poly::from_ints_q(&[0, 6, -3]));
        let g: Poly<BigRational> = Poly::from_ints_q(&[0, 3, 0, 1]);
        assert!(!is_p_large(&g, &ctx, 1).unwrap());
        assert_eq!(layer_invariants_via_theorem(&g, &ctx, 1), Err(MtError::NotPLarge(1)));
        assert_eq!(project(&g, &ctx, 1).invariants(3).unwrap(), InvariantPair { lambda: 2, mu: 1 });
    }
}
