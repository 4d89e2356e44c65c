use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, Coeff, Poly, PrimeContext, Val};
use crate::error::{MtError, Result};

/// `(lambda, mu)` of a nonzero element of `Lambda` or `Lambda_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantPair {
    pub lambda: u64,
    pub mu: i64,
}

/// The unique representative of degree `< p^n` of a class in `Lambda_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct LayerPolynomial<C: Coeff> {
    pub n: u32,
    pub poly: Poly<C>,
}

impl<C: Coeff> LayerPolynomial<C> {
    pub fn invariants(&self, p: u64) -> Result<InvariantPair> {
        invariants(&self.poly, p)
    }
}

/// `mu` is the least coefficient valuation and `lambda` the first index attaining it.
/// For residue coefficients the minimum must be certified below the working precision.
pub fn invariants<C: Coeff>(f: &Poly<C>, p: u64) -> Result<InvariantPair> {
    let vals = f.valuations(p);
    let mut best: Option<(usize, i64)> = None;
    for (i, v) in vals.iter().enumerate() {
        if let Val::Finite(x) = v {
            if best.is_none_or(|(_, b)| *x < b) {
                best = Some((i, *x));
            }
        }
    }
    let Some((lambda, mu)) = best else {
        return if vals.iter().any(|v| matches!(v, Val::AtLeast(_))) {
            Err(MtError::PrecisionInsufficient("every coefficient vanishes to working precision".into()))
        } else {
            Err(MtError::ZeroSeries)
        };
    };
    for (i, v) in vals.iter().enumerate() {
        if let Val::AtLeast(m) = v {
            if *m < mu || (*m == mu && i < lambda) {
                return Err(MtError::PrecisionInsufficient(format!(
                    "coefficient {i} is only known to valuation >= {m}"
                )));
            }
        }
    }
    Ok(InvariantPair { lambda: lambda as u64, mu })
}

/// `omega_n = (1+T)^(p^n) - 1`.
pub fn omega<C: Coeff>(ctx: &PrimeContext, n: u32, proto: &C) -> Poly<C> {
    let pn = ctx.pn(n);
    let ints: Vec<BigInt> =
        (0..=pn).map(|i| if i == 0 { BigInt::from(0) } else { binomial(pn, i) }).collect();
    Poly::from_ints(&ints, proto)
}

/// `pi_n(F) = F mod omega_n` for a polynomial `F`.
pub fn project<C: Coeff>(f: &Poly<C>, ctx: &PrimeContext, n: u32) -> LayerPolynomial<C> {
    let poly = match f.coeffs().first() {
        None => Poly::zero(),
        Some(c) => f.rem_monic(&omega(ctx, n, c)),
    };
    LayerPolynomial { n, poly }
}

/// Projection of a truncated series whose omitted tail is only known to have
/// valuation at least `tail_valuation`: the result is meaningful modulo
/// `p^tail_valuation`, which must reach the working precision `M`.
pub fn project_truncated<C: Coeff>(
    f: &Poly<C>,
    ctx: &PrimeContext,
    n: u32,
    tail_valuation: i64,
) -> Result<LayerPolynomial<C>> {
    if tail_valuation < ctx.m as i64 {
        return Err(MtError::TailNotControlled(format!(
            "tail valuation {tail_valuation} is below the working precision {}",
            ctx.m
        )));
    }
    Ok(project(f, ctx, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ResCtx};
    use num_rational::BigRational;

    fn q(v: &[i64]) -> Poly<BigRational> {
        Poly::from_ints_q(v)
    }

    #[test]
    fn basic_invariants() {
        assert_eq!(invariants(&q(&[1]), 3).unwrap(), InvariantPair { lambda: 0, mu: 0 });
        // 3(1+T)^2 + T^3
        assert_eq!(invariants(&q(&[3, 6, 3, 1]), 3).unwrap(), InvariantPair { lambda: 3, mu: 0 });
        let ctx = PrimeContext::new(3).unwrap();
        for n in 1..4 {
            let w = omega(&ctx, n, &rat(0));
            assert_eq!(invariants(&w, 3).unwrap(), InvariantPair { lambda: ctx.pn(n), mu: 0 });
        }
        assert_eq!(invariants(&Poly::<BigRational>::zero(), 3), Err(MtError::ZeroSeries));
    }

    #[test]
    fn projections() {
        let ctx = PrimeContext::new(3).unwrap();
        assert_eq!(project(&q(&[0, 0, 0, 0, 1]), &ctx, 1).poly, q(&[0, 9, 6]));
        for n in 1..4 {
            let t = Poly::monomial(rat(1), ctx.pn(n) as usize);
            let inv = project(&t, &ctx, n).invariants(3).unwrap();
            assert_eq!(inv, InvariantPair { lambda: ctx.pn(n - 1), mu: 1 });
        }
    }

    #[test]
    fn residue_precision() {
        let rc = ResCtx::new(3, 2).unwrap();
        let f = Poly::new(vec![rc.elem(0), rc.elem(3)]);
        assert_eq!(invariants(&f, 3).unwrap(), InvariantPair { lambda: 1, mu: 1 });
        let z = Poly::new(vec![rc.elem(0), rc.elem(9)]);
        assert!(invariants(&z, 3).is_err());
        let g = Poly::new(vec![rc.elem(1), rc.elem(0), rc.elem(3)]);
        assert_eq!(invariants(&g, 3).unwrap(), InvariantPair { lambda: 0, mu: 0 });
        let ctx = PrimeContext::new(3).unwrap().with_precision(10);
        assert!(project_truncated(&g, &ctx, 1, 4).is_err());
        assert!(project_truncated(&g, &ctx, 1, 10).is_ok());
    }
}
