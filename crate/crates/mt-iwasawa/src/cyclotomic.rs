//! Cyclotomic factors of `omega_n`, the twist `eta^j`, the finite half-logarithms
//! `log_{k,n}^±`, and the weight constants that govern how `lambda(theta_n)` drops.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arith::context::eps;
use crate::arith::{binomial, ordp_int, resultant_valuation, Coeff, Poly, PrimeContext, ResCtx, ZpRes};
use crate::error::{MtError, Result};
use crate::iwasawa::{invariants, project, InvariantPair};

/// `Phi_m(T) = sum_{i<p} T^(i p^(m-1))`, the `p^m`-th cyclotomic polynomial.
pub fn phi_poly<C: Coeff>(ctx: &PrimeContext, m: u32, proto: &C) -> Poly<C> {
    assert!(m >= 1, "Phi_m needs m >= 1");
    let step = ctx.pn(m - 1) as usize;
    let mut c = vec![proto.zero_like(); step * (ctx.p as usize - 1) + 1];
    for i in 0..ctx.p as usize {
        c[i * step] = proto.one_like();
    }
    Poly::new(c)
}

/// `Phi_m(1+T)`, monic of degree `t_m` with `lambda = t_m`, `mu = 0`.
pub fn phi_shifted<C: Coeff>(ctx: &PrimeContext, m: u32, proto: &C) -> Poly<C> {
    phi_poly(ctx, m, proto).shift_one()
}

/// `gamma^j` in the coefficient ring; `None` only if the ring cannot invert `gamma`.
pub fn gamma_power<C: Coeff>(ctx: &PrimeContext, j: i64, proto: &C) -> Option<C> {
    let g = proto.from_int_like(&BigInt::from(ctx.gamma));
    let mut acc = proto.one_like();
    for _ in 0..j.unsigned_abs() {
        acc = acc.mul(&g);
    }
    if j < 0 {
        acc.try_inv()
    } else {
        Some(acc)
    }
}

/// `eta^j(F) = F(gamma^j (1+T) - 1)`.
pub fn eta<C: Coeff>(f: &Poly<C>, j: i64, ctx: &PrimeContext) -> Poly<C> {
    if j == 0 || f.is_empty() {
        return f.clone();
    }
    let proto = &f.coeffs()[0];
    let u = gamma_power(ctx, j, proto).expect("gamma is a p-adic unit");
    f.compose_affine(&u.sub(&proto.one_like()), &u)
}

/// `omega_{n,j}^sign = prod Phi_i(gamma^(-j)(1+T))` over `1 <= i <= n` with `eps(i) = sign`.
pub fn omega_pm<C: Coeff>(ctx: &PrimeContext, n: u32, j: i64, sign: i32, proto: &C) -> Poly<C> {
    let mut acc = Poly::constant(proto.one_like());
    for i in 1..=n {
        if eps(i) == sign {
            acc = acc.mul(&phi_shifted(ctx, i, proto));
        }
    }
    eta(&acc, -j, ctx)
}

/// `log_{k,n}^sign = prod_{j=0}^{k-2} omega_{n,j}^sign`.
pub fn half_log_layer<C: Coeff>(ctx: &PrimeContext, k: u32, n: u32, sign: i32, proto: &C) -> Poly<C> {
    assert!(k >= 2, "weight must be at least 2");
    let mut acc = Poly::constant(proto.one_like());
    for j in 0..=(k as i64 - 2) {
        acc = acc.mul(&omega_pm(ctx, n, j, sign, proto));
    }
    acc
}

/// `q_n`: `p^(n-1) - p^(n-2) + ... + p - 1` for even `n`, `... + p^2 - p` for odd `n`.
pub fn qn(ctx: &PrimeContext, n: u32) -> u64 {
    alternating(ctx.p, n)
}

/// `q_n'`: the same alternating sum shifted one power of `p` down; zero for `n < 2`.
pub fn qn_prime(ctx: &PrimeContext, n: u32) -> u64 {
    if n < 2 {
        0
    } else {
        ctx.p * qn(ctx, n - 2)
    }
}

// p^(n-1) - p^(n-2) + ..., the last term being -1 (n even) or -p (n odd)
fn alternating(p: u64, n: u32) -> u64 {
    let mut s: i128 = 0;
    for e in (n % 2)..n {
        // exponent e contributes with sign (-1)^(n-1-e)
        let term = (p as i128).pow(e);
        if (n - 1 - e).is_multiple_of(2) {
            s += term;
        } else {
            s -= term;
        }
    }
    s as u64
}

/// `delta_n^+ = floor(n/2)`, `delta_n^- = floor((n+1)/2)`: how many `i <= n` have each parity.
pub fn delta(n: u32, sign: i32) -> u32 {
    if sign > 0 {
        n / 2
    } else {
        n.div_ceil(2)
    }
}

/// `iota` either fixed by the weight or depending on a signed `lambda` against `nu`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Iota {
    Resolved(i64),
    Branches { ge: i64, lt: i64 },
}

impl Iota {
    /// Pick the branch for `lambda` compared against the matching `nu^sign`.
    pub fn resolve(&self, lambda: i64, nu_sign: i64) -> i64 {
        match *self {
            Iota::Resolved(v) => v,
            Iota::Branches { ge, lt } => {
                if lambda >= nu_sign {
                    ge
                } else {
                    lt
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightConstants {
    pub p: u64,
    pub k: u32,
    pub nu: i64,
    pub nu_minus: i64,
    pub nu_plus: i64,
    pub l: i64,
    pub a: i64,
    pub b: i64,
    pub iota_plus: Iota,
    pub iota_minus: Iota,
    /// Exponent of 2 in `C^+` and `C^-`.
    pub c_plus_log2: u32,
    pub c_minus_log2: u32,
}

impl WeightConstants {
    pub fn nu_sign(&self, sign: i32) -> i64 {
        if sign > 0 {
            self.nu_plus
        } else {
            self.nu_minus
        }
    }

    pub fn iota(&self, sign: i32) -> Iota {
        if sign > 0 {
            self.iota_plus
        } else {
            self.iota_minus
        }
    }

    /// Whether `k = p + 2 mod (p^2 - 1)` with `k >= p + 2`.
    pub fn is_exceptional(&self) -> bool {
        matches!(self.iota_plus, Iota::Branches { .. })
    }

    /// `ord_p C^sign`.
    pub fn ordp_c(&self, sign: i32) -> i64 {
        let e = if sign > 0 { self.c_plus_log2 } else { self.c_minus_log2 };
        if self.p == 2 {
            e as i64
        } else {
            0
        }
    }
}

pub fn weight_constants(ctx: &PrimeContext, k: u32) -> WeightConstants {
    let p = ctx.p as i64;
    let k = k as i64;
    let m = p * p - 1;
    let nu = (k - p - 2).div_euclid(m);
    let l = (k - p - 2).rem_euclid(m);
    let (a, b) = (l % p, l / p);
    let nu_minus = nu * (p - 1) + 1;
    let iota = if k <= p + 1 {
        Iota::Resolved(0)
    } else if (k - p - 2) % m != 0 {
        Iota::Resolved((p * (k - 2) - 1).div_euclid(m))
    } else {
        Iota::Branches { ge: (p * (k - 2) - 1) / m, lt: p * (k - 2 - p) / m }
    };
    WeightConstants {
        p: ctx.p,
        k: k as u32,
        nu,
        nu_minus,
        nu_plus: p * nu_minus,
        l,
        a,
        b,
        iota_plus: iota,
        iota_minus: iota,
        c_plus_log2: 0,
        c_minus_log2: if ctx.p == 2 { k as u32 - 1 } else { 0 },
    }
}

/// `I_k^sign(L)` for a multiplier with `lambda(L) = lambda_l`.
pub fn cap_i(ctx: &PrimeContext, k: u32, sign: i32, lambda_l: i64) -> i64 {
    let w = weight_constants(ctx, k);
    w.iota(sign).resolve(lambda_l, w.nu_sign(sign))
}

/// Predicted `(lambda, mu)` of `theta_n`. Values can be negative for small `n`,
/// where the asymptotic formula has not yet taken over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub n: u32,
    pub lambda: i64,
    pub mu: i64,
    pub iota: i64,
}

impl Prediction {
    pub fn to_pair(&self) -> Option<InvariantPair> {
        (self.lambda >= 0).then_some(InvariantPair { lambda: self.lambda as u64, mu: self.mu })
    }
}

/// Signed invariants `lambda^±`, `mu^±` of the p-adic L-functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedInvariants {
    pub lambda_plus: i64,
    pub lambda_minus: i64,
    pub mu_plus: i64,
    pub mu_minus: i64,
}

impl SignedInvariants {
    pub fn lambda(&self, sign: i32) -> i64 {
        if sign > 0 {
            self.lambda_plus
        } else {
            self.lambda_minus
        }
    }
    pub fn mu(&self, sign: i32) -> i64 {
        if sign > 0 {
            self.mu_plus
        } else {
            self.mu_minus
        }
    }
}

pub fn predict_theta_invariants(
    ctx: &PrimeContext,
    k: u32,
    j: u32,
    signed: &SignedInvariants,
    n: u32,
) -> Result<Prediction> {
    if k < 2 || j + 2 > k {
        return Err(MtError::InvalidContext(format!("need k >= 2 and 0 <= j <= k-2, got k={k}, j={j}")));
    }
    let w = weight_constants(ctx, k);
    let s = eps(n + 1);
    let l_sign = ctx.star() * s;
    let lam = signed.lambda(l_sign);
    let nu_s = w.nu_sign(s);
    if ctx.e != 1 && w.is_exceptional() && lam >= nu_s {
        return Err(MtError::UnsupportedBranch(format!(
            "k = {k} is exceptional and lambda = {lam} >= nu = {nu_s} over a ramified field"
        )));
    }
    let iota = w.iota(s).resolve(lam, nu_s);
    let lambda = lam + (k as i64 - 1) * qn(ctx, n) as i64 - iota * ctx.t(n) as i64;
    let binom = ordp_int(&binomial((k - 2) as u64, j as u64), ctx.p).finite().unwrap_or(0);
    let mu = signed.mu(l_sign) + iota + w.ordp_c(eps(n)) + binom;
    Ok(Prediction { n, lambda, mu, iota })
}

/// Direct and closed-form invariants of `pi_n(eta^j(L log_{k,n}^{eps_{n+1}}))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LfknRecord {
    pub p: u64,
    pub k: u32,
    pub n: u32,
    pub j: i64,
    pub direct: InvariantPair,
    pub formula_lambda: i64,
    pub formula_mu: i64,
    pub closed_form_lambda: i64,
    pub matches: bool,
}

/// The closed form for `lambda` written through `a`, `b`, `q_n'` and `nu`.
pub fn lfkn_closed_form_lambda(ctx: &PrimeContext, k: u32, n: u32, lambda_l: i64) -> i64 {
    let w = weight_constants(ctx, k);
    let s = eps(n + 1);
    let nu = w.nu_sign(s);
    let q = qn(ctx, n) as i64;
    let q1 = qn_prime(ctx, n) as i64;
    let pn1 = ctx.pn(n.saturating_sub(1)) as i64;
    let p = ctx.p as i64;
    let tail = if k == 2 {
        w.a * q + w.b * q1 - pn1 * (p - 2)
    } else if !w.is_exceptional() {
        w.a * q + w.b * q1 + pn1
    } else if lambda_l >= nu {
        pn1
    } else {
        ctx.pn(n) as i64
    };
    lambda_l - nu + tail
}

/// Compare the directly computed invariants with the asymptotic prediction.
/// Arithmetic runs modulo the largest prime power that fits a machine word.
pub fn lfkn_oracle(ctx: &PrimeContext, k: u32, n: u32, j: i64, l: &Poly<BigRational>) -> Result<LfknRecord> {
    if ctx.e != 1 {
        return Err(MtError::RamifiedContext);
    }
    let li = invariants(l, ctx.p)?;
    let res = ResCtx::new(ctx.p, ResCtx::max_precision(ctx.p))?;
    let proto = res.elem(0);
    let lz: Poly<ZpRes> =
        Poly::new(l.coeffs().iter().map(|c| res.reduce_rat(c).map(|v| res.elem(v))).collect::<Result<Vec<_>>>()?);
    let s = eps(n + 1);
    let prod = lz.mul(&half_log_layer(ctx, k, n, s, &proto));
    let direct = invariants(&project(&eta(&prod, j, ctx), ctx, n).poly, ctx.p)?;
    let i = cap_i(ctx, k, s, li.lambda as i64);
    let formula_lambda = li.lambda as i64 + (k as i64 - 1) * qn(ctx, n) as i64 - i * ctx.t(n) as i64;
    let formula_mu = li.mu + i;
    Ok(LfknRecord {
        p: ctx.p,
        k,
        n,
        j,
        direct,
        formula_lambda,
        formula_mu,
        closed_form_lambda: lfkn_closed_form_lambda(ctx, k, n, li.lambda as i64),
        matches: direct.lambda as i64 == formula_lambda && direct.mu == formula_mu,
    })
}

/// `ord_p Phi_m(gamma^j zeta_n)` from the resultant of `Phi_n(1+T)` and `Phi_m(gamma^j (1+T))`,
/// divided by `t_n`.
pub fn cyclo_valuation(ctx: &PrimeContext, m: u32, n: u32, j: i64) -> Result<BigRational> {
    let proto = BigRational::from_integer(0.into());
    let a = phi_shifted(ctx, n, &proto);
    // b(T) = Phi_m(u(1+T)) with u = gamma^j, so b(zeta_n - 1) = Phi_m(u zeta_n)
    let u = gamma_power(ctx, j, &proto).expect("rational gamma power");
    let b = phi_poly(ctx, m, &proto).compose_affine(&u, &u);
    let v = resultant_valuation(&a, &b, ctx.p)?;
    Ok(BigRational::new(v.into(), (ctx.t(n) as i64).into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_frac};

    fn q0() -> BigRational {
        rat(0)
    }

    #[test]
    fn phi_small() {
        let ctx = PrimeContext::new(3).unwrap();
        assert_eq!(phi_poly(&ctx, 1, &q0()), Poly::from_ints_q(&[1, 1, 1]));
        assert_eq!(phi_shifted(&ctx, 1, &q0()), Poly::from_ints_q(&[3, 3, 1]));
        let f = phi_shifted(&ctx, 2, &q0());
        assert_eq!(invariants(&f, 3).unwrap(), InvariantPair { lambda: 6, mu: 0 });
    }

    #[test]
    fn q_values() {
        let ctx = PrimeContext::new(3).unwrap();
        let q: Vec<u64> = (1..=6).map(|n| qn(&ctx, n)).collect();
        assert_eq!(q, vec![0, 2, 6, 20, 60, 182]);
        assert_eq!(qn(&ctx, 0), 0);
        assert_eq!(qn_prime(&ctx, 4), 6);
        assert_eq!(qn_prime(&ctx, 5), 18);
        assert_eq!(qn_prime(&ctx, 1), 0);
        for p in [2u64, 3, 5, 7] {
            let c = PrimeContext::new(p).unwrap();
            for n in 2..8 {
                assert_eq!(p * qn(&c, n), c.t(n) + qn_prime(&c, n));
            }
        }
    }

    #[test]
    fn constants() {
        let ctx = PrimeContext::new(3).unwrap();
        let w = weight_constants(&ctx, 6);
        assert_eq!((w.nu, w.nu_minus, w.nu_plus), (0, 1, 3));
        assert_eq!(w.iota_plus, Iota::Resolved(1));
        let w = weight_constants(&ctx, 13);
        assert_eq!((w.nu, w.nu_minus, w.nu_plus), (1, 3, 9));
        assert_eq!(w.iota_minus, Iota::Branches { ge: 4, lt: 3 });
        assert_eq!(weight_constants(&ctx, 4).iota_plus, Iota::Resolved(0));
        assert_eq!(cap_i(&ctx, 5, 1, 0), 0);
        assert_eq!(cap_i(&ctx, 5, 1, 3), 1);
    }

    #[test]
    fn predictions() {
        let ctx = PrimeContext::new(3).unwrap();
        let s = SignedInvariants { lambda_plus: 5, lambda_minus: 1, mu_plus: 0, mu_minus: 0 };
        assert_eq!(predict_theta_invariants(&ctx, 6, 0, &s, 4).unwrap().lambda, 47);
        assert_eq!(predict_theta_invariants(&ctx, 6, 0, &s, 3).unwrap().lambda, 17);
        let z = SignedInvariants { lambda_plus: 0, lambda_minus: 0, mu_plus: 0, mu_minus: 0 };
        assert_eq!(predict_theta_invariants(&ctx, 2, 0, &z, 4).unwrap().lambda, 20);
    }

    #[test]
    fn eta_roundtrip() {
        let ctx = PrimeContext::new(3).unwrap();
        let f = Poly::from_ints_q(&[3, 1, 9, 2]);
        assert_eq!(eta(&eta(&f, 1, &ctx), -1, &ctx), f);
        assert_eq!(invariants(&eta(&f, 2, &ctx), 3).unwrap(), invariants(&f, 3).unwrap());
        let w = omega_pm(&ctx, 3, 2, -1, &q0());
        assert_eq!(eta(&w, 2, &ctx), omega_pm(&ctx, 3, 0, -1, &q0()));
    }

    #[test]
    fn lfkn_small() {
        let ctx = PrimeContext::new(3).unwrap();
        let r = lfkn_oracle(&ctx, 4, 3, 0, &Poly::from_ints_q(&[1])).unwrap();
        assert_eq!(r.direct, InvariantPair { lambda: 18, mu: 0 });
        assert!(r.matches);
        assert_eq!(r.closed_form_lambda, 18);
        let r = lfkn_oracle(&ctx, 6, 4, 0, &Poly::from_ints_q(&[1])).unwrap();
        assert_eq!((r.formula_lambda, r.formula_mu), (46, 1));
        assert!(r.matches);
    }

    #[test]
    fn cyclo_lemma() {
        let ctx = PrimeContext::new(3).unwrap();
        assert_eq!(cyclo_valuation(&ctx, 2, 1, 0).unwrap(), rat(1));
        assert_eq!(cyclo_valuation(&ctx, 1, 2, 1).unwrap(), rat_frac(1, 3));
    }
}
