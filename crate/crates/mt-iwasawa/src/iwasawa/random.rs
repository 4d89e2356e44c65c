//! Seeded generators of test series hitting the boundaries of the finite-layer results.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use super::newton::{b_region_contains, f_bound};
use super::plarge::PLargeProfile;
use super::series::InvariantPair;
use crate::arith::{Poly, PrimeContext};

fn unit<R: Rng>(rng: &mut R, p: u64) -> BigInt {
    loop {
        let x: i64 = rng.gen_range(-40..=40);
        if x % p as i64 != 0 {
            return BigInt::from(x);
        }
    }
}

fn slack<R: Rng>(rng: &mut R) -> i64 {
    let mut s = 0;
    while s < 4 && rng.gen_bool(0.5) {
        s += 1;
    }
    s
}

/// `p^v * unit`, or zero with probability `zero_prob`.
fn coeff<R: Rng>(rng: &mut R, p: u64, v: i64, zero_prob: f64) -> BigRational {
    if rng.gen_bool(zero_prob) {
        return BigRational::from_integer(0.into());
    }
    BigRational::from_integer(num_traits::pow(BigInt::from(p), v.max(0) as usize) * unit(rng, p))
}

fn tail<R: Rng>(rng: &mut R, p: u64, mu: i64, len: usize, out: &mut Vec<BigRational>) {
    for _ in 0..len {
        let s = slack(rng);
        out.push(coeff(rng, p, mu + s, 0.3));
    }
}

/// A random polynomial with `lambda < p^n`.
pub fn small_lambda<R: Rng>(rng: &mut R, ctx: &PrimeContext, n: u32) -> (Poly<BigRational>, InvariantPair) {
    let p = ctx.p;
    let pn = ctx.pn(n);
    let lambda = rng.gen_range(0..pn);
    let mu = rng.gen_range(0..3);
    let mut c = Vec::new();
    for _ in 0..lambda {
        let s = slack(rng);
        c.push(coeff(rng, p, mu + 1 + s, 0.3));
    }
    c.push(coeff(rng, p, mu, 0.0));
    let extra = rng.gen_range(0..=2 * pn as usize);
    tail(rng, p, mu, extra, &mut c);
    (Poly::new(c), InvariantPair { lambda, mu })
}

/// A random series that is p-large at `n`, with coefficients on or above the bounds `v_i`.
pub fn p_large<R: Rng>(rng: &mut R, ctx: &PrimeContext, n: u32) -> (Poly<BigRational>, InvariantPair) {
    let p = ctx.p;
    let pn = ctx.pn(n);
    let lambda = pn + rng.gen_range(0..=3 * ctx.t(n));
    let mu = rng.gen_range(0..3);
    let inv = InvariantPair { lambda, mu };
    let prof = PLargeProfile::from_invariants(ctx, n, inv).unwrap();
    let mut c = Vec::new();
    for &v in &prof.v {
        let s = if rng.gen_bool(0.5) { 0 } else { slack(rng) };
        c.push(coeff(rng, p, v + s, 0.2));
    }
    c.push(coeff(rng, p, mu, 0.0));
    let extra = rng.gen_range(0..=pn as usize);
    tail(rng, p, mu, extra, &mut c);
    (Poly::new(c), inv)
}

/// A random series whose truncated Newton polygon lies in `B_n(F)`.
pub fn b_region<R: Rng>(rng: &mut R, ctx: &PrimeContext, n: u32) -> (Poly<BigRational>, InvariantPair) {
    let p = ctx.p;
    let pn = ctx.pn(n);
    loop {
        let lambda = pn + rng.gen_range(0..=3 * ctx.t(n));
        let mu = rng.gen_range(0..3);
        let mut c = Vec::new();
        for i in 0..lambda {
            let b = f_bound(ctx, n, lambda, mu, i as i64).ceil().to_integer();
            let b: i64 = b.try_into().unwrap();
            let s = if rng.gen_bool(0.6) { 0 } else { slack(rng) };
            c.push(coeff(rng, p, b + s, 0.2));
        }
        c.push(coeff(rng, p, mu, 0.0));
        let extra = rng.gen_range(0..=pn as usize);
        tail(rng, p, mu, extra, &mut c);
        let f = Poly::new(c);
        if b_region_contains(&f, ctx, n).unwrap_or(false) {
            return (f, InvariantPair { lambda, mu });
        }
    }
}

/// A random unit of `Lambda` (constant term a p-adic unit).
pub fn unit_series<R: Rng>(rng: &mut R, ctx: &PrimeContext, degree: usize) -> Poly<BigRational> {
    let mut c = vec![BigRational::from_integer(unit(rng, ctx.p))];
    for _ in 0..degree {
        c.push(coeff(rng, ctx.p, 0, 0.3));
    }
    Poly::new(c)
}
