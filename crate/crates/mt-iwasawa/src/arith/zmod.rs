use std::collections::HashMap;

use super::coeff::{invmod, mulmod, powmod};
use super::context::PrimeContext;
use super::pow_u64;

/// Teichmuller lift of the unit `a` modulo `p^m`: the root of unity congruent
/// to `a` modulo `p` (modulo 4 when `p = 2`, where it is `+-1`).
pub fn teichmuller(a: i64, p: u64, m: u32) -> u64 {
    let q = pow_u64(p, m);
    let a = a.rem_euclid(q as i64) as u64;
    assert!(!a.is_multiple_of(p), "teichmuller lift of a non-unit");
    if p == 2 {
        return if a % 4 == 1 { 1 % q } else { q - 1 };
    }
    let mut x = a;
    loop {
        let y = powmod(x, p, q);
        if y == x {
            return x;
        }
        x = y;
    }
}

/// `x mod p^n` with `gamma^x = <a>` modulo `p^N`, `N = N(p, n)`, computed digit by digit.
pub fn discrete_log_gamma(a: i64, ctx: &PrimeContext, n: u32) -> u64 {
    let p = ctx.p;
    let big_n = ctx.big_n(n);
    let q = pow_u64(p, big_n);
    let a = a.rem_euclid(q as i64) as u64;
    let w = teichmuller(a as i64, p, big_n);
    let target = mulmod(a, invmod(w, q), q);
    let base = if p == 2 { 3 } else { 2 };
    let mut x: u64 = 0;
    for i in 0..n {
        let modulus = pow_u64(p, base + i);
        let step = pow_u64(p, i);
        let mut found = false;
        for d in 0..p {
            let cand = x + d * step;
            if powmod(ctx.gamma, cand, modulus) == target % modulus {
                x = cand;
                found = true;
                break;
            }
        }
        assert!(found, "discrete log digit not found; gamma is not a generator");
    }
    x
}

/// Precomputed discrete logarithms for all units modulo `p^N(p,n)`.
#[derive(Clone, Debug)]
pub struct DlogTable {
    pub n: u32,
    pub q: u64,
    table: HashMap<u64, u64>,
    teich: Vec<u64>,
    tmod: u64,
}

impl DlogTable {
    pub fn new(ctx: &PrimeContext, n: u32) -> Self {
        let p = ctx.p;
        let q = pow_u64(p, ctx.big_n(n));
        let pn = pow_u64(p, n);
        let mut table = HashMap::with_capacity(pn as usize);
        let mut g = 1 % q;
        for x in 0..pn {
            table.insert(g, x);
            g = mulmod(g, ctx.gamma % q, q);
        }
        let tmod = if p == 2 { 4 } else { p };
        let teich = (0..tmod)
            .map(|r| if r % p == 0 { 0 } else { teichmuller(r as i64, p, ctx.big_n(n)) })
            .collect();
        DlogTable { n, q, table, teich, tmod }
    }

    /// Teichmuller lift `omega(a)` modulo `p^N`.
    pub fn omega(&self, a: u64) -> u64 {
        self.teich[(a % self.tmod) as usize]
    }

    pub fn log(&self, a: u64) -> u64 {
        let a = a % self.q;
        let t = mulmod(a, invmod(self.omega(a), self.q), self.q);
        self.table[&t]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn teich_examples() {
        assert_eq!(teichmuller(1, 3, 3), 1);
        assert_eq!(teichmuller(2, 3, 3), 26);
        assert_eq!(teichmuller(3, 2, 4), 15);
        for p in [3u64, 5, 7] {
            let q = pow_u64(p, 6);
            for a in 1..p {
                let w = teichmuller(a as i64, p, 6);
                assert_eq!(w % p, a);
                assert_eq!(powmod(w, p - 1, q), 1);
            }
        }
    }

    #[test]
    fn dlog_matches_table() {
        for p in [2u64, 3, 5] {
            let ctx = PrimeContext::new(p).unwrap();
            for n in 0..3 {
                let t = DlogTable::new(&ctx, n);
                for a in 1..t.q {
                    if a % p != 0 {
                        assert_eq!(t.log(a), discrete_log_gamma(a as i64, &ctx, n));
                    }
                }
            }
        }
    }
}
