use num_bigint::BigInt;

use crate::arith::{binomial, ordp_int, PrimeContext};

/// Rows `c_{N,n}^(i)` for `0 <= N <= n_max`, indexed by `i` in `0..p^n`
/// (entry 0 is always zero): the coefficients of `T^(p^n + N) mod omega_n`.
pub fn division_terms(ctx: &PrimeContext, n: u32, n_max: usize) -> Vec<Vec<BigInt>> {
    assert!(n >= 1);
    let pn = ctx.pn(n) as usize;
    let base: Vec<BigInt> =
        (0..pn).map(|i| if i == 0 { BigInt::from(0) } else { -binomial(pn as u64, i as u64) }).collect();
    let mut rows = vec![base.clone()];
    for _ in 1..=n_max {
        let prev = rows.last().unwrap();
        let top = prev[pn - 1].clone();
        let row: Vec<BigInt> = (0..pn)
            .map(|i| {
                let shifted = if i >= 1 { prev[i - 1].clone() } else { BigInt::from(0) };
                if i == 0 {
                    BigInt::from(0)
                } else {
                    shifted + &top * &base[i]
                }
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// `(R(N)_n, Q(N)_n)` with `N = R + Q t_n`, `0 <= R < t_n`.
pub fn remainder_quotient(big_n: u64, ctx: &PrimeContext, n: u32) -> (u64, u64) {
    let t = ctx.t(n);
    (big_n % t, big_n / t)
}

/// Valuation bounds on the row `c_{N,n}`: at least `Q+2` below index `R + p^(n-1)`,
/// exactly `Q+1` there, at least `Q+1` above. Returns the first violating index.
pub fn division_bound_violation(row: &[BigInt], big_n: u64, ctx: &PrimeContext, n: u32) -> Option<usize> {
    let (r, q) = remainder_quotient(big_n, ctx, n);
    let q = q as i64;
    let pivot = (r + ctx.pn(n - 1)) as usize;
    row.iter().enumerate().find_map(|(i, c)| {
        let v = ordp_int(c, ctx.p);
        let ok = if i < pivot {
            v.at_least(q + 2) == Some(true)
        } else if i == pivot {
            v.finite() == Some(q + 1)
        } else {
            v.at_least(q + 1) == Some(true)
        };
        (!ok).then_some(i)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rows() {
        let ctx = PrimeContext::new(3).unwrap();
        let rows = division_terms(&ctx, 1, 1);
        assert_eq!(rows[0], vec![0.into(), BigInt::from(-3), BigInt::from(-3)]);
        assert_eq!(rows[1], vec![0.into(), BigInt::from(9), BigInt::from(6)]);
        assert_eq!(remainder_quotient(0, &ctx, 1), (0, 0));
        assert_eq!(remainder_quotient(5, &ctx, 1), (1, 2));
        assert_eq!(remainder_quotient(7, &ctx, 2), (1, 1));
        for (big_n, row) in division_terms(&ctx, 2, 12).iter().enumerate() {
            assert_eq!(division_bound_violation(row, big_n as u64, &ctx, 2), None);
        }
    }
}
