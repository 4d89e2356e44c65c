//! Exact arithmetic substrate.

pub mod coeff;
pub mod context;
pub mod linalg;
pub mod numfield;
pub mod poly;
pub mod resultant;
pub mod valuation;
pub mod zmod;

pub use coeff::{Coeff, Field, ResCtx, ZpRes, ZqCtx, ZqRes};
pub use context::PrimeContext;
pub use numfield::{NfElem, NumberField, PrimeEmbedding};
pub use poly::Poly;
pub use resultant::{resultant, resultant_valuation};
pub use valuation::{ordp_int, ordp_rat, Val};
pub use zmod::{discrete_log_gamma, teichmuller, DlogTable};

use num_bigint::BigInt;
use num_rational::BigRational;

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut r = BigInt::from(1);
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

pub fn pow_u64(base: u64, e: u32) -> u64 {
    base.checked_pow(e).expect("integer overflow in p-power")
}
