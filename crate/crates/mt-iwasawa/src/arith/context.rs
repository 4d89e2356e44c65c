use serde::{Deserialize, Serialize};

use super::is_prime;
use crate::error::{MtError, Result};

/// The prime `p`, the topological generator `gamma` of `1 + 2pZ_p`, the working
/// residue precision `M` and the ramification data of the coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeContext {
    pub p: u64,
    pub gamma: u64,
    pub m: u32,
    pub e: u32,
    pub f_res: u32,
}

impl PrimeContext {
    pub fn new(p: u64) -> Result<Self> {
        let gamma = if p == 2 { 5 } else { 1 + p };
        Self::with_gamma(p, gamma, 30)
    }

    pub fn with_gamma(p: u64, gamma: u64, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(MtError::InvalidContext(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(MtError::InvalidContext("precision M must be >= 1".into()));
        }
        // gamma must generate 1 + 2pZ_p: gamma = 1 mod 2p but not mod 2p^2 (p-adically).
        let (q1, q2) = if p == 2 { (4, 8) } else { (p, p * p) };
        if gamma % q1 != 1 || gamma % q2 == 1 {
            return Err(MtError::InvalidContext(format!(
                "gamma = {gamma} is not a topological generator of 1+2pZ_p for p = {p}"
            )));
        }
        Ok(PrimeContext { p, gamma, m, e: 1, f_res: 1 })
    }

    pub fn with_precision(mut self, m: u32) -> Self {
        self.m = m.max(1);
        self
    }

    /// `p^n`.
    pub fn pn(&self, n: u32) -> u64 {
        super::pow_u64(self.p, n)
    }

    /// `t_n = p^n - p^(n-1)` (and `t_0 = 1` by convention: the degree of `T`).
    pub fn t(&self, n: u32) -> u64 {
        if n == 0 {
            1
        } else {
            self.pn(n) - self.pn(n - 1)
        }
    }

    /// The exponent `N(p, n)` with `Gal(Q(zeta_{p^N})/Q) = Delta x Gamma_n`.
    pub fn big_n(&self, n: u32) -> u32 {
        if self.p == 2 {
            n + 2
        } else {
            n + 1
        }
    }

    /// Order of the torsion part `Delta`.
    pub fn delta_order(&self) -> u64 {
        if self.p == 2 {
            2
        } else {
            self.p - 1
        }
    }

    /// `star = +1` for odd p, `-1` for p = 2.
    pub fn star(&self) -> i32 {
        if self.p == 2 {
            -1
        } else {
            1
        }
    }
}

/// The sign `epsilon_n` of `(-1)^n`.
pub fn eps(n: u32) -> i32 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        assert_eq!(PrimeContext::new(3).unwrap().gamma, 4);
        assert_eq!(PrimeContext::new(2).unwrap().gamma, 5);
        assert!(PrimeContext::with_gamma(3, 10, 5).is_err());
        assert!(PrimeContext::with_gamma(3, 7, 5).is_ok());
        assert!(PrimeContext::with_gamma(2, 9, 5).is_err());
        assert!(PrimeContext::new(4).is_err());
    }
}
