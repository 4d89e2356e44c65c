use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{MtError, Result};

/// A p-adic valuation that may be infinite (exact zero) or only bounded below
/// (a residue that vanishes modulo `p^M`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Val {
    Finite(i64),
    AtLeast(i64),
    Infinite,
}

impl Val {
    pub fn exact(self) -> Result<Option<i64>> {
        match self {
            Val::Finite(v) => Ok(Some(v)),
            Val::Infinite => Ok(None),
            Val::AtLeast(m) => Err(MtError::PrecisionInsufficient(format!(
                "residue vanishes modulo p^{m}"
            ))),
        }
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Val::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// `Some(true)` if the valuation is certainly `>= bound`, `Some(false)` if
    /// certainly below, `None` when the residue precision cannot decide.
    pub fn at_least(self, bound: i64) -> Option<bool> {
        match self {
            Val::Finite(v) => Some(v >= bound),
            Val::Infinite => Some(true),
            Val::AtLeast(m) => {
                if m >= bound {
                    Some(true)
                } else {
                    None
                }
            }
        }
    }

    pub fn add(self, other: Val) -> Val {
        match (self, other) {
            (Val::Infinite, _) | (_, Val::Infinite) => Val::Infinite,
            (Val::Finite(a), Val::Finite(b)) => Val::Finite(a + b),
            (Val::Finite(a), Val::AtLeast(b))
            | (Val::AtLeast(a), Val::Finite(b))
            | (Val::AtLeast(a), Val::AtLeast(b)) => Val::AtLeast(a + b),
        }
    }

    /// Ordering key treating `AtLeast(m)` as the value `m`.
    fn key(self) -> (i64, u8) {
        match self {
            Val::Finite(v) => (v, 0),
            Val::AtLeast(m) => (m, 1),
            Val::Infinite => (i64::MAX, 2),
        }
    }
}

impl PartialOrd for Val {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Val {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Finite(v) => write!(f, "{v}"),
            Val::AtLeast(m) => write!(f, ">={m}"),
            Val::Infinite => write!(f, "inf"),
        }
    }
}

pub fn ordp_int(n: &BigInt, p: u64) -> Val {
    if n.is_zero() {
        return Val::Infinite;
    }
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut m = n.abs();
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            break;
        }
        m = q;
        v += 1;
    }
    Val::Finite(v)
}

pub fn ordp_rat(x: &BigRational, p: u64) -> Val {
    if x.is_zero() {
        return Val::Infinite;
    }
    let a = ordp_int(x.numer(), p).finite().unwrap_or(0);
    let b = ordp_int(x.denom(), p).finite().unwrap_or(0);
    Val::Finite(a - b)
}

pub fn ordp_u64(mut n: u64, p: u64) -> Option<i64> {
    if n == 0 {
        return None;
    }
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    Some(v)
}
