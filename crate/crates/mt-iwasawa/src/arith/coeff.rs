use std::fmt::Debug;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::valuation::{ordp_rat, ordp_u64, Val};
use crate::error::{MtError, Result};

/// Ring elements that can serve as polynomial coefficients and carry a p-adic valuation.
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_int_like(&self, n: &BigInt) -> Self;
    fn ordp(&self, p: u64) -> Val;
    /// `Some(M)` for residues known modulo `p^M`, `None` for exact values.
    fn precision(&self) -> Option<u32> {
        None
    }
    /// Inverse when `self` is a unit of the coefficient ring.
    fn try_inv(&self) -> Option<Self>;
    /// Reduce `r` modulo the monic `m` in place; `r` ends with at most `deg m` entries.
    fn rem_monic_in_place(r: &mut Vec<Self>, m: &[Self]) {
        let dm = m.len() - 1;
        for d in (dm..r.len()).rev() {
            let top = r[d].clone();
            if top.is_zero() {
                continue;
            }
            for (i, mi) in m.iter().enumerate() {
                if !mi.is_zero() {
                    r[d - dm + i] = r[d - dm + i].sub(&top.mul(mi));
                }
            }
        }
        r.truncate(dm);
    }
    /// In place `f(T) -> f(T + 1)` on a coefficient vector.
    fn shift_one(cs: &mut [Self]) {
        let d = cs.len();
        for i in 0..d {
            for j in (i..d - 1).rev() {
                cs[j] = cs[j].add(&cs[j + 1]);
            }
        }
    }
}

pub trait Field: Coeff {
    fn inv(&self) -> Self;
    /// Basis of the kernel of `m` (rows of length `ncols`).
    fn kernel_of(m: &[Vec<Self>], ncols: usize, proto: &Self) -> Vec<Vec<Self>> {
        super::linalg::kernel_generic(m, ncols, proto)
    }
}

impl Coeff for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn ordp(&self, p: u64) -> Val {
        ordp_rat(self, p)
    }
    fn try_inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn rem_monic_in_place(r: &mut Vec<Self>, m: &[Self]) {
        if !m.iter().all(|c| c.is_integer()) {
            let dm = m.len() - 1;
            for d in (dm..r.len()).rev() {
                let top = r[d].clone();
                for (i, mi) in m.iter().enumerate() {
                    r[d - dm + i] -= &top * mi;
                }
            }
            r.truncate(dm);
            return;
        }
        let den = r.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let mut ints: Vec<BigInt> = r.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let mi: Vec<BigInt> = m.iter().map(|c| c.to_integer()).collect();
        let dm = mi.len() - 1;
        for d in (dm..ints.len()).rev() {
            if ints[d].is_zero() {
                continue;
            }
            let top = std::mem::take(&mut ints[d]);
            for (i, c) in mi[..dm].iter().enumerate() {
                if !c.is_zero() {
                    ints[d - dm + i] -= &top * c;
                }
            }
        }
        ints.truncate(dm);
        *r = ints.into_iter().map(|v| BigRational::new(v, den.clone())).collect();
    }
    fn shift_one(cs: &mut [Self]) {
        let den = cs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let mut ints: Vec<BigInt> = cs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let d = ints.len();
        for i in 0..d {
            for j in (i..d - 1).rev() {
                let (lo, hi) = ints.split_at_mut(j + 1);
                lo[j] += &hi[0];
            }
        }
        for (c, v) in cs.iter_mut().zip(ints) {
            *c = BigRational::new(v, den.clone());
        }
    }
}

impl Field for BigRational {
    fn inv(&self) -> Self {
        self.recip()
    }
    fn kernel_of(m: &[Vec<Self>], ncols: usize, _proto: &Self) -> Vec<Vec<Self>> {
        super::linalg::kernel_rational(m, ncols)
    }
}

/// Residue ring `Z/p^M` with `p^M < 2^63`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResCtx {
    pub p: u64,
    pub m: u32,
    pub q: u64,
}

impl ResCtx {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        let mut q: u64 = 1;
        for _ in 0..m {
            q = q
                .checked_mul(p)
                .filter(|&x| x < (1u64 << 62))
                .ok_or_else(|| MtError::PrecisionInsufficient(format!("{p}^{m} exceeds 2^62")))?;
        }
        Ok(ResCtx { p, m, q })
    }

    /// Largest `M` whose modulus fits the residue representation.
    pub fn max_precision(p: u64) -> u32 {
        let mut m = 0;
        let mut q: u64 = 1;
        while let Some(x) = q.checked_mul(p) {
            if x >= (1u64 << 62) {
                break;
            }
            q = x;
            m += 1;
        }
        m
    }

    pub fn reduce_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.q)).to_u64().unwrap()
    }

    pub fn reduce_rat(&self, x: &BigRational) -> Result<u64> {
        let d = self.reduce_int(x.denom());
        if d.is_multiple_of(self.p) {
            return Err(MtError::PrecisionInsufficient(format!(
                "{x} is not p-integral for p = {}",
                self.p
            )));
        }
        let n = self.reduce_int(x.numer());
        Ok(mulmod(n, invmod(d, self.q), self.q))
    }

    pub fn elem(&self, v: u64) -> ZpRes {
        ZpRes { v: v % self.q, ctx: *self }
    }
}

pub fn mulmod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u64, q: u64) -> u64 {
    let mut r = 1 % q;
    a %= q;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, q);
        }
        a = mulmod(a, a, q);
        e >>= 1;
    }
    r
}

/// Inverse of a unit modulo `q`.
pub fn invmod(a: u64, q: u64) -> u64 {
    let (mut r0, mut r1) = (q as i128, (a % q) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let t = r0 / r1;
        (r0, r1) = (r1, r0 - t * r1);
        (s0, s1) = (s1, s0 - t * s1);
    }
    assert_eq!(r0, 1, "{a} is not invertible modulo {q}");
    s0.rem_euclid(q as i128) as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZpRes {
    pub v: u64,
    pub ctx: ResCtx,
}

impl Coeff for ZpRes {
    fn zero_like(&self) -> Self {
        ZpRes { v: 0, ctx: self.ctx }
    }
    fn one_like(&self) -> Self {
        ZpRes { v: 1 % self.ctx.q, ctx: self.ctx }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, o: &Self) -> Self {
        let s = self.v + o.v;
        ZpRes { v: if s >= self.ctx.q { s - self.ctx.q } else { s }, ctx: self.ctx }
    }
    fn sub(&self, o: &Self) -> Self {
        let v = if self.v >= o.v { self.v - o.v } else { self.v + self.ctx.q - o.v };
        ZpRes { v, ctx: self.ctx }
    }
    fn mul(&self, o: &Self) -> Self {
        ZpRes { v: mulmod(self.v, o.v, self.ctx.q), ctx: self.ctx }
    }
    fn neg(&self) -> Self {
        ZpRes { v: if self.v == 0 { 0 } else { self.ctx.q - self.v }, ctx: self.ctx }
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        ZpRes { v: self.ctx.reduce_int(n), ctx: self.ctx }
    }
    fn ordp(&self, p: u64) -> Val {
        debug_assert_eq!(p, self.ctx.p);
        match ordp_u64(self.v, self.ctx.p) {
            Some(v) => Val::Finite(v),
            None => Val::AtLeast(self.ctx.m as i64),
        }
    }
    fn precision(&self) -> Option<u32> {
        Some(self.ctx.m)
    }
    fn try_inv(&self) -> Option<Self> {
        if self.v.is_multiple_of(self.ctx.p) {
            None
        } else {
            Some(ZpRes { v: invmod(self.v, self.ctx.q), ctx: self.ctx })
        }
    }
}

/// The unramified ring `Z_q = Z_p[y]/(g)` modulo `p^M`, `g` monic of degree `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZqCtx {
    pub res: ResCtx,
    /// Monic modulus, constant term first, length `f + 1`.
    pub g: Vec<u64>,
}

impl ZqCtx {
    pub fn degree(&self) -> usize {
        self.g.len() - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZqRes {
    pub c: Vec<u64>,
    pub ctx: Arc<ZqCtx>,
}

impl ZqRes {
    pub fn from_coords(ctx: &Arc<ZqCtx>, mut c: Vec<u64>) -> Self {
        let f = ctx.degree();
        c.resize(f, 0);
        for x in c.iter_mut() {
            *x %= ctx.res.q;
        }
        ZqRes { c, ctx: ctx.clone() }
    }

    pub fn scalar(ctx: &Arc<ZqCtx>, v: u64) -> Self {
        let mut c = vec![0; ctx.degree()];
        c[0] = v % ctx.res.q;
        ZqRes { c, ctx: ctx.clone() }
    }
}

impl Coeff for ZqRes {
    fn zero_like(&self) -> Self {
        ZqRes { c: vec![0; self.c.len()], ctx: self.ctx.clone() }
    }
    fn one_like(&self) -> Self {
        ZqRes::scalar(&self.ctx, 1)
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }
    fn add(&self, o: &Self) -> Self {
        let q = self.ctx.res.q;
        let c = self.c.iter().zip(&o.c).map(|(a, b)| (a + b) % q).collect();
        ZqRes { c, ctx: self.ctx.clone() }
    }
    fn sub(&self, o: &Self) -> Self {
        let q = self.ctx.res.q;
        let c = self.c.iter().zip(&o.c).map(|(a, b)| (a + q - b) % q).collect();
        ZqRes { c, ctx: self.ctx.clone() }
    }
    fn mul(&self, o: &Self) -> Self {
        let q = self.ctx.res.q;
        let f = self.c.len();
        let mut prod = vec![0u64; 2 * f];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mulmod(a, b, q)) % q;
            }
        }
        // reduce by the monic modulus from the top
        let g = &self.ctx.g;
        for d in (f..2 * f).rev() {
            let top = prod[d];
            if top == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &gi) in g.iter().enumerate().take(f) {
                let idx = d - f + i;
                prod[idx] = (prod[idx] + q - mulmod(top, gi, q)) % q;
            }
        }
        prod.truncate(f);
        ZqRes { c: prod, ctx: self.ctx.clone() }
    }
    fn neg(&self) -> Self {
        let q = self.ctx.res.q;
        let c = self.c.iter().map(|&a| (q - a) % q).collect();
        ZqRes { c, ctx: self.ctx.clone() }
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        ZqRes::scalar(&self.ctx, self.ctx.res.reduce_int(n))
    }
    fn ordp(&self, p: u64) -> Val {
        debug_assert_eq!(p, self.ctx.res.p);
        match self.c.iter().filter_map(|&x| ordp_u64(x, p)).min() {
            Some(v) => Val::Finite(v),
            None => Val::AtLeast(self.ctx.res.m as i64),
        }
    }
    fn precision(&self) -> Option<u32> {
        Some(self.ctx.res.m)
    }
    fn try_inv(&self) -> Option<Self> {
        // inverse modulo p from the finite field, then Newton steps x <- x(2 - u x)
        let p = self.ctx.res.p;
        if self.c.iter().all(|&x| x % p == 0) {
            return None;
        }
        let f = self.ctx.degree() as u32;
        let order = p.pow(f) - 1;
        let mut x = self.one_like();
        let mut base = self.clone();
        let mut e = order - 1;
        while e > 0 {
            if e & 1 == 1 {
                x = x.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        let two = ZqRes::scalar(&self.ctx, 2);
        for _ in 0..(self.ctx.res.m as usize + 1).next_power_of_two().trailing_zeros() + 1 {
            x = x.mul(&two.sub(&self.mul(&x)));
        }
        Some(x)
    }
}

/// Least common multiple of the denominators and gcd of the numerators of a rational vector.
pub fn content(v: &[BigRational]) -> (BigInt, BigInt) {
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let mut g = BigInt::zero();
    for x in v {
        let n = (x * BigRational::from_integer(l.clone())).to_integer();
        g = g.gcd(&n);
    }
    (l, g.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_ops() {
        let c = ResCtx::new(3, 4).unwrap();
        let a = c.elem(80);
        assert_eq!(a.add(&c.elem(2)).v, 1);
        assert_eq!(a.neg().v, 1);
        assert_eq!(a.ordp(3), Val::Finite(0));
        assert_eq!(c.elem(27).ordp(3), Val::Finite(3));
        assert_eq!(c.elem(0).ordp(3), Val::AtLeast(4));
        assert_eq!(mulmod(invmod(2, 81), 2, 81), 1);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(mulmod(c.reduce_rat(&half).unwrap(), 2, 81), 1);
        assert!(c.reduce_rat(&BigRational::new(1.into(), 3.into())).is_err());
    }

    #[test]
    fn zq_mul() {
        // Z_9 = Z_3[y]/(y^2 + 1), y^2 = -1
        let ctx = Arc::new(ZqCtx { res: ResCtx::new(3, 3).unwrap(), g: vec![1, 0, 1] });
        let y = ZqRes::from_coords(&ctx, vec![0, 1]);
        let y2 = y.mul(&y);
        assert_eq!(y2.c, vec![26, 0]);
        assert_eq!(ZqRes::from_coords(&ctx, vec![3, 9]).ordp(3), Val::Finite(1));
    }
}
