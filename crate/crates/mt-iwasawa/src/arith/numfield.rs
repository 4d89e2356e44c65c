//! Number fields in a power basis and their completions at unramified primes.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::coeff::{invmod, mulmod, Coeff, Field, ResCtx, ZqCtx, ZqRes};
use super::valuation::{ordp_rat, Val};
use crate::error::{MtError, Result};

/// `Q[x]/(f)` for a monic integer polynomial `f` (constant term first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    pub poly: Vec<BigInt>,
}

impl NumberField {
    pub fn new(poly: Vec<BigInt>) -> Result<Arc<Self>> {
        if poly.len() < 2 || poly.last() != Some(&BigInt::one()) {
            return Err(MtError::SchemaError("field polynomial must be monic of degree >= 1".into()));
        }
        Ok(Arc::new(NumberField { poly }))
    }

    pub fn rationals() -> Arc<Self> {
        Arc::new(NumberField { poly: vec![BigInt::zero(), BigInt::one()] })
    }

    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NfElem {
    pub coords: Vec<BigRational>,
    pub field: Arc<NumberField>,
}

impl NfElem {
    pub fn from_coords(field: &Arc<NumberField>, mut coords: Vec<BigRational>) -> Self {
        let d = field.degree();
        if coords.len() > d {
            let e = NfElem { coords: vec![BigRational::zero(); d], field: field.clone() };
            return e.reduce_from(coords);
        }
        coords.resize(d, BigRational::zero());
        NfElem { coords, field: field.clone() }
    }

    pub fn from_rational(field: &Arc<NumberField>, x: BigRational) -> Self {
        let mut c = vec![BigRational::zero(); field.degree()];
        c[0] = x;
        NfElem { coords: c, field: field.clone() }
    }

    /// The generator `alpha` of the power basis.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::from_coords(field, vec![BigRational::zero(), BigRational::one()])
    }

    fn reduce_from(&self, mut v: Vec<BigRational>) -> Self {
        let d = self.field.degree();
        let f = &self.field.poly;
        while v.len() > d {
            let top = v.pop().unwrap();
            if Zero::is_zero(&top) {
                continue;
            }
            let base = v.len() - d;
            for (i, fi) in f.iter().enumerate().take(d) {
                v[base + i] -= &top * BigRational::from_integer(fi.clone());
            }
        }
        v.resize(d, BigRational::zero());
        NfElem { coords: v, field: self.field.clone() }
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }
}

impl Coeff for NfElem {
    fn zero_like(&self) -> Self {
        NfElem { coords: vec![BigRational::zero(); self.coords.len()], field: self.field.clone() }
    }
    fn one_like(&self) -> Self {
        NfElem::from_rational(&self.field, BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
    fn add(&self, o: &Self) -> Self {
        let c = self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect();
        NfElem { coords: c, field: self.field.clone() }
    }
    fn sub(&self, o: &Self) -> Self {
        let c = self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect();
        NfElem { coords: c, field: self.field.clone() }
    }
    fn mul(&self, o: &Self) -> Self {
        let d = self.coords.len();
        let mut v = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in o.coords.iter().enumerate() {
                if !Zero::is_zero(b) {
                    v[i + j] += a * b;
                }
            }
        }
        self.reduce_from(v)
    }
    fn neg(&self) -> Self {
        NfElem { coords: self.coords.iter().map(|c| -c).collect(), field: self.field.clone() }
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        NfElem::from_rational(&self.field, BigRational::from_integer(n.clone()))
    }
    /// Valuation of the rational part only; use a [`PrimeEmbedding`] for the
    /// valuation at a chosen prime above p.
    fn ordp(&self, p: u64) -> Val {
        match self.as_rational() {
            Some(x) => ordp_rat(&x, p),
            None => panic!("ordp of a non-rational number field element needs a prime embedding"),
        }
    }
    fn try_inv(&self) -> Option<Self> {
        if Coeff::is_zero(self) {
            None
        } else {
            Some(self.inv())
        }
    }
}

impl Field for NfElem {
    fn inv(&self) -> Self {
        // extended Euclid in Q[x]: find u with u * a = 1 mod f
        let f: Vec<BigRational> = self.field.poly.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let a = trim(self.coords.clone());
        let (g, u) = xgcd_q(a, f);
        assert!(g.len() == 1, "element is not invertible");
        let inv_g = g[0].recip();
        let u: Vec<BigRational> = u.into_iter().map(|c| c * &inv_g).collect();
        let z = self.zero_like();
        z.reduce_from(u)
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn poly_divrem_q(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), trim(r));
    }
    let lc_inv = b[db].recip();
    let mut q = vec![BigRational::zero(); r.len() - db];
    for d in (db..r.len()).rev() {
        let c = &r[d] * &lc_inv;
        if Zero::is_zero(&c) {
            continue;
        }
        for (i, bi) in b.iter().enumerate() {
            r[d - db + i] -= &c * bi;
        }
        q[d - db] = c;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

fn poly_mul_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    trim(v)
}

fn poly_sub_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut v = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        v[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        v[i] -= x;
    }
    trim(v)
}

/// Returns `(g, u)` with `u * a = g mod b`.
fn xgcd_q(a: Vec<BigRational>, b: Vec<BigRational>) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut r0, mut r1) = (a, b);
    let (mut u0, mut u1) = (vec![BigRational::one()], Vec::new());
    while !r1.is_empty() {
        let (q, r) = poly_divrem_q(&r0, &r1);
        let u = poly_sub_q(&u0, &poly_mul_q(&q, &u1));
        r0 = std::mem::replace(&mut r1, r);
        u0 = std::mem::replace(&mut u1, u);
    }
    (r0, u0)
}

// ---- polynomials over Z/q, constant term first ----

fn trim_u(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn mul_u(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            v[i + j] = (v[i + j] + mulmod(x, y, q)) % q;
        }
    }
    trim_u(v)
}

fn sub_u(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut v = vec![0u64; n];
    for (i, &x) in a.iter().enumerate() {
        v[i] = x % q;
    }
    for (i, &y) in b.iter().enumerate() {
        v[i] = (v[i] + q - y % q) % q;
    }
    trim_u(v)
}

/// Division by a polynomial whose leading coefficient is a unit modulo `q`.
fn divrem_u(a: &[u64], b: &[u64], q: u64) -> (Vec<u64>, Vec<u64>) {
    let b = trim_u(b.to_vec());
    let db = b.len() - 1;
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return (Vec::new(), trim_u(r));
    }
    let lc_inv = invmod(b[db], q);
    let mut quo = vec![0u64; r.len() - db];
    for d in (db..r.len()).rev() {
        let c = mulmod(r[d], lc_inv, q);
        if c == 0 {
            continue;
        }
        for (i, &bi) in b.iter().enumerate() {
            r[d - db + i] = (r[d - db + i] + q - mulmod(c, bi, q)) % q;
        }
        quo[d - db] = c;
    }
    r.truncate(db);
    (trim_u(quo), trim_u(r))
}

/// `(g, s, t)` with `s a + t b = g` over `F_p`, `g` monic.
fn xgcd_p(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (trim_u(a.to_vec()), trim_u(b.to_vec()));
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (qq, r) = divrem_u(&r0, &r1, p);
        let s = sub_u(&s0, &mul_u(&qq, &s1, p), p);
        let t = sub_u(&t0, &mul_u(&qq, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = invmod(*r0.last().unwrap(), p);
    let sc = |v: Vec<u64>| trim_u(v.into_iter().map(|x| mulmod(x, inv, p)).collect());
    (sc(r0), sc(s0), sc(t0))
}

/// A factor of the defining polynomial modulo p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorModP {
    pub coeffs: Vec<u64>,
    pub multiplicity: usize,
}

/// Monic irreducible factors of `f mod p`, sorted lexicographically by their
/// coefficient lists (constant term first, entries in `[0, p)`).
pub fn factor_mod_p(f: &[BigInt], p: u64) -> Vec<FactorModP> {
    let rc = ResCtx { p, m: 1, q: p };
    let mut rem = trim_u(f.iter().map(|c| rc.reduce_int(c)).collect());
    let mut out: Vec<FactorModP> = Vec::new();
    let mut d = 1;
    while rem.len() > 1 && 2 * d < rem.len() {
        // enumerate monic polynomials of degree d
        let total = p.pow(d as u32);
        for idx in 0..total {
            let mut g = Vec::with_capacity(d + 1);
            let mut x = idx;
            for _ in 0..d {
                g.push(x % p);
                x /= p;
            }
            g.push(1);
            let mut mult = 0;
            loop {
                let (qq, r) = divrem_u(&rem, &g, p);
                if !r.is_empty() {
                    break;
                }
                rem = qq;
                mult += 1;
            }
            if mult > 0 {
                out.push(FactorModP { coeffs: g, multiplicity: mult });
            }
        }
        d += 1;
    }
    if rem.len() > 1 {
        let inv = invmod(*rem.last().unwrap(), p);
        let g = rem.into_iter().map(|x| mulmod(x, inv, p)).collect();
        out.push(FactorModP { coeffs: g, multiplicity: 1 });
    }
    out.sort_by(|a, b| a.coeffs.cmp(&b.coeffs));
    out
}

/// Hensel lift of the simple factor `g` of `f` from `F_p` to `Z/p^M`.
pub fn hensel_lift(f: &[BigInt], g: &[u64], res: &ResCtx) -> Vec<u64> {
    let p = res.p;
    let q = res.q;
    let fq: Vec<u64> = trim_u(f.iter().map(|c| res.reduce_int(c)).collect());
    let fp: Vec<u64> = fq.iter().map(|c| c % p).collect();
    let (h0, r) = divrem_u(&trim_u(fp), g, p);
    assert!(r.is_empty(), "g does not divide f mod p");
    let (one, _s, t) = xgcd_p(g, &h0, p);
    assert_eq!(one, vec![1], "factor is not simple");
    // t * h = 1 mod g
    let mut gl = g.to_vec();
    let mut hl = h0;
    let mut pk: u64 = p;
    for _ in 1..res.m {
        let diff = sub_u(&fq, &mul_u(&gl, &hl, q), q);
        let e: Vec<u64> = diff.iter().map(|&c| (c / pk) % p).collect();
        let e = trim_u(e);
        let dg = divrem_u(&mul_u(&e, &t, p), g, p).1;
        let (dh, rr) = divrem_u(&sub_u(&e, &mul_u(&hl.iter().map(|c| c % p).collect::<Vec<_>>(), &dg, p), p), g, p);
        debug_assert!(rr.is_empty());
        let lift = |base: &[u64], d: &[u64]| {
            let mut v = base.to_vec();
            if v.len() < d.len() {
                v.resize(d.len(), 0);
            }
            for (i, &x) in d.iter().enumerate() {
                v[i] = (v[i] + mulmod(x, pk, q)) % q;
            }
            v
        };
        gl = lift(&gl, &dg);
        hl = lift(&hl, &dh);
        pk *= p;
    }
    gl
}

/// An embedding `K_f -> Z_q` at a chosen unramified prime above p.
#[derive(Clone, Debug)]
pub struct PrimeEmbedding {
    pub field: Arc<NumberField>,
    pub index: usize,
    pub factor_mod_p: Vec<u64>,
    pub zq: Arc<ZqCtx>,
}

impl PrimeEmbedding {
    pub fn new(field: &Arc<NumberField>, p: u64, m: u32, index: usize) -> Result<Self> {
        let factors = factor_mod_p(&field.poly, p);
        let fac = factors.get(index).ok_or(MtError::NoSuchPrime(index))?;
        if fac.multiplicity > 1 {
            return Err(MtError::RamifiedPrime(format!("{:?}", fac.coeffs)));
        }
        let res = ResCtx::new(p, m)?;
        let g = hensel_lift(&field.poly, &fac.coeffs, &res);
        Ok(PrimeEmbedding {
            field: field.clone(),
            index,
            factor_mod_p: fac.coeffs.clone(),
            zq: Arc::new(ZqCtx { res, g }),
        })
    }

    pub fn residue_degree(&self) -> usize {
        self.zq.degree()
    }

    /// Image of a p-integral element.
    pub fn embed(&self, x: &NfElem) -> Result<ZqRes> {
        let res = self.zq.res;
        let f = self.zq.degree();
        let mut y_pow = vec![0u64; f];
        y_pow[0] = 1;
        let ypoly = |v: &[u64]| ZqRes::from_coords(&self.zq, v.to_vec());
        let mut acc = ZqRes::from_coords(&self.zq, vec![0; f]);
        let mut cur = ypoly(&y_pow);
        let y = if f == 1 {
            // linear factor y + g0: the root is -g0
            ZqRes::scalar(&self.zq, (res.q - self.zq.g[0]) % res.q)
        } else {
            let mut v = vec![0u64; f];
            v[1] = 1;
            ypoly(&v)
        };
        for c in &x.coords {
            if !Zero::is_zero(c) {
                let r = res.reduce_rat(c)?;
                acc = acc.add(&cur.mul(&ZqRes::scalar(&self.zq, r)));
            }
            cur = cur.mul(&y);
        }
        Ok(acc)
    }

    /// Valuation of `x` at the chosen prime (exact unless `x` vanishes to precision `M`).
    pub fn ordp(&self, x: &NfElem) -> Val {
        if x.is_zero() {
            return Val::Infinite;
        }
        let p = self.zq.res.p;
        let e0 = x.coords.iter().filter_map(|c| ordp_rat(c, p).finite()).min().unwrap();
        let scale = if e0 >= 0 {
            BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(p), e0 as usize))
        } else {
            BigRational::from_integer(num_traits::pow(BigInt::from(p), (-e0) as usize))
        };
        let y: Vec<BigRational> = x.coords.iter().map(|c| c * &scale).collect();
        let img = self.embed(&NfElem::from_coords(&self.field, y)).expect("p-integral after scaling");
        match img.ordp(p) {
            Val::Finite(v) => Val::Finite(v + e0),
            Val::AtLeast(m) => Val::AtLeast(m + e0),
            Val::Infinite => Val::Infinite,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn golden() -> Arc<NumberField> {
        NumberField::new(vec![BigInt::from(-1), BigInt::from(-1), BigInt::from(1)]).unwrap()
    }

    #[test]
    fn field_ops() {
        let k = golden();
        let a = NfElem::generator(&k);
        let a2 = a.mul(&a);
        assert_eq!(a2.coords, vec![rat(1), rat(1)]);
        let inv = a.inv();
        assert!(inv.mul(&a).sub(&a.one_like()).is_zero());
    }

    #[test]
    fn golden_ratio_primes() {
        let k = golden();
        // x^2 - x - 1 = (x - 3)^2 mod 5
        assert!(matches!(PrimeEmbedding::new(&k, 5, 4, 0), Err(MtError::RamifiedPrime(_))));
        let f = factor_mod_p(&k.poly, 11);
        assert_eq!(f.len(), 2);
        let e0 = PrimeEmbedding::new(&k, 11, 3, 0).unwrap();
        let e1 = PrimeEmbedding::new(&k, 11, 3, 1).unwrap();
        let a = NfElem::generator(&k);
        let r0 = e0.embed(&a).unwrap().c[0];
        // factors sorted by coefficient list: x + 3 (root 8) before x + 7 (root 4)
        let r1 = e1.embed(&a).unwrap().c[0];
        assert_eq!(r0 % 11, 8);
        assert_eq!(r1 % 11, 4);
        for r in [r0, r1] {
            assert_eq!((mulmod(r, r, 1331) + 1331 * 2 - r - 1) % 1331, 0);
        }
        // inert: p = 2, residue degree 2
        let e2 = PrimeEmbedding::new(&k, 2, 5, 0).unwrap();
        assert_eq!(e2.residue_degree(), 2);
        let b = a.add(&a.one_like()).mul(&a);
        let lhs = e2.embed(&b).unwrap();
        let rhs = e2.embed(&a.add(&a.one_like())).unwrap().mul(&e2.embed(&a).unwrap());
        assert_eq!(lhs, rhs);
        assert_eq!(e2.ordp(&NfElem::from_rational(&k, rat(12))), Val::Finite(2));
    }
}
