//! Binary forms of fixed degree, cusps, and the continued-fraction decomposition
//! of a path `{0, beta}` into unimodular pieces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Homogeneous polynomial `sum c[i] X^i Y^(g-i)`.
pub type Form = Vec<BigInt>;

pub fn monomial(g: usize, i: usize) -> Form {
    let mut f = vec![BigInt::zero(); g + 1];
    f[i] = BigInt::one();
    f
}

fn mul_forms(a: &[BigInt], b: &[BigInt]) -> Form {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `Q(aX + bY, cX + dY)`.
pub fn substitute(q: &[BigInt], m: &[BigInt; 4]) -> Form {
    let g = q.len() - 1;
    let l1 = vec![m[1].clone(), m[0].clone()]; // b Y + a X  (index = power of X)
    let l2 = vec![m[3].clone(), m[2].clone()];
    let mut p1 = vec![vec![BigInt::one()]];
    let mut p2 = vec![vec![BigInt::one()]];
    for _ in 0..g {
        p1.push(mul_forms(p1.last().unwrap(), &l1));
        p2.push(mul_forms(p2.last().unwrap(), &l2));
    }
    let mut out = vec![BigInt::zero(); g + 1];
    for (i, c) in q.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (k, v) in mul_forms(&p1[i], &p2[g - i]).into_iter().enumerate() {
            out[k] += c * v;
        }
    }
    out
}

pub fn substitute_i64(q: &[BigInt], m: [i64; 4]) -> Form {
    substitute(q, &m.map(BigInt::from))
}

/// The left action `(gP)(X, Y) = P(dX - bY, -cX + aY)`.
pub fn act(g: &[BigInt; 4], q: &[BigInt]) -> Form {
    substitute(q, &[g[3].clone(), -&g[1], -&g[2], g[0].clone()])
}

/// A cusp `u/v` in lowest terms with `v >= 0`; `(1, 0)` is infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cusp {
    pub u: BigInt,
    pub v: BigInt,
}

impl Cusp {
    pub fn new(u: BigInt, v: BigInt) -> Self {
        let g = u.gcd(&v);
        let (mut u, mut v) = (u / &g, v / &g);
        if v.is_negative() || (v.is_zero() && u.is_negative()) {
            u = -u;
            v = -v;
        }
        Cusp { u, v }
    }

    pub fn infinity() -> Self {
        Cusp { u: BigInt::one(), v: BigInt::zero() }
    }

    pub fn is_infinity(&self) -> bool {
        self.v.is_zero()
    }

    pub fn apply(&self, g: &[BigInt; 4]) -> Self {
        Cusp::new(&g[0] * &self.u + &g[1] * &self.v, &g[2] * &self.u + &g[3] * &self.v)
    }
}

/// Matrices `g_i` in `SL_2(Z)` with `{0, u/v} = sum_i {g_i 0, g_i inf}`, built from the
/// convergents of `u/v`. The first is the identity (the piece `{0, inf}`).
pub fn unimodular_path(cusp: &Cusp) -> Vec<[BigInt; 4]> {
    let one = BigInt::one();
    let zero = BigInt::zero();
    let mut out = vec![[one.clone(), zero.clone(), zero.clone(), one.clone()]];
    if cusp.is_infinity() {
        return out;
    }
    // convergents p_i/q_i, with p_{-2}/q_{-2} = 0/1 and p_{-1}/q_{-1} = 1/0
    let (mut pm2, mut qm2) = (zero.clone(), one.clone());
    let (mut pm1, mut qm1) = (one.clone(), zero.clone());
    let (mut num, mut den) = (cusp.u.clone(), cusp.v.clone());
    let mut i: i64 = 0;
    while !den.is_zero() {
        let (a, r) = num.div_mod_floor(&den);
        let p = &a * &pm1 + &pm2;
        let q = &a * &qm1 + &qm2;
        // g_i = [(-1)^(i-1) p_i, p_{i-1}; (-1)^(i-1) q_i, q_{i-1}]
        let s = if (i - 1).rem_euclid(2) == 0 { one.clone() } else { -one.clone() };
        out.push([&s * &p, pm1.clone(), &s * &q, qm1.clone()]);
        pm2 = std::mem::replace(&mut pm1, p);
        qm2 = std::mem::replace(&mut qm1, q);
        num = std::mem::replace(&mut den, r);
        i += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn path_telescopes() {
        for (u, v) in [(3, 7), (-5, 12), (4, 1), (0, 1), (17, 729), (-1, 3)] {
            let c = Cusp::new(b(u), b(v));
            let path = unimodular_path(&c);
            let mut prev = Cusp::new(b(0), b(1));
            for g in &path {
                assert_eq!(&g[0] * &g[3] - &g[1] * &g[2], b(1));
                assert_eq!(Cusp::new(g[1].clone(), g[3].clone()), prev);
                prev = Cusp::new(g[0].clone(), g[2].clone());
            }
            assert_eq!(prev, c);
        }
    }

    #[test]
    fn action_is_left() {
        let g = [b(2), b(1), b(1), b(1)];
        let h = [b(1), b(3), b(0), b(1)];
        let q: Form = vec![b(1), b(-2), b(5)];
        let gh = [&g[0] * &h[0] + &g[1] * &h[2], &g[0] * &h[1] + &g[1] * &h[3], &g[2] * &h[0] + &g[3] * &h[2], &g[2] * &h[1] + &g[3] * &h[3]];
        assert_eq!(act(&g, &act(&h, &q)), act(&gh, &q));
    }
}
