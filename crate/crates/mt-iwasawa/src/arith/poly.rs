use num_bigint::BigInt;
use num_rational::BigRational;

use super::coeff::Coeff;
use super::valuation::Val;

/// Dense univariate polynomial, constant term first, without trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<C: Coeff> {
    coeffs: Vec<C>,
}

impl<C: Coeff> Poly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Poly::new(vec![c])
    }

    /// `c * T^d`.
    pub fn monomial(c: C, d: usize) -> Self {
        let mut v = vec![c.zero_like(); d];
        v.push(c);
        Poly::new(v)
    }

    pub fn from_ints(ints: &[BigInt], proto: &C) -> Self {
        Poly::new(ints.iter().map(|n| proto.from_int_like(n)).collect())
    }

    pub fn from_i64s(ints: &[i64], proto: &C) -> Self {
        Poly::new(ints.iter().map(|&n| proto.from_int_like(&BigInt::from(n))).collect())
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Number of stored coefficients (degree + 1, or 0).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Option<&C> {
        self.coeffs.get(i)
    }

    pub fn lead(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let (a, b) = if self.len() >= o.len() { (self, o) } else { (o, self) };
        let mut v = a.coeffs.clone();
        for (x, y) in v.iter_mut().zip(&b.coeffs) {
            *x = x.add(y);
        }
        Poly::new(v)
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let z = self.coeffs[0].zero_like();
        let mut v = vec![z; self.len() + o.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] = v[i + j].add(&a.mul(b));
                }
            }
        }
        Poly::new(v)
    }

    pub fn scale(&self, c: &C) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiply by `T^d`.
    pub fn shift(&self, d: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![self.coeffs[0].zero_like(); d];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    /// Keep only the terms of degree `< d`.
    pub fn truncate(&self, d: usize) -> Self {
        Poly::new(self.coeffs.iter().take(d).cloned().collect())
    }

    /// Quotient and remainder on division by a monic polynomial.
    pub fn div_rem_monic(&self, m: &Self) -> (Self, Self) {
        let dm = m.degree().expect("division by zero polynomial");
        debug_assert!(m.lead().unwrap() == &m.lead().unwrap().one_like());
        if self.len() <= dm {
            return (Poly::zero(), self.clone());
        }
        let mut r = self.coeffs.clone();
        let z = r[0].zero_like();
        let mut q = vec![z; r.len() - dm];
        for d in (dm..r.len()).rev() {
            let top = r[d].clone();
            if top.is_zero() {
                continue;
            }
            q[d - dm] = top.clone();
            for (i, mi) in m.coeffs.iter().enumerate() {
                if !mi.is_zero() {
                    r[d - dm + i] = r[d - dm + i].sub(&top.mul(mi));
                }
            }
        }
        r.truncate(dm);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem_monic(&self, m: &Self) -> Self {
        let dm = m.degree().expect("division by zero polynomial");
        debug_assert!(m.lead().unwrap() == &m.lead().unwrap().one_like());
        if self.len() <= dm {
            return self.clone();
        }
        let mut r = self.coeffs.clone();
        C::rem_monic_in_place(&mut r, &m.coeffs);
        Poly::new(r)
    }

    /// `F(c0 + c1 T)` by Horner's rule.
    pub fn compose_affine(&self, c0: &C, c1: &C) -> Self {
        let lin = Poly::new(vec![c0.clone(), c1.clone()]);
        let mut acc = Poly::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Poly::constant(a.clone()));
        }
        acc
    }

    /// `f(T + 1)`.
    pub fn shift_one(&self) -> Self {
        let mut cs = self.coeffs.clone();
        C::shift_one(&mut cs);
        Poly::new(cs)
    }

    pub fn eval(&self, x: &C) -> Option<C> {
        let mut it = self.coeffs.iter().rev();
        let mut acc = it.next()?.clone();
        for a in it {
            acc = acc.mul(x).add(a);
        }
        Some(acc)
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn valuations(&self, p: u64) -> Vec<Val> {
        self.coeffs.iter().map(|c| c.ordp(p)).collect()
    }
}

impl Poly<BigRational> {
    pub fn from_ints_q(ints: &[i64]) -> Self {
        Poly::new(ints.iter().map(|&n| BigRational::from_integer(n.into())).collect())
    }

    /// Whether `m` divides `self` exactly.
    pub fn divisible_by_monic(&self, m: &Self) -> bool {
        self.rem_monic(m).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    #[test]
    fn division() {
        // T^4 mod T^3 + 3T^2 + 3T = 6T^2 + 9T
        let t4 = Poly::from_ints_q(&[0, 0, 0, 0, 1]);
        let w1 = Poly::from_ints_q(&[0, 3, 3, 1]);
        let (q, r) = t4.div_rem_monic(&w1);
        assert_eq!(r, Poly::from_ints_q(&[0, 9, 6]));
        assert_eq!(q.mul(&w1).add(&r), t4);
        let half = Poly::new(vec![BigRational::new(1.into(), 2.into()), BigRational::new(5.into(), 3.into()), BigRational::zero(), BigRational::zero(), BigRational::new(7.into(), 4.into())]);
        assert_eq!(half.rem_monic(&w1), half.div_rem_monic(&w1).1);
        let w2 = Poly::new(vec![BigRational::new(1.into(), 2.into()), BigRational::one()]);
        assert_eq!(half.rem_monic(&w2), half.div_rem_monic(&w2).1);
    }

    #[test]
    fn compose() {
        // (T)^2 at 1 + T = 1 + 2T + T^2
        let f = Poly::from_ints_q(&[0, 0, 1]);
        let one = BigRational::from_integer(1.into());
        assert_eq!(f.compose_affine(&one, &one), Poly::from_ints_q(&[1, 2, 1]));
        let g = Poly::new(vec![BigRational::new(1.into(), 2.into()), BigRational::from_integer((-3).into()), BigRational::new(2.into(), 3.into()), BigRational::one()]);
        assert_eq!(g.shift_one(), g.compose_affine(&one, &one));
    }
}
