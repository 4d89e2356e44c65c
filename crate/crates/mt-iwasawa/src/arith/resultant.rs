use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::coeff::content;
use super::poly::Poly;
use super::valuation::{ordp_int, ordp_rat};
use crate::error::{MtError, Result};

/// Determinant of an integer matrix by fraction-free (Bareiss) elimination.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// `Res(A, B) = prod B(alpha)` over the roots of the monic polynomial `A`.
pub fn resultant(a: &Poly<BigRational>, b: &Poly<BigRational>) -> BigRational {
    let d = a.degree().expect("resultant with zero polynomial");
    if d == 0 {
        return BigRational::one();
    }
    let b = b.rem_monic(a);
    if b.is_zero() {
        return BigRational::zero();
    }
    let (l, _) = content(b.coeffs());
    let lq = BigRational::from_integer(l.clone());
    let b_int = b.scale(&lq);
    // columns: T^i * B mod A
    let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(d);
    let mut cur = b_int;
    let t = Poly::new(vec![BigRational::zero(), BigRational::one()]);
    for _ in 0..d {
        let col: Vec<BigInt> = (0..d)
            .map(|i| cur.coeff(i).map(|c| c.to_integer()).unwrap_or_default())
            .collect();
        cols.push(col);
        cur = cur.mul(&t).rem_monic(a);
    }
    let det = bareiss_det(cols);
    BigRational::new(det, num_traits::pow(l, d))
}

/// `ord_p Res(A, B)`; divide by `deg A` for the valuation of `B` at a root of `A`
/// when all roots of `A` are conjugate.
pub fn resultant_valuation(a: &Poly<BigRational>, b: &Poly<BigRational>, p: u64) -> Result<i64> {
    let d = a.degree().expect("resultant with zero polynomial");
    if d == 0 {
        return Ok(0);
    }
    let b = b.rem_monic(a);
    if b.is_zero() {
        return Err(MtError::ZeroResultant);
    }
    if is_eisenstein(a, p) {
        // Res = N(b(pi)) for a uniformizer pi; the terms c_i pi^i have distinct orders.
        let vals = b.valuations(p);
        let v = vals
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.finite().map(|x| x * d as i64 + i as i64))
            .min()
            .expect("nonzero remainder");
        return Ok(v);
    }
    let (l, _) = content(b.coeffs());
    let lv = ordp_int(&l, p).finite().expect("nonzero content") * d as i64;
    let b_int = b.scale(&BigRational::from_integer(l));
    let cols = multiplication_matrix(a, &b_int, d);
    let mut prec = 64u32;
    loop {
        if let Some(v) = ordp_det_mod(&cols, p, prec) {
            return Ok(v + lv);
        }
        if prec > 1 << 16 {
            // A nonzero resultant this deep is not expected; fall back to the exact determinant.
            let r = resultant(a, &b);
            return ordp_rat(&r, p).finite().ok_or(MtError::ZeroResultant);
        }
        prec *= 2;
    }
}

/// Monic, every lower coefficient divisible by `p`, constant term exactly once.
pub fn is_eisenstein(a: &Poly<BigRational>, p: u64) -> bool {
    let Some(d) = a.degree() else { return false };
    if d == 0 || !a.coeff(d).is_some_and(|c| c.is_one()) {
        return false;
    }
    let cs = a.coeffs();
    cs[..d].iter().all(|c| ordp_rat(c, p).finite().is_some_and(|v| v >= 1) || c.is_zero())
        && ordp_rat(&cs[0], p).finite() == Some(1)
}

fn multiplication_matrix(a: &Poly<BigRational>, b_int: &Poly<BigRational>, d: usize) -> Vec<Vec<BigInt>> {
    let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(d);
    let mut cur = b_int.clone();
    let t = Poly::new(vec![BigRational::zero(), BigRational::one()]);
    for _ in 0..d {
        cols.push((0..d).map(|i| cur.coeff(i).map(|c| c.to_integer()).unwrap_or_default()).collect());
        cur = cur.mul(&t).rem_monic(a);
    }
    cols
}

/// `ord_p det M` by elimination over `Z/p^prec` with minimal-valuation pivots.
/// `None` when the precision runs out before the determinant is pinned down.
#[allow(clippy::needless_range_loop)]
pub fn ordp_det_mod(m: &[Vec<BigInt>], p: u64, prec: u32) -> Option<i64> {
    let n = m.len();
    let modulus = num_traits::pow(BigInt::from(p), prec as usize);
    let red = |x: &BigInt| x.mod_floor(&modulus);
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(red).collect()).collect();
    let val = |x: &BigInt| -> i64 { ordp_int(x, p).finite().unwrap_or(i64::MAX) };
    let mut total = 0i64;
    for k in 0..n {
        let mut best: Option<(i64, usize, usize)> = None;
        for i in k..n {
            for j in k..n {
                let v = val(&a[i][j]);
                if v < best.map_or(i64::MAX, |b| b.0) {
                    best = Some((v, i, j));
                    if v == 0 {
                        break;
                    }
                }
            }
            if best.is_some_and(|b| b.0 == 0) {
                break;
            }
        }
        let (v, bi, bj) = best?;
        if v >= prec as i64 {
            return None;
        }
        a.swap(k, bi);
        for row in a.iter_mut() {
            row.swap(k, bj);
        }
        total += v;
        let pv = num_traits::pow(BigInt::from(p), v as usize);
        let unit = &a[k][k] / &pv;
        let inv = unit.extended_gcd(&modulus).x.mod_floor(&modulus);
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            if row[k].is_zero() {
                continue;
            }
            let f = (&row[k] / &pv * &inv).mod_floor(&modulus);
            for j in k + 1..n {
                if !pivot_row[j].is_zero() {
                    row[j] = (&row[j] - &f * &pivot_row[j]).mod_floor(&modulus);
                }
            }
            row[k] = BigInt::zero();
        }
    }
    // Entries are only known modulo p^prec; a valuation that large is unreliable.
    if total >= prec as i64 {
        return None;
    }
    Some(total)
}

pub fn ordp_det(m: Vec<Vec<BigInt>>, p: u64) -> Option<i64> {
    ordp_int(&bareiss_det(m), p).finite()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_resultants() {
        let a = Poly::from_ints_q(&[3, 3, 1]);
        let t = Poly::from_ints_q(&[0, 1]);
        assert_eq!(resultant(&a, &t), BigRational::from_integer(3.into()));
        assert_eq!(resultant_valuation(&a, &t, 3).unwrap(), 1);
        let lin = Poly::from_ints_q(&[-1, 1]);
        let b = Poly::from_ints_q(&[5, 0, 2]);
        assert_eq!(resultant(&lin, &b), BigRational::from_integer(7.into()));
        assert!(resultant_valuation(&lin, &Poly::from_ints_q(&[-1, 1]), 3).is_err());
        let phi = Poly::from_ints_q(&[3, 3, 1]);
        let f = Poly::from_ints_q(&[9, -2, 4, 7, 1]);
        assert_eq!(
            resultant_valuation(&phi, &f, 3).unwrap(),
            ordp_rat(&resultant(&phi, &f), 3).finite().unwrap()
        );
        let g = Poly::from_ints_q(&[6, 3, 0, 1]);
        assert!(is_eisenstein(&g, 3) && !is_eisenstein(&f, 3));
        let h = Poly::from_ints_q(&[5, -4, 11, 2, 9, 1]);
        assert_eq!(resultant_valuation(&g, &h, 3).unwrap(), ordp_rat(&resultant(&g, &h), 3).finite().unwrap());
        let h2 = Poly::from_ints_q(&[18, 27, 3, 0, 1]);
        assert_eq!(resultant_valuation(&g, &h2, 3).unwrap(), ordp_rat(&resultant(&g, &h2), 3).finite().unwrap());
        assert_eq!(resultant_valuation(&Poly::from_ints_q(&[1, 0, 1]), &Poly::from_ints_q(&[3, 6]), 3).unwrap(), 2);
        let m = vec![vec![BigInt::from(9), BigInt::from(3)], vec![BigInt::from(6), BigInt::from(27)]];
        assert_eq!(ordp_det_mod(&m, 3, 20), ordp_int(&bareiss_det(m.clone()), 3).finite());
        assert_eq!(
            bareiss_det(vec![vec![2.into(), 1.into()], vec![1.into(), 3.into()]]),
            BigInt::from(5)
        );
    }
}
