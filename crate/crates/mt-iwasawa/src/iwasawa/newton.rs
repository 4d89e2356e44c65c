use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::division::remainder_quotient;
use super::series::invariants;
use crate::arith::{Coeff, Poly, PrimeContext};
use crate::error::{MtError, Result};

/// Lower convex hull of the points `(i, ord_p a_i)`, `i <= upto`, zero coefficients omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolygon {
    pub vertices: Vec<(i64, i64)>,
}

impl NewtonPolygon {
    /// Height of the polygon above an integer abscissa inside its range.
    pub fn height(&self, x: i64) -> Option<BigRational> {
        let vs = &self.vertices;
        if vs.is_empty() || x < vs[0].0 || x > vs.last().unwrap().0 {
            return None;
        }
        for w in vs.windows(2) {
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            if x >= x0 && x <= x1 {
                let num = y0 * (x1 - x) + y1 * (x - x0);
                return Some(BigRational::new(num.into(), (x1 - x0).into()));
            }
        }
        Some(BigRational::from_integer(vs[0].1.into()))
    }
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i128 {
    (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
}

pub fn newton_polygon<C: Coeff>(f: &Poly<C>, upto: usize, p: u64) -> NewtonPolygon {
    let pts: Vec<(i64, i64)> = f
        .coeffs()
        .iter()
        .enumerate()
        .take(upto + 1)
        .filter_map(|(i, c)| c.ordp(p).finite().map(|v| (i as i64, v)))
        .collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for pt in pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0 {
            hull.pop();
        }
        hull.push(pt);
    }
    NewtonPolygon { vertices: hull }
}

/// The piecewise-linear lower boundary `f_F` of the region `B_n(F)` at an integer abscissa.
pub fn f_bound(ctx: &PrimeContext, n: u32, lambda: u64, mu: i64, x: i64) -> BigRational {
    let pn = ctx.pn(n);
    let (r, q) = remainder_quotient(lambda - pn, ctx, n);
    let (r, q, tn) = (r as i64, q as i64, ctx.t(n) as i64);
    let pn1 = ctx.pn(n - 1) as i64;
    let lam = lambda as i64;
    let int = |v: i64| BigRational::from_integer(v.into());
    if q == 0 {
        let b = r + pn1 + 1;
        if x <= b {
            int(mu + 2) - BigRational::new(x.into(), b.into())
        } else {
            int(mu + 1)
        }
    } else {
        let a = r + pn1;
        let c = lam - tn + 1;
        if x <= a {
            int(mu + 2 + q)
        } else if x <= c {
            int(mu + 2 + q) - BigRational::new(((q + 1) * (x - a)).into(), (q * tn + 1).into())
        } else {
            int(mu + 1)
        }
    }
}

/// Whether the Newton polygon of the degree `lambda - 1` truncation lies in `B_n(F)`.
pub fn b_region_contains<C: Coeff>(f: &Poly<C>, ctx: &PrimeContext, n: u32) -> Result<bool> {
    if ctx.e != 1 {
        return Err(MtError::RamifiedContext);
    }
    let inv = invariants(f, ctx.p)?;
    if inv.lambda < ctx.pn(n) {
        return Ok(false);
    }
    if inv.lambda == 0 {
        return Ok(true);
    }
    let np = newton_polygon(f, inv.lambda as usize - 1, ctx.p);
    if np.vertices.is_empty() {
        return Ok(true);
    }
    let (lo, hi) = (np.vertices[0].0, np.vertices.last().unwrap().0);
    for x in lo..=hi {
        let h = np.height(x).unwrap();
        if h < f_bound(ctx, n, inv.lambda, inv.mu, x) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn polygons() {
        let f: Poly<BigRational> = Poly::from_ints_q(&[3, 1]);
        assert_eq!(newton_polygon(&f, 1, 3).vertices, vec![(0, 1), (1, 0)]);
        let g: Poly<BigRational> = Poly::from_ints_q(&[0, 9, 0, 1]);
        assert_eq!(newton_polygon(&g, 2, 3).vertices, vec![(1, 2)]);
        let h: Poly<BigRational> = Poly::from_ints_q(&[0, 3, 0, 1]);
        assert_eq!(newton_polygon(&h, 2, 3).vertices, vec![(1, 1)]);
        let ctx = PrimeContext::new(3).unwrap();
        assert!(b_region_contains(&g, &ctx, 1).unwrap());
        assert!(!b_region_contains(&h, &ctx, 1).unwrap());
        assert_eq!(f_bound(&ctx, 1, 3, 0, 1), BigRational::new(3.into(), 2.into()));
        let t = Poly::monomial(rat(1), 9);
        assert!(b_region_contains(&t, &ctx, 2).unwrap());
    }
}
