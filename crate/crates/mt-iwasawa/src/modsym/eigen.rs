use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use std::sync::OnceLock;

use super::p1::P1List;
use super::path::{substitute, unimodular_path, Cusp, Form};
use super::space::SymbolSpace;
use crate::arith::coeff::content;
use crate::arith::linalg::kernel;
use crate::arith::{binomial, Field, Val};
use crate::error::{MtError, Result};

/// A Hecke eigen-functional on the space of modular symbols with a fixed sign
/// under the star involution, tabulated on every Manin symbol.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EigenSymbol<F> {
    pub level: u64,
    pub weight: u32,
    pub sign: i32,
    /// `table[t][i]` is the value on `[X^i Y^(k-2-i), t]`.
    pub table: Vec<Vec<F>>,
    #[serde(skip)]
    p1: OnceLock<P1List>,
}

// the lookup list is a lazily built cache
impl<F: PartialEq> PartialEq for EigenSymbol<F> {
    fn eq(&self, o: &Self) -> bool {
        (self.level, self.weight, self.sign) == (o.level, o.weight, o.sign) && self.table == o.table
    }
}

fn images_to<F: Field>(m: &[Vec<BigRational>], f: &impl Fn(&BigRational) -> F) -> Vec<Vec<F>> {
    m.iter().map(|r| r.iter().map(f).collect()).collect()
}

/// `W_y[c] = sum_r images[c][r] B_y[r]`: the basis functionals composed with the operator.
fn compose<F: Field>(basis: &[Vec<F>], images: &[Vec<F>], proto: &F) -> Vec<Vec<F>> {
    basis
        .iter()
        .map(|b| {
            images
                .iter()
                .map(|img| {
                    let mut acc = proto.zero_like();
                    for (x, w) in img.iter().zip(b) {
                        if !x.is_zero() && !w.is_zero() {
                            acc = acc.add(&x.mul(w));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn eigen_kernel<F: Field>(basis: &[Vec<F>], composed: &[Vec<F>], a: &F, proto: &F) -> Vec<Vec<F>> {
    let d = basis.first().map_or(0, |b| b.len());
    let r = basis.len();
    // M[c][y] = W_y[c] - a B_y[c]
    let m: Vec<Vec<F>> = (0..d).map(|c| (0..r).map(|y| composed[y][c].sub(&a.mul(&basis[y][c]))).collect()).collect();
    kernel(&m, r, proto)
        .into_iter()
        .map(|y| {
            let mut v = vec![proto.zero_like(); d];
            for (yi, b) in y.iter().zip(basis) {
                if yi.is_zero() {
                    continue;
                }
                for (vv, bb) in v.iter_mut().zip(b) {
                    *vv = vv.add(&yi.mul(bb));
                }
            }
            v
        })
        .collect()
}

/// Basis vectors `v` (as rows) spanning `{v in span(basis) : sum_r v_r images[c][r] = a v_c}`.
pub fn refine<F: Field>(basis: &[Vec<F>], images: &[Vec<F>], a: &F, proto: &F) -> Vec<Vec<F>> {
    eigen_kernel(basis, &compose(basis, images, proto), a, proto)
}

/// [`refine`] for several candidate eigenvalues at once; only nonzero pieces are returned.
pub fn split<F: Field>(basis: &[Vec<F>], images: &[Vec<F>], candidates: &[F], proto: &F) -> Vec<(F, Vec<Vec<F>>)> {
    let w = compose(basis, images, proto);
    candidates
        .iter()
        .filter_map(|a| {
            let b = eigen_kernel(basis, &w, a, proto);
            (!b.is_empty()).then(|| (a.clone(), b))
        })
        .collect()
}

/// Intersect the `sign`-eigenspace of the involution with the given Hecke eigenvalues.
/// Returns the remaining functional space (each vector gives values on free generators).
pub fn eigenspace<F: Field>(
    space: &SymbolSpace,
    eigen: &[(u64, F)],
    sign: i32,
    proto: &F,
    lift: &impl Fn(&BigRational) -> F,
) -> Result<Vec<Vec<F>>> {
    let d = space.dim();
    let ident: Vec<Vec<F>> = (0..d)
        .map(|i| (0..d).map(|j| if i == j { proto.one_like() } else { proto.zero_like() }).collect())
        .collect();
    let s = proto.from_int_like(&BigInt::from(sign));
    let mut basis = refine(&ident, &images_to(&space.star_involution(), lift), &s, proto);
    for (l, a) in eigen {
        if basis.is_empty() {
            break;
        }
        let t = images_to(&space.hecke(*l)?, lift);
        basis = refine(&basis, &t, a, proto);
    }
    Ok(basis)
}

impl<F: Field> EigenSymbol<F> {
    /// Cut out a one-dimensional eigenspace; values are not yet normalised.
    pub fn from_eigenvalues(
        space: &SymbolSpace,
        eigen: &[(u64, F)],
        sign: i32,
        proto: &F,
        lift: &impl Fn(&BigRational) -> F,
    ) -> Result<Self> {
        let basis = eigenspace(space, eigen, sign, proto, lift)?;
        match basis.len() {
            0 => return Err(MtError::EmptyEigenspace),
            1 => {}
            n => return Err(MtError::AmbiguousEigenspace(n)),
        }
        let v = &basis[0];
        let g = space.degree();
        let table = (0..space.p1().len())
            .map(|t| {
                (0..=g)
                    .map(|i| {
                        let mut acc = proto.zero_like();
                        for (&k, c) in space.manin_coords(t, i) {
                            if !v[k].is_zero() {
                                acc = acc.add(&lift(c).mul(&v[k]));
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let p1 = OnceLock::new();
        let _ = p1.set(space.p1().clone());
        Ok(EigenSymbol { level: space.level, weight: space.weight, sign, table, p1 })
    }

    pub fn degree(&self) -> usize {
        (self.weight - 2) as usize
    }

    fn p1(&self) -> &P1List {
        self.p1.get_or_init(|| P1List::new(self.level))
    }

    fn index(&self, c: &BigInt, d: &BigInt) -> usize {
        use num_integer::Integer;
        let n = BigInt::from(self.level);
        let r = |x: &BigInt| i64::try_from(x.mod_floor(&n)).expect("residue fits");
        self.p1().index(r(c), r(d))
    }

    /// Value on the Manin symbol `[P, t]`.
    pub fn manin_value(&self, p: &[BigInt], t: usize) -> F {
        let row = &self.table[t];
        let mut acc = row[0].zero_like();
        for (c, v) in p.iter().zip(row) {
            if !c.is_zero() && !v.is_zero() {
                acc = acc.add(&v.from_int_like(c).mul(v));
            }
        }
        acc
    }

    /// Value on `Q{0, beta}`.
    pub fn from_zero(&self, q: &[BigInt], beta: &Cusp) -> F {
        let mut acc = self.table[0][0].zero_like();
        for g in unimodular_path(beta) {
            let t = self.index(&g[2], &g[3]);
            acc = acc.add(&self.manin_value(&substitute(q, &g), t));
        }
        acc
    }

    /// Value on `Q{alpha, beta}`.
    pub fn value(&self, q: &[BigInt], alpha: &Cusp, beta: &Cusp) -> F {
        self.from_zero(q, beta).sub(&self.from_zero(q, alpha))
    }

    /// `[a/m]_j = C(k-2, j) phi((mX - aY)^j Y^(k-2-j) {a/m, inf})` for `j = 0..=k-2`.
    pub fn brackets(&self, a: i64, m: i64) -> Vec<F> {
        let g = self.degree();
        let cusp = Cusp::new(a.into(), m.into());
        let path = unimodular_path(&cusp);
        let t_inf = self.p1().index(0, 1);
        let mut out = Vec::with_capacity(g + 1);
        let mut lin_pow: Form = vec![BigInt::one()];
        for j in 0..=g {
            // (mX - aY)^j Y^(g-j) as a degree-g form
            let mut q = vec![BigInt::zero(); g + 1];
            for (i, c) in lin_pow.iter().enumerate() {
                q[i] = c.clone();
            }
            let mut val = self.manin_value(&q, t_inf);
            for gm in &path {
                let t = self.index(&gm[2], &gm[3]);
                val = val.sub(&self.manin_value(&substitute(&q, gm), t));
            }
            out.push(val.mul(&val.from_int_like(&binomial(g as u64, j as u64))));
            // multiply by (mX - aY)
            let mut next = vec![BigInt::zero(); lin_pow.len() + 1];
            for (i, c) in lin_pow.iter().enumerate() {
                next[i + 1] += c * BigInt::from(m);
                next[i] -= c * BigInt::from(a);
            }
            lin_pow = next;
        }
        out
    }

    /// The quantities whose least valuation defines the cohomological normalisation:
    /// `C(k-2, j) phi([(aX+bY)^j (cX+dY)^(k-2-j), t])` over cosets `t` and `j`.
    pub fn generator_values(&self, lifts: &[[i64; 4]]) -> Vec<F> {
        let g = self.degree();
        let mut out = Vec::new();
        for (t, m) in lifts.iter().enumerate() {
            for j in 0..=g {
                let mut q = vec![BigInt::zero(); g + 1];
                q[j] = BigInt::one();
                let f = substitute(&q, &m.map(BigInt::from));
                let v = self.manin_value(&f, t);
                out.push(v.mul(&v.from_int_like(&binomial(g as u64, j as u64))));
            }
        }
        out
    }

    pub fn scale(&mut self, s: &F) {
        for row in &mut self.table {
            for v in row.iter_mut() {
                *v = v.mul(s);
            }
        }
    }

    /// Least valuation over the normalisation quantities.
    pub fn min_valuation(&self, lifts: &[[i64; 4]], ordp: &impl Fn(&F) -> Val) -> Option<i64> {
        self.generator_values(lifts).iter().filter_map(|v| ordp(v).finite()).min()
    }
}

impl EigenSymbol<BigRational> {
    /// Scale to a primitive integral vector of normalisation quantities; the least
    /// `p`-adic valuation is then 0 for every prime. Returns the scale used.
    pub fn normalize(&mut self, lifts: &[[i64; 4]]) -> BigRational {
        let vals = self.generator_values(lifts);
        let (den, num) = content(&vals);
        if num.is_zero() {
            return BigRational::one();
        }
        let s = BigRational::new(den, num);
        self.scale(&s);
        s
    }
}
