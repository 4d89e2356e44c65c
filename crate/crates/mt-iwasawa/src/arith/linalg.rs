//! Dense and sparse exact linear algebra over a field.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::coeff::Field;

/// Row-reduce in place; returns the pivot columns.
pub fn rref<F: Field>(m: &mut [Vec<F>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(i) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, i);
        let inv = m[r][c].inv();
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x = x.sub(&f.mul(y));
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &[Vec<F>], ncols: usize) -> usize {
    let mut a = m.to_vec();
    rref(&mut a, ncols).len()
}

/// Basis of `{x : M x = 0}`.
pub fn kernel<F: Field>(m: &[Vec<F>], ncols: usize, proto: &F) -> Vec<Vec<F>> {
    F::kernel_of(m, ncols, proto)
}

/// Plain Gauss-Jordan kernel, valid over any field.
pub fn kernel_generic<F: Field>(m: &[Vec<F>], ncols: usize, proto: &F) -> Vec<Vec<F>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a, ncols);
    let zero = proto.zero_like();
    let one = proto.one_like();
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![zero.clone(); ncols];
        v[free] = one.clone();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = a[r][free].neg();
        }
        basis.push(v);
    }
    basis
}

/// Kernel over `Q` by fraction-free elimination on primitive integer rows,
/// which avoids the gcd work of rational arithmetic on every entry.
pub fn kernel_rational(m: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let mut rows: Vec<Vec<BigInt>> = m.iter().filter_map(|r| primitive_row(r)).collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut next = 0;
    for c in 0..ncols {
        // pivot with the smallest nonzero entry in column c
        let Some(i) = (next..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| rows[i][c].bits())
        else {
            continue;
        };
        rows.swap(next, i);
        let piv = rows[next].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == next || row[c].is_zero() {
                continue;
            }
            let g = piv[c].gcd(&row[c]);
            let (a, b) = (&piv[c] / &g, &row[c] / &g);
            for (x, y) in row.iter_mut().zip(&piv) {
                *x = &*x * &a - y * &b;
            }
            normalize_int_row(row);
        }
        pivots.push((next, c));
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    let mut is_pivot = vec![false; ncols];
    for &(_, c) in &pivots {
        is_pivot[c] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for &(r, c) in &pivots {
                v[c] = BigRational::new(-rows[r][f].clone(), rows[r][c].clone());
            }
            v
        })
        .collect()
}

fn primitive_row(r: &[BigRational]) -> Option<Vec<BigInt>> {
    let den = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut row: Vec<BigInt> = r.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    if row.iter().all(|x| x.is_zero()) {
        return None;
    }
    normalize_int_row(&mut row);
    Some(row)
}

fn normalize_int_row(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

pub fn mat_vec<F: Field>(m: &[Vec<F>], v: &[F], proto: &F) -> Vec<F> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(proto.zero_like(), |acc, (a, b)| if a.is_zero() || b.is_zero() { acc } else { acc.add(&a.mul(b)) })
        })
        .collect()
}

pub fn mat_mul<F: Field>(a: &[Vec<F>], b: &[Vec<F>], proto: &F) -> Vec<Vec<F>> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            let mut out = vec![proto.zero_like(); n];
            for (k, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(&b[k]) {
                    if !y.is_zero() {
                        *o = o.add(&x.mul(y));
                    }
                }
            }
            out
        })
        .collect()
}

pub fn transpose<F: Clone>(m: &[Vec<F>]) -> Vec<Vec<F>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub type SparseRow<F> = BTreeMap<usize, F>;

/// Incremental echelon form of a sparse relation module. Each stored row is
/// keyed by its largest column, normalised to coefficient 1 there.
#[derive(Clone, Debug)]
pub struct SparseEchelon<F: Field> {
    rows: HashMap<usize, SparseRow<F>>,
}

impl<F: Field> Default for SparseEchelon<F> {
    fn default() -> Self {
        SparseEchelon { rows: HashMap::new() }
    }
}

impl<F: Field> SparseEchelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.rows.contains_key(&c)
    }

    /// Add a relation; returns whether it was independent of the previous ones.
    pub fn insert(&mut self, mut row: SparseRow<F>) -> bool {
        row.retain(|_, v| !v.is_zero());
        loop {
            let Some((&c, _)) = row.iter().next_back() else {
                return false;
            };
            match self.rows.get(&c) {
                Some(prow) => {
                    let f = row[&c].clone();
                    for (&k, v) in prow {
                        let e = row.entry(k).or_insert_with(|| f.zero_like());
                        *e = e.sub(&f.mul(v));
                        if e.is_zero() {
                            row.remove(&k);
                        }
                    }
                }
                None => {
                    let inv = row[&c].inv();
                    for v in row.values_mut() {
                        *v = v.mul(&inv);
                    }
                    self.rows.insert(c, row);
                    return true;
                }
            }
        }
    }

    /// Express every column in terms of the free (non-pivot) columns:
    /// returns the free column list and, for each column, its coordinates.
    pub fn free_coordinates(&self, ncols: usize, proto: &F) -> (Vec<usize>, Vec<SparseRow<F>>) {
        let free: Vec<usize> = (0..ncols).filter(|c| !self.rows.contains_key(c)).collect();
        let mut index = vec![usize::MAX; ncols];
        for (i, &c) in free.iter().enumerate() {
            index[c] = i;
        }
        let mut coords: Vec<SparseRow<F>> = vec![SparseRow::new(); ncols];
        for c in 0..ncols {
            if index[c] != usize::MAX {
                coords[c].insert(index[c], proto.one_like());
                continue;
            }
            // pivot column: x_c = -sum_{k<c} row[k] x_k, with smaller columns already resolved
            let row = &self.rows[&c];
            let mut acc: SparseRow<F> = SparseRow::new();
            for (&k, v) in row.range(..c) {
                for (&i, w) in &coords[k] {
                    let e = acc.entry(i).or_insert_with(|| proto.zero_like());
                    *e = e.sub(&v.mul(w));
                }
            }
            acc.retain(|_, v| !v.is_zero());
            coords[c] = acc;
        }
        (free, coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_frac};

    #[test]
    fn dense_kernel() {
        let m = vec![vec![rat(1), rat(2), rat(3)], vec![rat(2), rat(4), rat(6)]];
        let k = kernel(&m, 3, &rat(0));
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&m, v, &rat(0)).iter().all(|x| x == &rat(0)));
        }
    }

    #[test]
    fn integer_kernel_matches_generic() {
        // rank-deficient 4x5 matrix with fractional entries
        let m: Vec<Vec<BigRational>> = vec![
            vec![rat_frac(1, 2), rat(3), rat(0), rat(-1), rat_frac(2, 3)],
            vec![rat(1), rat(6), rat(0), rat(-2), rat_frac(4, 3)],
            vec![rat(0), rat(1), rat(5), rat(7), rat(0)],
            vec![rat_frac(1, 2), rat(4), rat(5), rat(6), rat_frac(2, 3)],
        ];
        let a = kernel_rational(&m, 5);
        let b = kernel_generic(&m, 5, &rat(0));
        assert_eq!(a.len(), b.len());
        for v in &a {
            assert!(mat_vec(&m, v, &rat(0)).iter().all(|x| x == &rat(0)));
        }
        let mut both = a.clone();
        both.extend(b);
        assert_eq!(rank(&both, 5), a.len());
    }

    #[test]
    fn sparse_coordinates() {
        let mut e: SparseEchelon<BigRational> = SparseEchelon::new();
        // x2 = x0 + x1, x1 = -x0
        e.insert([(0, rat(1)), (1, rat(1)), (2, rat(-1))].into_iter().collect());
        e.insert([(0, rat(1)), (1, rat(1))].into_iter().collect());
        assert!(!e.insert([(0, rat(2)), (1, rat(2))].into_iter().collect()));
        let (free, coords) = e.free_coordinates(3, &rat(0));
        assert_eq!(free, vec![0]);
        assert_eq!(coords[1].get(&0), Some(&rat(-1)));
        assert_eq!(coords[2].get(&0), None);
    }
}
