use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::p1::P1List;
use super::path::{act, monomial, substitute, substitute_i64, unimodular_path, Cusp, Form};
use crate::arith::linalg::{SparseEchelon, SparseRow};
use crate::arith::{is_prime, rat};
use crate::error::{MtError, Result};

/// Weight-`k` modular symbols for `Gamma_0(N)` presented by Manin symbols
/// `[X^i Y^(k-2-i), (c:d)]` modulo the two- and three-term relations.
#[derive(Clone, Debug)]
pub struct SymbolSpace {
    pub level: u64,
    pub weight: u32,
    p1: P1List,
    free: Vec<usize>,
    coords: Vec<SparseRow<BigRational>>,
    /// `coords` times a common denominator, when every entry fits in an `i64`.
    scaled: Option<(i64, Vec<IntRow>)>,
}

type IntRow = Vec<(usize, i64)>;

/// Coordinate accumulator: integer fast path plus an exact fallback.
struct Accum {
    fast: Vec<i128>,
    slow: Vec<BigRational>,
}

/// A linear map on the presented space: `images[c]` are the coordinates of the
/// image of the `c`-th free generator.
pub type Images = Vec<Vec<BigRational>>;

impl SymbolSpace {
    pub fn new(level: u64, weight: u32) -> Result<Self> {
        if level == 0 || weight < 2 {
            return Err(MtError::InvalidContext(format!("need N >= 1 and k >= 2, got N={level}, k={weight}")));
        }
        if weight % 2 == 1 {
            return Err(MtError::UnsupportedCharacter(
                "odd weight needs a nebentype; only trivial characters are supported".into(),
            ));
        }
        let p1 = P1List::new(level);
        let g = (weight - 2) as usize;
        let ngens = p1.len() * (g + 1);
        let gen = |t: usize, i: usize| t * (g + 1) + i;
        let mut ech: SparseEchelon<BigRational> = SparseEchelon::new();
        let s_mat = [0, -1, 1, 0]; // P(-Y, X)
        let tau = [0, -1, 1, -1]; // P(-Y, X - Y)
        let tau2 = [-1, 1, -1, 0]; // P(-X + Y, -X)
        for t in 0..p1.len() {
            let (c, d) = p1.rep(t);
            let (c, d) = (c as i64, d as i64);
            let ts = p1.index(d, -c);
            let t1 = p1.index(d, -c - d);
            let t2 = p1.index(-c - d, c);
            for i in 0..=g {
                let m = monomial(g, i);
                let mut row = SparseRow::new();
                add_form(&mut row, gen(t, i), &BigInt::one());
                add_terms(&mut row, &substitute_i64(&m, s_mat), ts, g);
                ech.insert(row);
                let mut row = SparseRow::new();
                add_form(&mut row, gen(t, i), &BigInt::one());
                add_terms(&mut row, &substitute_i64(&m, tau), t1, g);
                add_terms(&mut row, &substitute_i64(&m, tau2), t2, g);
                ech.insert(row);
            }
        }
        let (free, coords) = ech.free_coordinates(ngens, &rat(0));
        let scaled = scale_coords(&coords);
        Ok(SymbolSpace { level, weight, p1, free, coords, scaled })
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn degree(&self) -> usize {
        (self.weight - 2) as usize
    }

    pub fn p1(&self) -> &P1List {
        &self.p1
    }

    pub fn num_manin(&self) -> usize {
        self.coords.len()
    }

    /// Coordinates of the Manin generator `[X^i Y^(g-i), t]`.
    pub fn manin_coords(&self, t: usize, i: usize) -> &SparseRow<BigRational> {
        &self.coords[t * (self.degree() + 1) + i]
    }

    fn free_gen(&self, c: usize) -> (usize, usize) {
        let g1 = self.degree() + 1;
        (self.free[c] / g1, self.free[c] % g1)
    }

    fn new_accum(&self) -> Accum {
        Accum { fast: vec![0; self.dim()], slow: vec![rat(0); self.dim()] }
    }

    fn finish(&self, acc: Accum) -> Vec<BigRational> {
        let den = self.scaled.as_ref().map_or(1, |s| s.0);
        acc.slow
            .into_iter()
            .zip(acc.fast)
            .map(|(s, f)| if f == 0 { s } else { s + BigRational::new(BigInt::from(f), BigInt::from(den)) })
            .collect()
    }

    /// Accumulate `[P, t]`.
    fn accumulate(&self, acc: &mut Accum, p: &[BigInt], t: usize) {
        let g1 = self.degree() + 1;
        for (i, c) in p.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if let (Some((_, rows)), Some(ci)) = (&self.scaled, c.to_i64()) {
                for &(k, v) in &rows[t * g1 + i] {
                    // an i64 product always fits in i128; the sum would need ~2^64 terms to overflow
                    acc.fast[k] = acc.fast[k].checked_add(v as i128 * ci as i128).expect("coordinate accumulator overflow");
                }
                continue;
            }
            let cq = BigRational::from_integer(c.clone());
            for (&k, v) in self.manin_coords(t, i) {
                acc.slow[k] += &cq * v;
            }
        }
    }

    fn accumulate_path(&self, acc: &mut Accum, q: &[BigInt], beta: &Cusp) {
        for g in unimodular_path(beta) {
            // [g^{-1} Q, g] with (g^{-1} Q)(X, Y) = Q(aX + bY, cX + dY)
            let t = self.p1_index_big(&g[2], &g[3]);
            self.accumulate(acc, &substitute(q, &g), t);
        }
    }

    /// Coordinates of `Q{0, beta}`.
    pub fn path_from_zero(&self, q: &[BigInt], beta: &Cusp) -> Vec<BigRational> {
        let mut acc = self.new_accum();
        self.accumulate_path(&mut acc, q, beta);
        self.finish(acc)
    }

    fn accumulate_between(&self, acc: &mut Accum, q: &[BigInt], alpha: &Cusp, beta: &Cusp) {
        self.accumulate_path(acc, q, beta);
        let neg: Form = q.iter().map(|x| -x).collect();
        self.accumulate_path(acc, &neg, alpha);
    }

    /// Coordinates of `Q{alpha, beta}`.
    pub fn path(&self, q: &[BigInt], alpha: &Cusp, beta: &Cusp) -> Vec<BigRational> {
        let mut acc = self.new_accum();
        self.accumulate_between(&mut acc, q, alpha, beta);
        self.finish(acc)
    }

    fn p1_index_big(&self, c: &BigInt, d: &BigInt) -> usize {
        let n = BigInt::from(self.level);
        let r = |x: &BigInt| {
            let m = x % &n;
            let m = if m.is_negative() { m + &n } else { m };
            i64::try_from(m).expect("residue fits")
        };
        self.p1.index(r(c), r(d))
    }

    /// The Manin generator of free column `c` as `(Q, alpha, beta)` with value `Q{alpha, beta}`.
    fn free_as_path(&self, c: usize) -> (Form, Cusp, Cusp) {
        let (t, i) = self.free_gen(c);
        let [a, b, cc, d] = self.p1.lift(t).map(BigInt::from);
        let r = [a.clone(), b.clone(), cc.clone(), d.clone()];
        let q = act(&r, &monomial(self.degree(), i));
        (q, Cusp::new(b, d), Cusp::new(a, cc))
    }

    /// Images of the free generators under `x -> sum_g g x`.
    fn apply_matrices(&self, mats: &[[BigInt; 4]]) -> Images {
        (0..self.dim())
            .map(|c| {
                let (q, alpha, beta) = self.free_as_path(c);
                let mut acc = self.new_accum();
                for g in mats {
                    self.accumulate_between(&mut acc, &act(g, &q), &alpha.apply(g), &beta.apply(g));
                }
                self.finish(acc)
            })
            .collect()
    }

    /// Hecke operator `T_l` (or `U_l` when `l | N`).
    pub fn hecke(&self, l: u64) -> Result<Images> {
        if !is_prime(l) {
            return Err(MtError::InvalidContext(format!("T_{l}: {l} is not prime")));
        }
        let bl = BigInt::from(l);
        let mut mats: Vec<[BigInt; 4]> =
            (0..l).map(|r| [BigInt::one(), BigInt::from(r), BigInt::zero(), bl.clone()]).collect();
        if !self.level.is_multiple_of(l) {
            mats.push([bl.clone(), BigInt::zero(), BigInt::zero(), BigInt::one()]);
        }
        Ok(self.apply_matrices(&mats))
    }

    /// The involution `P(X,Y){a,b} -> P(X,-Y){-a,-b}`.
    pub fn star_involution(&self) -> Images {
        let g = self.degree();
        (0..self.dim())
            .map(|c| {
                let (t, i) = self.free_gen(c);
                let (cc, d) = self.p1.rep(t);
                let t2 = self.p1.index(-(cc as i64), d as i64);
                let mut acc = self.new_accum();
                let sign = if (g - i).is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
                let mut f = vec![BigInt::zero(); g + 1];
                f[i] = sign;
                self.accumulate(&mut acc, &f, t2);
                self.finish(acc)
            })
            .collect()
    }

    /// Boundary map to the span of `Gamma_0(N)`-classes of cusps; returns the
    /// images and the list of class representatives.
    pub fn boundary(&self) -> (Images, Vec<Cusp>) {
        let g = self.degree();
        let mut classes: Vec<Cusp> = Vec::new();
        let mut rows = Vec::new();
        for c in 0..self.dim() {
            let (t, i) = self.free_gen(c);
            let [a, b, cc, d] = self.p1.lift(t);
            let mut img: Vec<(usize, i64)> = Vec::new();
            if i == g {
                img.push((cusp_class(&mut classes, a, cc, self.level), 1));
            }
            if i == 0 {
                img.push((cusp_class(&mut classes, b, d, self.level), -1));
            }
            rows.push(img);
        }
        let images = rows
            .into_iter()
            .map(|img| {
                let mut v = vec![rat(0); classes.len()];
                for (k, s) in img {
                    v[k] += rat(s);
                }
                v
            })
            .collect();
        (images, classes)
    }
}

fn scale_coords(coords: &[SparseRow<BigRational>]) -> Option<(i64, Vec<IntRow>)> {
    use num_integer::Integer;
    let den = coords.iter().flat_map(|r| r.values()).fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let den_i = den.to_i64()?;
    let rows = coords
        .iter()
        .map(|r| r.iter().map(|(&k, v)| Some((k, (v.numer() * (&den / v.denom())).to_i64()?))).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()?;
    Some((den_i, rows))
}

fn add_form(row: &mut SparseRow<BigRational>, col: usize, c: &BigInt) {
    let e = row.entry(col).or_insert_with(|| rat(0));
    *e += BigRational::from_integer(c.clone());
}

fn add_terms(row: &mut SparseRow<BigRational>, f: &[BigInt], t: usize, g: usize) {
    for (i, c) in f.iter().enumerate() {
        if !c.is_zero() {
            add_form(row, t * (g + 1) + i, c);
        }
    }
}

/// Class of the cusp `u/v` among `classes`, appending it if new.
fn cusp_class(classes: &mut Vec<Cusp>, u: i64, v: i64, n: u64) -> usize {
    let c = Cusp::new(u.into(), v.into());
    for (k, r) in classes.iter().enumerate() {
        if cusps_equivalent(r, &c, n) {
            return k;
        }
    }
    classes.push(c);
    classes.len() - 1
}

/// `u1/v1 ~ u2/v2` under `Gamma_0(N)`: some unit `s` has `v2 = s v1 (mod N)` and
/// `s u2 = u1 (mod gcd(v1, N))`, possibly after negating `(u2, v2)`.
pub fn cusps_equivalent(a: &Cusp, b: &Cusp, n: u64) -> bool {
    use num_integer::Integer;
    let ni = n as i64;
    let red = |x: &BigInt| i64::try_from(x.mod_floor(&BigInt::from(n))).unwrap();
    let (u1, v1) = (red(&a.u), red(&a.v));
    let (u2, v2) = (red(&b.u), red(&b.v));
    let g = v1.gcd(&ni);
    for (uu, vv) in [(u2, v2), ((ni - u2) % ni, (ni - v2) % ni)] {
        for s in 1..=ni {
            if s.gcd(&ni) != 1 {
                continue;
            }
            if (s * v1 - vv).rem_euclid(ni) == 0 && (s * uu - u1).rem_euclid(g) == 0 {
                return true;
            }
        }
    }
    false
}
