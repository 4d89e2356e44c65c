//! Modular symbol spaces against the classical dimension formulas, Hecke
//! traces of known newforms, commutation and normalization.

use mt_iwasawa::arith::linalg::{mat_mul, rank};
use mt_iwasawa::arith::rat;
use mt_iwasawa::modsym::{eigenspace, EigenSymbol, SymbolSpace};
use num_rational::BigRational;

fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn phi(n: u64) -> u64 {
    prime_factors(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

fn legendre(a: i64, p: u64) -> i64 {
    let p = p as i64;
    let r = (0..p).filter(|x| (x * x - a).rem_euclid(p) == 0).count();
    r as i64 - 1
}

/// `(index, eps2, eps3, cusps)` for `Gamma_0(N)`.
fn gamma0_data(n: u64) -> (u64, i64, i64, u64) {
    let fs = prime_factors(n);
    let index = fs.iter().fold(n, |acc, &(p, _)| acc / p * (p + 1));
    let eps2 = if n.is_multiple_of(4) { 0 } else { fs.iter().map(|&(p, _)| if p == 2 { 1 } else { 1 + legendre(-1, p) }).product() };
    let eps3 = if n.is_multiple_of(9) { 0 } else { fs.iter().map(|&(p, _)| match p {
        3 => 1,
        // (-3/2) = -1
        2 => 0,
        _ => 1 + legendre(-3, p),
    }).product() };
    let cusps = (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| phi(gcd(d, n / d))).sum();
    (index, eps2, eps3, cusps)
}

fn dim_cusp_forms(n: u64, k: u32) -> i64 {
    let (index, e2, e3, c) = gamma0_data(n);
    // 12 * genus
    let g12 = 12 + index as i64 - 3 * e2 - 4 * e3 - 6 * c as i64;
    assert_eq!(g12 % 12, 0);
    let g = g12 / 12;
    if k == 2 {
        return g;
    }
    let k = k as i64;
    (k - 1) * (g - 1) + (k / 2 - 1) * c as i64 + e2 * (k / 4) + e3 * (k / 3)
}

fn dim_eisenstein(n: u64, k: u32) -> i64 {
    let c = gamma0_data(n).3 as i64;
    if k == 2 {
        c - 1
    } else {
        c
    }
}

fn trace(m: &[Vec<BigRational>]) -> BigRational {
    m.iter().enumerate().map(|(i, r)| r[i].clone()).sum()
}

#[test]
fn dimensions_match_the_genus_formula() {
    for (n, k) in [(11, 2), (23, 2), (26, 2), (32, 2), (37, 2), (45, 2), (11, 4), (13, 4), (26, 6), (32, 4), (27, 4), (36, 6)] {
        let space = SymbolSpace::new(n, k).unwrap();
        let s = dim_cusp_forms(n, k);
        let e = dim_eisenstein(n, k);
        assert_eq!(space.dim() as i64, 2 * s + e, "N={n} k={k}");
        let (b, classes) = space.boundary();
        let cols = classes.len();
        let r = rank(&b, cols);
        assert_eq!((space.dim() - r) as i64, 2 * s, "cuspidal part N={n} k={k}");
    }
}

#[test]
fn traces_of_rational_newforms() {
    // 11a: a_2 = -2, a_3 = -1, a_5 = 1, a_7 = -2; Eisenstein eigenvalue 1 + l.
    let space = SymbolSpace::new(11, 2).unwrap();
    for (l, a) in [(2, -2), (3, -1), (5, 1), (7, -2)] {
        assert_eq!(trace(&space.hecke(l).unwrap()), rat(2 * a + (1 + l as i64)));
    }
    // 32a is the only newform of weight 2 and level 32. Of the 7 Eisenstein
    // series, 5 have eigenvalue 1 + l and 2 come from the character of
    // conductor 4, with eigenvalue chi(l) (1 + l).
    let space = SymbolSpace::new(32, 2).unwrap();
    assert_eq!(dim_eisenstein(32, 2), 7);
    for (l, a) in [(3, 0), (5, -2), (13, 6), (17, 2), (19, 0)] {
        let chi = if l % 4 == 1 { 1 } else { -1 };
        let eis = (5 + 2 * chi) * (1 + l as i64);
        assert_eq!(trace(&space.hecke(l).unwrap()), rat(2 * a + eis), "T_{l}");
    }
}

#[test]
fn hecke_operators_commute() {
    for (n, k) in [(26, 6), (32, 4), (23, 2)] {
        let space = SymbolSpace::new(n, k).unwrap();
        let ts: Vec<_> = [3u64, 5, 7].iter().filter(|&&l| n % l != 0).map(|&l| space.hecke(l).unwrap()).collect();
        let star = space.star_involution();
        let z = rat(0);
        for a in &ts {
            assert_eq!(mat_mul(a, &star, &z), mat_mul(&star, a, &z));
            for b in &ts {
                assert_eq!(mat_mul(a, b, &z), mat_mul(b, a, &z));
            }
        }
        assert_eq!(trace(&mat_mul(&star, &star, &z)), rat(space.dim() as i64));
    }
}

#[test]
fn normalization_is_idempotent() {
    let space = SymbolSpace::new(26, 6).unwrap();
    let id = |x: &BigRational| x.clone();
    let eig = [(2, rat(-4)), (3, rat(0)), (5, rat(-14)), (7, rat(-170))];
    let lifts: Vec<[i64; 4]> = (0..space.p1().len()).map(|t| space.p1().lift(t)).collect();
    for sign in [1, -1] {
        let mut s = EigenSymbol::from_eigenvalues(&space, &eig, sign, &rat(0), &id).unwrap();
        let first = s.normalize(&lifts);
        assert_ne!(first, rat(0));
        let once = s.clone();
        assert_eq!(s.normalize(&lifts), rat(1));
        assert_eq!(s, once);
    }
    let plus = eigenspace(&space, &eig, 1, &rat(0), &id).unwrap();
    assert_eq!(plus.len(), 1);
}
