//! Search a Gamma_0(N) weight-k space for rational newforms with a_p = 0 and
//! print their eigenvalues together with the first few lambda(theta_n).
//!
//!     cargo run --release --example find_newforms -- 32 4 3

use mt_iwasawa::arith::{is_prime, rat, PrimeContext};
use mt_iwasawa::mazur_tate::theta;
use mt_iwasawa::modsym::{eigenspace, split, EigenSymbol, SymbolSpace};
use num_rational::BigRational;

fn main() -> anyhow::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let (level, k, p) = match args[..] {
        [n, k, p] => (n, k as u32, p),
        [n, k] => (n, k as u32, 3),
        _ => anyhow::bail!("usage: find_newforms N k [p]"),
    };
    let space = SymbolSpace::new(level, k)?;
    let id = |x: &BigRational| x.clone();
    let start = eigenspace(&space, &[(p, rat(0))], 1, &rat(0), &id)?;
    println!("N={level} k={k}: dim {} , ker T_{p} on the plus part has dim {}", space.dim(), start.len());

    let primes: Vec<u64> = (2..60).filter(|&l| is_prime(l) && l != p && level % l != 0).take(6).collect();
    // each node: (eigenvalues so far, basis)
    let mut nodes = vec![(vec![(p, 0i64)], start)];
    for &l in &primes {
        let t = space.hecke(l)?;
        let bound = (2.0 * (l as f64).powf((k as f64 - 1.0) / 2.0)).floor() as i64;
        let mut next = Vec::new();
        let candidates: Vec<BigRational> = (-bound..=bound).map(rat).collect();
        for (ev, basis) in nodes {
            for (a, b) in split(&basis, &t, &candidates, &rat(0)) {
                let mut e = ev.clone();
                e.push((l, a.to_integer().try_into()?));
                next.push((e, b));
            }
        }
        nodes = next;
    }
    let ctx = PrimeContext::new(p)?;
    let lifts: Vec<[i64; 4]> = (0..space.p1().len()).map(|t| space.p1().lift(t)).collect();
    for (ev, basis) in nodes {
        if basis.len() != 1 {
            println!("{ev:?}: dimension {} (old or non-rational)", basis.len());
            continue;
        }
        let eig: Vec<(u64, BigRational)> = ev.iter().map(|&(l, a)| (l, rat(a))).collect();
        let mut sym = EigenSymbol::from_eigenvalues(&space, &eig, 1, &rat(0), &id)?;
        sym.normalize(&lifts);
        let lams: Vec<String> = (1..=4)
            .map(|n| match theta(&sym, "probe", &ctx, n, 0, 0).and_then(|t| t.invariants()) {
                Ok(i) => i.lambda.to_string(),
                Err(_) => "zero".into(),
            })
            .collect();
        println!("{ev:?}: lambda(theta_1..4) = {lams:?}");
    }
    Ok(())
}
