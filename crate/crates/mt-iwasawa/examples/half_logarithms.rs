//! The finite half-logarithms at layer n: their lambda-invariants, and how the
//! invariants of L * log move under eta^j and reduction modulo omega_n.
//!
//!     cargo run --release --example half_logarithms -- 3 6

use mt_iwasawa::arith::{rat, Poly, PrimeContext};
use mt_iwasawa::cyclotomic::{half_log_layer, lfkn_oracle, qn};
use mt_iwasawa::iwasawa::invariants;

fn main() -> anyhow::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let (p, k) = match args[..] {
        [p, k] => (p, k as u32),
        _ => (3, 6),
    };
    let ctx = PrimeContext::new(p)?;
    println!("p = {p}, k = {k}");
    println!("n\tsign\tdeg\tlambda\t(k-1) q_n");
    for n in 1..=4 {
        for sign in [1, -1] {
            let h = half_log_layer(&ctx, k, n, sign, &rat(0));
            let inv = invariants(&h, p)?;
            println!("{n}\t{sign:+}\t{}\t{}\t{}", h.degree().unwrap_or(0), inv.lambda, (k as u64 - 1) * qn(&ctx, n));
        }
    }

    println!("L\tn\tj\tdirect\tformula");
    let ls = [("1", Poly::from_ints_q(&[1])), ("T^2", Poly::from_ints_q(&[0, 0, 1])), ("p+T", Poly::from_ints_q(&[p as i64, 1]))];
    for (name, l) in &ls {
        for n in 1..=4 {
            let r = lfkn_oracle(&ctx, k, n, 0, l)?;
            println!("{name}\t{n}\t0\t({}, {})\t({}, {})", r.direct.lambda, r.direct.mu, r.formula_lambda, r.formula_mu);
        }
    }
    Ok(())
}
