//! Tabulate the weight constants that govern the drop in lambda(theta_n) for a
//! range of weights at one prime.
//!
//!     cargo run --example weight_constants -- 3

use mt_iwasawa::arith::PrimeContext;
use mt_iwasawa::cyclotomic::{qn, qn_prime, weight_constants, Iota};

fn main() -> anyhow::Result<()> {
    let p: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(3);
    let ctx = PrimeContext::new(p)?;
    println!("p = {p}, gamma = {}", ctx.gamma);
    println!("n\tq_n\tq_n'");
    for n in 1..=6 {
        println!("{n}\t{}\t{}", qn(&ctx, n), qn_prime(&ctx, n));
    }
    println!("k\tnu\tnu-\tnu+\tl\ta\tb\tiota");
    for k in 2..=(p * p + p + 4) as u32 {
        let w = weight_constants(&ctx, k);
        let iota = match w.iota_plus {
            Iota::Resolved(v) => v.to_string(),
            Iota::Branches { ge, lt } => format!("{lt} or {ge}"),
        };
        println!("{k}\t{}\t{}\t{}\t{}\t{}\t{}\t{iota}", w.nu, w.nu_minus, w.nu_plus, w.l, w.a, w.b);
    }
    Ok(())
}
