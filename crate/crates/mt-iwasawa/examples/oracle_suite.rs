//! Run every seeded oracle for small primes and layers and print a summary.
//!
//!     cargo run --release --example oracle_suite -- 200 7

use mt_iwasawa::io::{run_oracle, OracleCheck};

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let trials: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(200);
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(7);
    let checks = [OracleCheck::Division, OracleCheck::Smalllam, OracleCheck::Mainpl, OracleCheck::Newton, OracleCheck::Lfkn];
    for check in checks {
        for p in [2, 3] {
            let top = if check == OracleCheck::Lfkn { 4 } else { 3 };
            let s = run_oracle(check, p, top, trials, seed)?;
            println!("{check:>9} p={p} n={top}: {}/{}{}", s.passed, s.cases, if s.ok() { "" } else { "  FAILED" });
            for f in &s.failures {
                println!("    {f}");
            }
        }
    }
    let s = run_oracle(OracleCheck::Mainpl, 3, 1, 10, seed)?;
    for note in s.notes {
        println!("note: {note}");
    }
    Ok(())
}
