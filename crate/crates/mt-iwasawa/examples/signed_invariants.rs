//! Recover lambda^+, lambda^-, iota and the stabilization index from a table of
//! lambda(theta_n), then predict the table back from the recovered values.
//!
//!     cargo run --example signed_invariants

use mt_iwasawa::arith::PrimeContext;
use mt_iwasawa::cyclotomic::{predict_theta_invariants, qn};
use mt_iwasawa::extraction::{extract_signed_invariants, generalized_fit, ThetaTable};

fn main() -> anyhow::Result<()> {
    let tsv = include_str!("../fixtures/theta-26-6-a-a-p3.tsv");
    let table = ThetaTable::from_tsv(tsv, 3, 6, 0, "26.6.a.a")?;
    let r = extract_signed_invariants(&table)?;
    println!("lambda+ = {}, lambda- = {}", r.lambda_plus, r.lambda_minus);
    println!("iota+ = {}, iota- = {}, branch {}, stable from n = {}", r.iota_plus, r.iota_minus, r.branch, r.n0);
    for t in &r.trajectories {
        println!("  sign {:+} residuals {:?}", t.sign, t.residuals);
    }

    let ctx = PrimeContext::new(3)?;
    let signed = r.signed();
    println!("n\ttable\tpredicted");
    for row in &table.rows {
        let pred = predict_theta_invariants(&ctx, 6, 0, &signed, row.n)?;
        println!("{}\t{}\t{}", row.n, row.lambda, pred.lambda);
    }

    // The generalized fit does not use the weight: it searches for the drop
    // c * t_n directly. At weight 18 it should find c = iota = 5.
    let lams: Vec<u64> = (3..=8).map(|n| 3u64.pow(n) - 3u64.pow(n - 2) + qn(&ctx, n - 2)).collect();
    let t18 = ThetaTable::from_lambdas(3, 18, "synthetic", 3, &lams);
    let fit = generalized_fit(&t18)?;
    let r18 = extract_signed_invariants(&t18)?;
    println!("weight 18: fit c = {}, residuals {}/{}; standard iota = {}", fit.c, fit.r_even, fit.r_odd, r18.iota_plus);
    Ok(())
}
