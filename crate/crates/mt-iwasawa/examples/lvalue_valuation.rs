//! Valuations of twisted L-values at characters of conductor p^(n+1), read
//! three ways: from theta_n directly, from its invariants, and from the signed
//! invariants recovered from the whole tower.
//!
//!     cargo run --release --example lvalue_valuation

use mt_iwasawa::arith::PrimeContext;
use mt_iwasawa::extraction::{extract_signed_invariants, lvalue_valuation_from_theta, lvalue_valuation_report};
use mt_iwasawa::io::{build_rational, compute_rational, ingest_form, ComputeOptions};
use mt_iwasawa::mazur_tate::{character_valuation, theta};

fn main() -> anyhow::Result<()> {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/26-6-a-a.json");
    let spec = ingest_form(&path)?;
    let ctx = PrimeContext::new(spec.p)?;
    let form = build_rational(&spec)?;
    let report = compute_rational(&spec, &form, &ctx, &ComputeOptions::new(5))?;
    let signed = extract_signed_invariants(&report.table)?;

    println!("n\tdirect\tfrom theta\tfrom signed");
    for n in 1..=5 {
        let th = theta(&form.symbols.plus, &spec.label, &ctx, n, 0, 0)?;
        let direct = character_valuation(&th, &ctx)?;
        let inv = th.invariants()?;
        let via_theta = lvalue_valuation_from_theta(&ctx, n, inv.lambda, inv.mu);
        let via_signed = lvalue_valuation_report(&signed, n).map(|v| v.to_string()).unwrap_or_else(|e| e.to_string());
        let d = direct.valuation.map(|v| v.to_string()).unwrap_or_else(|| "inf".into());
        println!("{n}\t{d}\t{via_theta}\t{via_signed}");
    }
    Ok(())
}
