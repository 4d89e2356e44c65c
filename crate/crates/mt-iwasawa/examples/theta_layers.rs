//! Build the symbols of a form from its eigenvalues, assemble theta_n for the
//! first few layers and print lambda, mu together with the consistency checks.
//!
//!     cargo run --release --example theta_layers -- fixtures/26-6-a-a.json 5

use std::path::PathBuf;

use mt_iwasawa::io::{compute_form, ingest_form, ComputeOptions};

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args.next().map(PathBuf::from).unwrap_or_else(|| fixture("26-6-a-a.json"));
    let n_max: u32 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(5);

    let spec = ingest_form(&path)?;
    let report = compute_form(&spec, None, &ComputeOptions::new(n_max))?;
    println!("{} (level {}, weight {}) at p = {}", spec.label, spec.level, spec.weight, spec.p);
    println!("normalization: {}", report.meta.normalization);
    for row in &report.table.rows {
        println!("  n = {}: lambda = {:>5}, mu = {}", row.n, row.lambda, row.mu.unwrap_or_default());
    }
    for n in &report.zero_layers {
        println!("  n = {n}: theta vanishes");
    }
    let failed: Vec<_> = report.checks.iter().filter(|c| !c.passed).collect();
    println!("{} check records, {} failed", report.checks.len(), failed.len());
    for c in failed {
        println!("  {} at n = {}: {}", c.check, c.n, c.detail);
    }
    Ok(())
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}
