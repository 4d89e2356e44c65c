//! A newform whose Hecke field is quadratic: symbols over the field, theta_n
//! at a prime above p, and the three-term relation checked over the field.
//!
//!     cargo run --release --example number_field_form

use mt_iwasawa::io::{compute_form, ingest_form, ComputeOptions};

fn main() -> anyhow::Result<()> {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/23-2-a-a.json");
    let spec = ingest_form(&path)?;
    println!("{}: Hecke field of degree {}, p = {}", spec.label, spec.degree(), spec.p);
    let report = compute_form(&spec, None, &ComputeOptions::new(4))?;
    println!("{}", report.meta.normalization);
    print!("{}", report.table.to_tsv());
    for c in &report.checks {
        println!("{}\tn={}\t{}\t{}", c.check, c.n, if c.passed { "ok" } else { "FAIL" }, c.detail);
    }
    Ok(())
}
