//! Compare the signed invariants of a weight p+1 form with those of a
//! congruent weight-2 form, computing both tables from modular symbols.
//!
//!     cargo run --release --example congruent_pair -- 32

use std::path::PathBuf;

use mt_iwasawa::extraction::{compare_congruent, extract_signed_invariants};
use mt_iwasawa::io::{compute_form, ingest_form, ComputeOptions};

fn main() -> anyhow::Result<()> {
    let level = std::env::args().nth(1).unwrap_or_else(|| "32".into());
    let (f, g, n_max) = match level.as_str() {
        "32" => ("G0N32k4A", "G0N32k2A", 5),
        "154" => ("G0N154k4D", "G0N154k2C", 5),
        "256" => ("G0N256k4B", "G0N256k2A", 7),
        other => anyhow::bail!("no fixture pair at level {other}"),
    };
    let report = |name: &str| -> anyhow::Result<_> {
        let spec = ingest_form(&fixture(name))?;
        let table = compute_form(&spec, None, &ComputeOptions::new(n_max))?.table;
        let lams: Vec<_> = table.rows.iter().map(|r| r.lambda).collect();
        println!("{name}: lambda(theta_n) = {lams:?}");
        Ok(extract_signed_invariants(&table)?)
    };
    let rf = report(f)?;
    let rg = report(g)?;
    println!("{f}: lambda+ {} lambda- {}", rf.lambda_plus, rf.lambda_minus);
    println!("{g}: lambda+ {} lambda- {}", rg.lambda_plus, rg.lambda_minus);
    let c = compare_congruent(&rf, &rg)?;
    println!("sharp = even layers: {}", c.sharp_even_holds);
    println!("sharp = odd layers:  {}", c.sharp_odd_holds);
    println!("mapping {:?}, pass {}", c.mapping, c.pass);
    Ok(())
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}
