//! One PASS/FAIL line per acceptance criterion. Runs as a plain binary so the
//! lines are printed on every `cargo test`.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use mt_iwasawa::extraction::{compare_congruent, extract_signed_invariants, ExtractionReport, ThetaTable};
use mt_iwasawa::io::{compute_form, ingest_form, run_oracle, ComputeOptions, ComputeReport, OracleCheck};

type Outcome = anyhow::Result<(bool, String)>;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn compute(name: &str, n_max: u32) -> anyhow::Result<ComputeReport> {
    let spec = ingest_form(&fixture(&format!("{name}.json")))?;
    Ok(compute_form(&spec, None, &ComputeOptions::new(n_max))?)
}

fn lambdas(r: &ComputeReport) -> Vec<u64> {
    r.table.rows.iter().map(|x| x.lambda).collect()
}

fn weight_six(r: &ComputeReport) -> Outcome {
    let got = lambdas(r);
    Ok((got == [1, 5, 17, 47, 143] && r.zero_layers.is_empty(), format!("lambda(theta_1..5) = {got:?}")))
}

fn rows_match(rows: &[(&str, [u64; 4])]) -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for (name, want) in rows {
        let r = compute(name, 4)?;
        let got = lambdas(&r);
        ok &= got == want && r.checks_passed();
        detail.push(format!("{name} {got:?}"));
    }
    Ok((ok, detail.join(", ")))
}

fn extraction(computed: &ComputeReport) -> Outcome {
    let tsv = std::fs::read_to_string(fixture("theta-26-6-a-a-p3.tsv"))?;
    let table = ThetaTable::from_tsv(&tsv, 3, 6, 0, "26.6.a.a")?;
    let published: Vec<u64> = table.rows.iter().map(|r| r.lambda).collect();
    let a = extract_signed_invariants(&table)?;
    let b = extract_signed_invariants(&computed.table)?;
    let ok = published == [1, 5, 17, 47, 143, 425, 1277, 3827]
        && (a.lambda_plus, a.lambda_minus, a.iota_plus, a.iota_minus) == (5, 1, 1, 1)
        && a.n0 <= 4
        && (b.lambda_plus, b.lambda_minus) == (5, 1);
    Ok((
        ok,
        format!(
            "8 rows: lambda+ {} lambda- {} iota {} n0 {}; 5 computed rows: lambda+ {} lambda- {}",
            a.lambda_plus, a.lambda_minus, a.iota_plus, a.n0, b.lambda_plus, b.lambda_minus
        ),
    ))
}

fn congruences() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for (f, g, n_max) in [("G0N32k4A", "G0N32k2A", 5), ("G0N154k4D", "G0N154k2C", 5), ("G0N256k4B", "G0N256k2A", 7)] {
        let ext = |name: &str| -> anyhow::Result<ExtractionReport> { Ok(extract_signed_invariants(&compute(name, n_max)?.table)?) };
        let (rf, rg) = (ext(f)?, ext(g)?);
        let c = compare_congruent(&rf, &rg)?;
        ok &= c.pass;
        detail.push(format!(
            "{f}/{g}: f ({}, {}) g ({}, {}) mapping {}",
            rf.lambda_plus,
            rf.lambda_minus,
            rg.lambda_plus,
            rg.lambda_minus,
            c.mapping.as_deref().unwrap_or("none")
        ));
    }
    Ok((ok, detail.join("; ")))
}

fn oracle(check: OracleCheck, primes: &[u64], layers: &[u32], trials: usize) -> Outcome {
    let mut ok = true;
    let mut cases = 0;
    let mut detail = Vec::new();
    for &p in primes {
        for &n in layers {
            let s = run_oracle(check, p, n, trials, 20_240 + p * 10 + n as u64)?;
            ok &= s.ok();
            cases += s.cases;
            if !s.ok() {
                detail.push(format!("p={p} n={n}: {}/{} {:?}", s.passed, s.cases, s.failures.first()));
            }
            if check == OracleCheck::Mainpl && p == 3 && n == 1 {
                let shown = s.notes.iter().any(|x| x.contains("violated as expected"));
                ok &= shown;
                detail.push(format!("counterexample T^3 + 3T violates the identity: {shown}"));
            }
        }
    }
    detail.insert(0, format!("{cases} cases"));
    Ok((ok, detail.join("; ")))
}

fn lfkn() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for p in [2, 3] {
        let s = run_oracle(OracleCheck::Lfkn, p, 4, 0, 0)?;
        ok &= s.ok();
        let logged = s.notes.iter().filter(|x| x.contains("below stabilization")).count();
        detail.push(format!("p={p}: {}/{} series stable, {logged} early mismatches logged", s.passed, s.cases));
    }
    Ok((ok, detail.join("; ")))
}

fn identities(r: &ComputeReport) -> Outcome {
    let of = |name: &'static str| r.checks.iter().filter(move |c| c.check == name);
    let three = of("three_term").all(|c| c.passed) && of("three_term").count() == r.meta.n_max as usize;
    let div = of("divisibility").all(|c| c.passed) && of("divisibility").count() == r.meta.n_max as usize;
    let cv: Vec<_> = of("character_valuation").filter(|c| c.n == 3 || c.n == 4).collect();
    let cv_ok = cv.len() == 2 && cv.iter().all(|c| c.passed);
    Ok((three && div && cv_ok, format!("three-term {three}, divisibility {div}, character valuation at n = 3, 4 {cv_ok}")))
}

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() -> ExitCode {
    let start = Instant::now();
    let weight_six_report = compute("26-6-a-a", 5);
    let criteria: Vec<(u32, &str, Criterion<'_>)> = vec![
        (1, "weight-6 layers at p = 3", Box::new(|| weight_six(weight_six_report.as_ref().map_err(|e| anyhow::anyhow!("{e}"))?))),
        (2, "weight-4 rows", Box::new(|| rows_match(&[("G0N32k4A", [2, 6, 20, 60]), ("G0N154k4D", [2, 8, 22, 62])]))),
        (3, "weight-2 row", Box::new(|| rows_match(&[("G0N32k2A", [0, 2, 6, 20])]))),
        (4, "extraction", Box::new(|| extraction(weight_six_report.as_ref().map_err(|e| anyhow::anyhow!("{e}"))?))),
        (5, "congruent pairs", Box::new(congruences)),
        (6, "division terms", Box::new(|| oracle(OracleCheck::Division, &[2, 3, 5], &[1, 2, 3], 0))),
        (7, "projection with small lambda", Box::new(|| oracle(OracleCheck::Smalllam, &[2, 3], &[1, 2, 3], 1000))),
        (8, "transfer for p-large series", Box::new(|| oracle(OracleCheck::Mainpl, &[2, 3], &[1, 2, 3], 1000))),
        (9, "Newton region implies p-large", Box::new(|| oracle(OracleCheck::Newton, &[2, 3], &[1, 2, 3], 1000))),
        (10, "half-logarithm invariants", Box::new(lfkn)),
        (11, "internal identities", Box::new(|| identities(weight_six_report.as_ref().map_err(|e| anyhow::anyhow!("{e}"))?))),
    ];
    let mut failed = 0;
    for (id, name, run) in &criteria {
        let t = Instant::now();
        let (ok, detail) = run().unwrap_or_else(|e| (false, format!("error: {e:#}")));
        if !ok {
            failed += 1;
        }
        println!("{} criterion {id:>2} ({name}): {detail} [{:.1}s]", if ok { "PASS" } else { "FAIL" }, t.elapsed().as_secs_f64());
    }
    println!("{} of {} criteria pass in {:.1}s", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
