use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mt_iwasawa::arith::PrimeContext;
use mt_iwasawa::cyclotomic::{predict_theta_invariants, weight_constants, SignedInvariants};
use mt_iwasawa::extraction::{extract_signed_invariants, generalized_fit, ExtractionReport, ThetaTable};
use mt_iwasawa::io::{
    compute_form, default_n_max, exit_code, ingest_form, parse_series, run_oracle, series_report, Cache,
    ComputeOptions, ComputeReport, FormSpec, OracleCheck,
};
use mt_iwasawa::MtError;

/// Exponent-grid budget behind the default `--n-max`.
const GRID_BUDGET: u64 = 10_000;

#[derive(Parser)]
#[command(name = "mt", version, about = "Mazur-Tate elements and their Iwasawa invariants at non-ordinary primes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OnOff {
    On,
    Off,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute theta_n for n = 1..=n_max and print lambda(theta_n), mu(theta_n).
    Compute {
        #[arg(long)]
        form: PathBuf,
        /// Overrides the prime recorded in the form file.
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        n_max: Option<u32>,
        #[arg(long, default_value_t = 0)]
        j: u32,
        /// Exponent i of the Teichmuller twist omega^i.
        #[arg(long, default_value_t = 0)]
        psi: u32,
        #[arg(long, value_enum, default_value_t = OnOff::On)]
        checks: OnOff,
        #[arg(long)]
        json: bool,
        /// Write the output here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover lambda^+/-, mu^+/- from a table of layer invariants, or from a form.
    Extract {
        /// TSV (`n lambda [mu]`) or JSON table.
        #[arg(long, conflicts_with = "form")]
        table: Option<PathBuf>,
        #[arg(long, requires = "table")]
        p: Option<u64>,
        #[arg(long, requires = "table")]
        k: Option<u32>,
        #[arg(long, default_value_t = 0)]
        j: u32,
        #[arg(long)]
        form: Option<PathBuf>,
        #[arg(long)]
        n_max: Option<u32>,
        /// Also fit the generalized drop `c * t_n` when the standard extraction fails.
        #[arg(long)]
        fit: bool,
        #[arg(long)]
        json: bool,
    },
    /// Predict lambda(theta_n), mu(theta_n) from signed invariants.
    Predict {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 0)]
        j: u32,
        #[arg(long, allow_hyphen_values = true)]
        lambda_plus: i64,
        #[arg(long, allow_hyphen_values = true)]
        lambda_minus: i64,
        #[arg(long, default_value_t = 0)]
        mu_plus: i64,
        #[arg(long, default_value_t = 0)]
        mu_minus: i64,
        #[arg(long, default_value_t = 1)]
        n_from: u32,
        #[arg(long, default_value_t = 8)]
        n_to: u32,
        #[arg(long)]
        json: bool,
    },
    /// Seeded property checks of the finite-layer results, or a report on one series.
    Oracle {
        #[arg(long, required_unless_present = "series")]
        check: Option<String>,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// JSON series file; prints its invariants and p-largeness at layer n.
        #[arg(long)]
        series: Option<PathBuf>,
    },
    /// Print the weight constants nu, nu^+/-, iota^+/- for (p, k).
    Constants {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
    },
    /// Quick end-to-end check on a built-in weight-6 form and small oracles.
    Selfcheck,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = e.downcast_ref::<MtError>().map(exit_code).unwrap_or(1);
            ExitCode::from(code as u8)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.cmd {
        Cmd::Compute { form, p, n_max, j, psi, checks, json, out } => {
            let spec = load_spec(&form, p)?;
            let opts = options(&spec, n_max, j, psi, checks == OnOff::On);
            let report = compute_form(&spec, Some(&Cache::from_env()), &opts)?;
            let text = if json { to_json(&report)? } else { compute_tsv(&report) };
            emit(&text, out.as_deref())?;
            for c in report.checks.iter().filter(|c| !c.passed) {
                eprintln!("check {} failed at n = {}: {}", c.check, c.n, c.detail);
            }
            Ok(if report.checks_passed() { 0 } else { 2 })
        }
        Cmd::Extract { table, p, k, j, form, n_max, fit, json } => {
            let table = match (table, form) {
                (Some(path), None) => {
                    let (Some(p), Some(k)) = (p, k) else { bail!("--table needs --p and --k") };
                    read_table(&path, p, k, j)?
                }
                (None, Some(path)) => {
                    let spec = load_spec(&path, None)?;
                    if !spec.a_p_is_zero() {
                        eprintln!("warning: a_{} is not zero for {}; the signed invariants may not exist", spec.p, spec.label);
                    }
                    let opts = options(&spec, n_max, j, 0, true);
                    compute_form(&spec, Some(&Cache::from_env()), &opts)?.table
                }
                _ => bail!("give either --table or --form"),
            };
            match extract_signed_invariants(&table) {
                Ok(r) => {
                    println!("{}", if json { to_json(&r)? } else { extraction_text(&r) });
                    Ok(0)
                }
                Err(e) if fit => {
                    eprintln!("standard extraction failed: {e}");
                    let g = generalized_fit(&table)?;
                    println!("{}", to_json(&g)?);
                    Ok(0)
                }
                Err(e) => Err(e.into()),
            }
        }
        Cmd::Predict { p, k, j, lambda_plus, lambda_minus, mu_plus, mu_minus, n_from, n_to, json } => {
            let ctx = PrimeContext::new(p)?;
            let signed = SignedInvariants { lambda_plus, lambda_minus, mu_plus, mu_minus };
            let rows = (n_from..=n_to)
                .map(|n| predict_theta_invariants(&ctx, k, j, &signed, n))
                .collect::<Result<Vec<_>, _>>()?;
            if json {
                println!("{}", to_json(&rows)?);
            } else {
                println!("n\tlambda\tmu\tiota");
                for r in rows {
                    println!("{}\t{}\t{}\t{}", r.n, r.lambda, r.mu, r.iota);
                }
            }
            Ok(0)
        }
        Cmd::Oracle { check, p, n, trials, seed, series } => {
            if let Some(path) = series {
                let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                let f = parse_series(&text, p)?;
                let r = series_report(&f, &PrimeContext::new(p)?, n)?;
                println!("{}", to_json(&r)?);
                return Ok(0);
            }
            let check: OracleCheck = check.expect("clap enforces --check").parse()?;
            let s = run_oracle(check, p, n, trials, seed)?;
            println!("{}", to_json(&s)?);
            eprintln!("{} p={} n={}: {}/{} pass", s.check, s.p, s.n, s.passed, s.cases);
            Ok(if s.ok() { 0 } else { 2 })
        }
        Cmd::Constants { p, k } => {
            let ctx = PrimeContext::new(p)?;
            println!("{}", to_json(&weight_constants(&ctx, k))?);
            Ok(0)
        }
        Cmd::Selfcheck => selfcheck(),
    }
}

fn load_spec(path: &Path, p: Option<u64>) -> anyhow::Result<FormSpec> {
    let mut spec = ingest_form(path).with_context(|| format!("reading {}", path.display()))?;
    if let Some(p) = p {
        spec.p = p;
        spec.validate()?;
    }
    Ok(spec)
}

fn options(spec: &FormSpec, n_max: Option<u32>, j: u32, psi: u32, checks: bool) -> ComputeOptions {
    let mut o = ComputeOptions::new(n_max.unwrap_or_else(|| default_n_max(spec.p, GRID_BUDGET)));
    o.j = j;
    o.psi = psi;
    o.checks = checks;
    o
}

fn read_table(path: &Path, p: u64, k: u32, j: u32) -> anyhow::Result<ThetaTable> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    if text.trim_start().starts_with('{') {
        let mut t: ThetaTable = serde_json::from_str(&text).context("parsing JSON table")?;
        if t.p != p || t.k != k {
            bail!("table is for p = {}, k = {}, not p = {p}, k = {k}", t.p, t.k);
        }
        t.j = j;
        t.validate()?;
        Ok(t)
    } else {
        Ok(ThetaTable::from_tsv(&text, p, k, j, &label)?)
    }
}

fn compute_tsv(r: &ComputeReport) -> String {
    let m = &r.meta;
    let mut s = format!(
        "# form {} level {} weight {} p {} gamma {} prime_index {} j {} psi {} sign {}\n# path {}; {}\n",
        m.form, m.level, m.weight, m.p, m.gamma, m.prime_index, m.j, m.psi, m.sign, m.path, m.normalization
    );
    for n in &r.zero_layers {
        s.push_str(&format!("# theta_{n} vanishes identically\n"));
    }
    s.push_str(&r.table.to_tsv());
    s
}

fn extraction_text(r: &ExtractionReport) -> String {
    let mu = |m: Option<i64>| m.map_or("-".to_string(), |v| v.to_string());
    format!(
        "form\t{}\np\t{}\nk\t{}\nlambda+\t{}\nlambda-\t{}\nmu+\t{}\nmu-\t{}\niota+\t{}\niota-\t{}\nbranch\t{}\nn0\t{}",
        r.form,
        r.p,
        r.k,
        r.lambda_plus,
        r.lambda_minus,
        mu(r.mu_plus),
        mu(r.mu_minus),
        r.iota_plus,
        r.iota_minus,
        r.branch,
        r.n0
    )
}

fn to_json<T: Serialize>(v: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(v)?)
}

fn emit(text: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

const SELFCHECK_FORM: &str = include_str!("../../fixtures/26-6-a-a.json");

fn selfcheck() -> anyhow::Result<u8> {
    let mut failed = 0;
    let mut line = |name: &str, ok: bool, detail: String| {
        println!("{}\t{name}\t{detail}", if ok { "ok" } else { "FAIL" });
        if !ok {
            failed += 1;
        }
    };

    let spec = FormSpec::from_json(SELFCHECK_FORM)?;
    let report = compute_form(&spec, None, &ComputeOptions::new(5))?;
    let lambdas: Vec<u64> = report.lambdas().into_iter().map(|(_, l)| l).collect();
    line("weight-6 layers", lambdas == [1, 5, 17, 47, 143], format!("{lambdas:?}"));
    line("consistency checks", report.checks_passed(), format!("{} records", report.checks.len()));
    let x = extract_signed_invariants(&report.table)?;
    line(
        "extraction",
        (x.lambda_plus, x.lambda_minus) == (5, 1),
        format!("lambda+ {} lambda- {}", x.lambda_plus, x.lambda_minus),
    );

    for (check, p, n) in [
        (OracleCheck::Division, 3, 2),
        (OracleCheck::Smalllam, 2, 3),
        (OracleCheck::Mainpl, 3, 2),
        (OracleCheck::Newton, 2, 2),
        (OracleCheck::Lfkn, 3, 4),
    ] {
        let s = run_oracle(check, p, n, 100, 1)?;
        line(&format!("oracle {check} p={p} n={n}"), s.ok(), format!("{}/{}", s.passed, s.cases));
    }
    Ok(if failed == 0 { 0 } else { 2 })
}
