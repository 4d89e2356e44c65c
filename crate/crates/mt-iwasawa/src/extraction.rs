//! Recovering the signed invariants `lambda^±`, `mu^±` from a table of
//! `theta_n` invariants by running the layer formula backwards.

use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arith::context::eps;
use crate::arith::valuation::ordp_int;
use crate::arith::{binomial, rat, rat_frac, PrimeContext};
use crate::cyclotomic::{predict_theta_invariants, qn, weight_constants, Iota, SignedInvariants};
use crate::error::{MtError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaRow {
    pub n: u32,
    pub lambda: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaTable {
    pub p: u64,
    pub k: u32,
    #[serde(default)]
    pub j: u32,
    #[serde(default)]
    pub psi: u32,
    #[serde(default)]
    pub form: String,
    pub rows: Vec<ThetaRow>,
}

impl ThetaTable {
    /// Rows given as `lambda(theta_n)` for consecutive `n` starting at `first_n`.
    pub fn from_lambdas(p: u64, k: u32, form: &str, first_n: u32, lambdas: &[u64]) -> Self {
        let rows = lambdas
            .iter()
            .enumerate()
            .map(|(i, &l)| ThetaRow { n: first_n + i as u32, lambda: l, mu: None })
            .collect();
        ThetaTable { p, k, j: 0, psi: 0, form: form.to_string(), rows }
    }

    pub fn validate(&self) -> Result<()> {
        for w in self.rows.windows(2) {
            if w[1].n <= w[0].n {
                return Err(MtError::SchemaError(format!("rows must have increasing n ({} then {})", w[0].n, w[1].n)));
            }
        }
        for r in &self.rows {
            if r.n > 0 && r.n < 40 && r.lambda >= self.p.pow(r.n) {
                return Err(MtError::SchemaError(format!("lambda({}) = {} is not below p^n", r.n, r.lambda)));
            }
        }
        if self.j + 2 > self.k {
            return Err(MtError::InvalidContext(format!("need 0 <= j <= k-2, got j = {}", self.j)));
        }
        Ok(())
    }

    /// Parse `n<TAB>lambda[<TAB>mu]` lines; `#` starts a comment and a
    /// non-numeric first line is treated as a header.
    pub fn from_tsv(text: &str, p: u64, k: u32, j: u32, form: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split(['\t', ' ']).filter(|s| !s.is_empty()).collect();
            let bad = |what: &str| MtError::SchemaError(format!("line {}: {what}", ln + 1));
            let n = match cols[0].parse::<u32>() {
                Ok(n) => n,
                Err(_) if rows.is_empty() => continue,
                Err(_) => return Err(bad("n is not an integer")),
            };
            let lambda = cols.get(1).ok_or_else(|| bad("missing lambda"))?.parse::<u64>().map_err(|_| bad("bad lambda"))?;
            let mu = match cols.get(2) {
                Some(s) if !s.is_empty() && *s != "-" => Some(s.parse::<i64>().map_err(|_| bad("bad mu"))?),
                _ => None,
            };
            rows.push(ThetaRow { n, lambda, mu });
        }
        let t = ThetaTable { p, k, j, psi: 0, form: form.to_string(), rows };
        t.validate()?;
        Ok(t)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("n\tlambda\tmu\n");
        for r in &self.rows {
            let mu = r.mu.map(|m| m.to_string()).unwrap_or_else(|| "-".into());
            out.push_str(&format!("{}\t{}\t{}\n", r.n, r.lambda, mu));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    #[serde(rename = "i")]
    I,
    #[serde(rename = "ii")]
    Ii,
    #[serde(rename = "iii")]
    Iii,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::I => "i",
            Branch::Ii => "ii",
            Branch::Iii => "iii",
        })
    }
}

/// Residuals of one parity class under one choice of `iota`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trajectory {
    /// Sign of the signed invariant this class determines.
    pub sign: i32,
    pub branch: Branch,
    pub iota: i64,
    pub residuals: Vec<(u32, i64)>,
    pub stable: Option<i64>,
    pub n0: Option<u32>,
    pub accepted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionReport {
    pub form: String,
    pub p: u64,
    pub k: u32,
    pub j: u32,
    pub lambda_plus: i64,
    pub lambda_minus: i64,
    pub mu_plus: Option<i64>,
    pub mu_minus: Option<i64>,
    pub iota_plus: i64,
    pub iota_minus: i64,
    pub branch: Branch,
    pub n0: u32,
    pub trajectories: Vec<Trajectory>,
}

impl ExtractionReport {
    pub fn lambda(&self, sign: i32) -> i64 {
        if sign > 0 {
            self.lambda_plus
        } else {
            self.lambda_minus
        }
    }

    /// Signed invariants for prediction; missing `mu` is taken as 0.
    pub fn signed(&self) -> SignedInvariants {
        SignedInvariants {
            lambda_plus: self.lambda_plus,
            lambda_minus: self.lambda_minus,
            mu_plus: self.mu_plus.unwrap_or(0),
            mu_minus: self.mu_minus.unwrap_or(0),
        }
    }
}

/// Value and starting `n` of the constant tail, if the last two entries agree.
fn constant_tail(seq: &[(u32, i64)]) -> Option<(i64, u32)> {
    let (&(_, last), rest) = seq.split_last()?;
    if rest.last().map(|x| x.1) != Some(last) {
        return None;
    }
    let start = seq.iter().rev().take_while(|x| x.1 == last).last().map(|x| x.0)?;
    Some((last, start))
}

fn rows_of_sign(table: &ThetaTable, s: i32) -> Vec<&ThetaRow> {
    table.rows.iter().filter(|r| r.n >= 1 && eps(r.n + 1) == s).collect()
}

fn lambda_residuals(ctx: &PrimeContext, k: u32, rows: &[&ThetaRow], c: i64) -> Vec<(u32, i64)> {
    rows.iter()
        .map(|r| (r.n, r.lambda as i64 - (k as i64 - 1) * qn(ctx, r.n) as i64 + c * ctx.t(r.n) as i64))
        .collect()
}

pub fn extract_signed_invariants(table: &ThetaTable) -> Result<ExtractionReport> {
    table.validate()?;
    let ctx = PrimeContext::new(table.p)?;
    let w = weight_constants(&ctx, table.k);
    let binom = ordp_int(&binomial((table.k - 2) as u64, table.j as u64), ctx.p).finite().unwrap_or(0);

    let mut trajectories = Vec::new();
    // (sign of lambda, iota, branch, lambda, n0, mu)
    let mut chosen = Vec::new();
    for s in [1, -1] {
        let rows = rows_of_sign(table, s);
        if rows.len() < 2 {
            return Err(MtError::InvalidContext(format!("need at least two rows with n of each parity (class {s:+})")));
        }
        let nu = w.nu_sign(s);
        let candidates = match w.iota(s) {
            Iota::Resolved(v) => vec![(v, Branch::I)],
            Iota::Branches { ge, lt } => vec![(ge, Branch::Iii), (lt, Branch::Ii)],
        };
        let mut accepted = Vec::new();
        for (iota, branch) in candidates {
            let residuals = lambda_residuals(&ctx, table.k, &rows, iota);
            let tail = constant_tail(&residuals);
            let ok = tail.is_some_and(|(r, _)| {
                r >= 0
                    && match branch {
                        Branch::I => true,
                        Branch::Ii => r < nu,
                        Branch::Iii => r >= nu,
                    }
            });
            let sign = ctx.star() * s;
            if ok {
                accepted.push((sign, iota, branch, tail.unwrap()));
            }
            trajectories.push(Trajectory {
                sign,
                branch,
                iota,
                residuals,
                stable: tail.map(|t| t.0),
                n0: tail.map(|t| t.1),
                accepted: ok,
            });
        }
        let traj_json = || serde_json::to_string(&trajectories).unwrap_or_default();
        match accepted.len() {
            0 => return Err(MtError::Unstable(traj_json())),
            1 => {}
            _ => return Err(MtError::InconsistentBranches(traj_json())),
        }
        let (sign, iota, branch, (lam, n0)) = accepted[0];
        let mu_res: Option<Vec<(u32, i64)>> = rows
            .iter()
            .map(|r| r.mu.map(|m| (r.n, m - iota - w.ordp_c(eps(r.n)) - binom)))
            .collect();
        let mu = mu_res.as_deref().and_then(constant_tail).map(|t| t.0);
        chosen.push((sign, iota, branch, lam, n0, mu));
    }
    if chosen[0].2 != chosen[1].2 {
        return Err(MtError::InconsistentBranches(format!(
            "parity classes select branches {} and {}: {}",
            chosen[0].2,
            chosen[1].2,
            serde_json::to_string(&trajectories).unwrap_or_default()
        )));
    }
    let pick = |sign: i32| chosen.iter().find(|c| c.0 == sign).copied().expect("both signs present");
    let (plus, minus) = (pick(1), pick(-1));
    Ok(ExtractionReport {
        form: table.form.clone(),
        p: table.p,
        k: table.k,
        j: table.j,
        lambda_plus: plus.3,
        lambda_minus: minus.3,
        mu_plus: plus.5,
        mu_minus: minus.5,
        iota_plus: plus.1,
        iota_minus: minus.1,
        branch: plus.2,
        n0: plus.4.max(minus.4),
        trajectories,
    })
}

/// `lambda(theta_n) = (k-1) q_n - c t_n + r_parity` on the tail of the table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralFit {
    pub c: i64,
    pub r_even: i64,
    pub r_odd: i64,
    /// The same constants indexed by the signed invariant they estimate.
    pub r_plus: i64,
    pub r_minus: i64,
    pub n0: u32,
}

pub fn generalized_fit(table: &ThetaTable) -> Result<GeneralFit> {
    table.validate()?;
    let ctx = PrimeContext::new(table.p)?;
    let even: Vec<&ThetaRow> = table.rows.iter().filter(|r| r.n >= 1 && r.n % 2 == 0).collect();
    let odd: Vec<&ThetaRow> = table.rows.iter().filter(|r| r.n % 2 == 1).collect();
    if even.len() < 3 || odd.len() < 3 {
        return Err(MtError::InvalidContext("generalized fit needs at least three rows of each parity".into()));
    }
    for c in 0..=table.k as i64 {
        let te = constant_tail(&lambda_residuals(&ctx, table.k, &even, c));
        let to = constant_tail(&lambda_residuals(&ctx, table.k, &odd, c));
        if let (Some((re, ne)), Some((ro, no))) = (te, to) {
            // n even gives eps(n+1) = -1
            let (r_plus, r_minus) = if ctx.star() > 0 { (ro, re) } else { (re, ro) };
            return Ok(GeneralFit { c, r_even: re, r_odd: ro, r_plus, r_minus, n0: ne.max(no) });
        }
    }
    let drift: Vec<(u32, i64)> = lambda_residuals(&ctx, table.k, &table.rows.iter().filter(|r| r.n >= 1).collect::<Vec<_>>(), 0);
    Err(MtError::NoFit(format!("no c in 0..={} gives constant tails; residuals at c = 0: {drift:?}", table.k)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceRecord {
    pub p: u64,
    pub form_f: String,
    pub form_g: String,
    pub lambda_plus_f: i64,
    pub lambda_minus_f: i64,
    pub g_odd_residual: i64,
    pub g_even_residual: i64,
    /// Relations hold reading the even-`n` residual of `g` as the sharp invariant.
    pub sharp_even_holds: bool,
    /// Relations hold reading the odd-`n` residual of `g` as the sharp invariant.
    pub sharp_odd_holds: bool,
    pub mapping: Option<String>,
    pub pass: bool,
}

/// Compare a weight `p+1` form against a congruent weight-2 form.
pub fn compare_congruent(f: &ExtractionReport, g: &ExtractionReport) -> Result<CongruenceRecord> {
    let p = f.p;
    if p != g.p || p == 2 || f.k as u64 != p + 1 || g.k != 2 {
        return Err(MtError::WrongWeights(format!(
            "need odd p with k(f) = p+1 and k(g) = 2; got p = {}/{}, k(f) = {}, k(g) = {}",
            f.p, g.p, f.k, g.k
        )));
    }
    let shift = p as i64 - 1;
    // odd p: odd n estimates lambda^+, even n estimates lambda^-
    let (odd, even) = (g.lambda_plus, g.lambda_minus);
    let holds = |sharp: i64, flat: i64| f.lambda_minus == sharp && f.lambda_plus == flat + shift;
    let sharp_even_holds = holds(even, odd);
    let sharp_odd_holds = holds(odd, even);
    let mapping = match (sharp_even_holds, sharp_odd_holds) {
        (true, true) => Some("both".to_string()),
        (true, false) => Some("sharp=even".to_string()),
        (false, true) => Some("sharp=odd".to_string()),
        (false, false) => None,
    };
    Ok(CongruenceRecord {
        p,
        form_f: f.form.clone(),
        form_g: g.form.clone(),
        lambda_plus_f: f.lambda_plus,
        lambda_minus_f: f.lambda_minus,
        g_odd_residual: odd,
        g_even_residual: even,
        sharp_even_holds,
        sharp_odd_holds,
        pass: mapping.is_some(),
        mapping,
    })
}

/// Predicted `ord_p` of the normalised twisted L-value at layer `n`, i.e.
/// `mu(theta_n) + lambda(theta_n) / t_n` from the signed invariants.
pub fn lvalue_valuation_report(report: &ExtractionReport, n: u32) -> Result<BigRational> {
    let ctx = PrimeContext::new(report.p)?;
    let s = ctx.star() * eps(n + 1);
    let mu = if s > 0 { report.mu_plus } else { report.mu_minus };
    if mu.is_none() {
        return Err(MtError::Unstable(format!("mu^{s:+} was not determined by the table")));
    }
    let pred = predict_theta_invariants(&ctx, report.k, report.j, &report.signed(), n)?;
    Ok(rat(pred.mu) + rat_frac(pred.lambda, ctx.t(n) as i64))
}

/// `mu + lambda / t_n` for directly computed invariants.
pub fn lvalue_valuation_from_theta(ctx: &PrimeContext, n: u32, lambda: u64, mu: i64) -> BigRational {
    rat(mu) + rat_frac(lambda as i64, ctx.t(n) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(p: u64, k: u32, first: u32, l: &[u64]) -> ThetaTable {
        ThetaTable::from_lambdas(p, k, "t", first, l)
    }

    #[test]
    fn weight_six_example() {
        let t = table(3, 6, 1, &[1, 5, 17, 47, 143, 425, 1277, 3827]);
        let r = extract_signed_invariants(&t).unwrap();
        assert_eq!((r.lambda_plus, r.lambda_minus, r.iota_plus, r.branch), (5, 1, 1, Branch::I));
        assert!(r.n0 <= 4);
        let f = generalized_fit(&t).unwrap();
        assert_eq!((f.c, f.r_plus, f.r_minus), (1, 5, 1));
    }

    #[test]
    fn weight_two_level_32() {
        let r = extract_signed_invariants(&table(3, 2, 1, &[0, 2, 6, 20])).unwrap();
        assert_eq!((r.lambda_plus, r.lambda_minus, r.iota_plus), (0, 0, 0));
    }

    #[test]
    fn exceptional_weight_small_branch() {
        let r = extract_signed_invariants(&table(3, 5, 1, &[2, 8, 26, 80, 242, 728])).unwrap();
        assert_eq!((r.lambda_plus, r.lambda_minus, r.branch), (2, 0, Branch::Ii));
        let iii = r.trajectories.iter().find(|t| t.branch == Branch::Iii).unwrap();
        assert!(!iii.accepted);
    }

    #[test]
    fn strange_fit() {
        let ctx = PrimeContext::new(3).unwrap();
        let l: Vec<u64> = (3..=8).map(|n| 3u64.pow(n) - 3u64.pow(n - 2) + qn(&ctx, n - 2)).collect();
        let f = generalized_fit(&table(3, 18, 3, &l)).unwrap();
        assert_eq!((f.c, f.r_even, f.r_odd), (5, 4, 12));
    }

    #[test]
    fn zero_table_has_no_fit() {
        assert!(matches!(generalized_fit(&table(3, 2, 1, &[0; 6])), Err(MtError::NoFit(_))));
    }

    #[test]
    fn round_trip() {
        let t = table(3, 6, 1, &[1, 5, 17, 47, 143, 425, 1277, 3827]);
        let r = extract_signed_invariants(&t).unwrap();
        let ctx = PrimeContext::new(3).unwrap();
        for row in t.rows.iter().filter(|x| x.n >= r.n0) {
            let p = predict_theta_invariants(&ctx, 6, 0, &r.signed(), row.n).unwrap();
            assert_eq!(p.lambda, row.lambda as i64);
        }
    }

    #[test]
    fn tsv_round_trip() {
        let mut t = table(3, 6, 1, &[1, 5, 17]);
        t.rows[1].mu = Some(1);
        let back = ThetaTable::from_tsv(&t.to_tsv(), 3, 6, 0, "t").unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn lvalue_weight_two() {
        let mut r = extract_signed_invariants(&table(3, 2, 1, &[0, 2, 6, 20])).unwrap();
        assert!(lvalue_valuation_report(&r, 2).is_err());
        r.mu_plus = Some(0);
        r.mu_minus = Some(0);
        assert_eq!(lvalue_valuation_report(&r, 2).unwrap(), rat_frac(2, 6));
    }

    #[test]
    fn congruence_level_256_needs_swapped_parity() {
        let mk = |k, lp, lm| ExtractionReport {
            form: String::new(),
            p: 3,
            k,
            j: 0,
            lambda_plus: lp,
            lambda_minus: lm,
            mu_plus: None,
            mu_minus: None,
            iota_plus: 0,
            iota_minus: 0,
            branch: Branch::I,
            n0: 1,
            trajectories: vec![],
        };
        let rec = compare_congruent(&mk(4, 9, 1), &mk(2, 1, 7)).unwrap();
        assert!(rec.pass && rec.sharp_odd_holds && !rec.sharp_even_holds);
        assert!(compare_congruent(&mk(2, 0, 0), &mk(2, 0, 0)).is_err());
    }
}
