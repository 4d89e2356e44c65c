//! Form ingestion, the symbol cache, the compute pipeline and the oracle
//! harness behind the `mt` binary.

pub mod build;
pub mod cache;
pub mod compute;
pub mod oracle;
pub mod series_file;
pub mod spec;

pub use build::{build_number_field, build_rational, NumberFieldForm, RationalForm};
pub use cache::Cache;
pub use compute::{compute_number_field, compute_rational, default_n_max, CheckRecord, ComputeOptions, ComputeReport};
pub use oracle::{run_oracle, OracleCheck, OracleSummary};
pub use series_file::{parse_series, series_report, SeriesReport};
pub use spec::{ingest_form, FormSpec};

use crate::arith::PrimeContext;
use crate::error::{MtError, Result};

/// Build (or load) the symbols of `spec` and run the compute pipeline at `spec.p`.
pub fn compute_form(spec: &FormSpec, cache: Option<&Cache>, opts: &ComputeOptions) -> Result<ComputeReport> {
    let ctx = PrimeContext::new(spec.p)?;
    if spec.is_rational() {
        let form = match cache {
            Some(c) => c.rational(spec)?.0,
            None => build_rational(spec)?,
        };
        compute_rational(spec, &form, &ctx, opts)
    } else {
        let form = build_number_field(spec, ctx.m)?;
        compute_number_field(spec, &form, &ctx, opts)
    }
}

/// Process exit status for an error: 2 for failed checks, 3 for precision and
/// branch problems, 1 otherwise.
pub fn exit_code(e: &MtError) -> i32 {
    match e {
        MtError::DivisibilityFails(_) => 2,
        MtError::PrecisionInsufficient(_)
        | MtError::TailNotControlled(_)
        | MtError::UnsupportedBranch(_)
        | MtError::Unstable(_)
        | MtError::InconsistentBranches(_)
        | MtError::NoFit(_)
        | MtError::RamifiedPrime(_)
        | MtError::RamifiedContext => 3,
        _ => 1,
    }
}
