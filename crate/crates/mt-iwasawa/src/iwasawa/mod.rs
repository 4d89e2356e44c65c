//! Elements of `Lambda = O[[T]]` and `Lambda_n = O[T]/(omega_n)`, their Iwasawa
//! invariants, and the finite-layer transfer results for p-large series.

pub mod division;
pub mod newton;
pub mod plarge;
pub mod random;
pub mod series;

pub use division::{division_bound_violation, division_terms, remainder_quotient};
pub use newton::{b_region_contains, f_bound, newton_polygon, NewtonPolygon};
pub use plarge::{is_p_large, layer_invariants_via_theorem, p_large_profile, PLargeProfile};
pub use series::{invariants, omega, project, project_truncated, InvariantPair, LayerPolynomial};
