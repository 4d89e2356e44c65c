//! Modular symbols for `Gamma_0(N)` with trivial character: Manin presentation,
//! Hecke operators, the star involution, boundary map, and eigen-functionals
//! evaluated along paths `{a/m, inf}`.

pub mod eigen;
pub mod p1;
pub mod path;
pub mod space;

pub use eigen::{eigenspace, refine, split, EigenSymbol};
pub use p1::P1List;
pub use path::{Cusp, Form};
pub use space::{cusps_equivalent, Images, SymbolSpace};
