//! Mazur-Tate elements of non-ordinary newforms and the Iwasawa invariants
//! of their images in the finite layers of the cyclotomic Z_p-extension.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`]: exact integers and rationals, p-adic valuations, residue rings
//!   `Z/p^M` and unramified `Z_q`, Teichmuller lifts, discrete logs, resultants
//!   and number fields.
//! * [`iwasawa`]: elements of `Lambda = O[[T]]` and `Lambda_n`, their invariants,
//!   reduction modulo `omega_n`, division terms, p-largeness and Newton polygons.
//! * [`cyclotomic`]: cyclotomic factors, half-logarithms at layer n and the
//!   weight constants that control the drop in lambda.
//! * [`modsym`]: Manin-symbol presentation of weight-k modular symbols for
//!   `Gamma_0(N)`, Hecke operators and eigensymbols.
//! * [`mazur_tate`]: assembly of `theta_{n,j}^psi` and its consistency checks.
//! * [`extraction`]: recovering signed invariants from sequences of layer invariants.
//! * [`io`]: form specifications, caching, tables and the commands behind the `mt` binary.

pub mod arith;
pub mod cyclotomic;
pub mod error;
pub mod extraction;
pub mod io;
pub mod iwasawa;
pub mod mazur_tate;
pub mod modsym;

pub use error::{MtError, Result};
