//! High-precision evaluation of the multiple elliptic Gamma hierarchy and of
//! conjectural higher elliptic units over number fields with exactly one
//! complex place, together with the exact linear algebra (HNF ideal
//! arithmetic, cone point enumeration) and LLL-based integer-relation
//! detection needed to certify the computed values against minimal
//! polynomials.
//!
//! The crate is organized as a library; `examples/` holds one runnable
//! example per capability and the `ellipgamma` binary exposes the same
//! machinery as subcommands (`gamma`, `unit`, `nfield`, `verify-all`).

pub mod error;
pub mod mpnum;
pub mod nfield;
pub mod gamma;
pub mod units;
pub mod recognize;
pub mod config;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
