//! Subsets of `[N]`, `Z/MZ` and `Z/pZ x Z/pZ` with few popular differences.
//!
//! The crate computes representation functions `r_{A-A}` and their maxima
//! `M_D(A) = max_{1 <= d < D} r_{A-A}(d)`, builds the explicit constructions that keep
//! `M_D` small at a given density, evaluates the matching lower and upper bounds on
//! `f_D(N, alpha)` exactly, and finds `f_D(N, alpha)` itself by exhaustive search at small `N`.

pub mod bounds;
pub mod constructions;
pub mod error;
pub mod numtheory;
pub mod oracle;
pub mod rational;
pub mod repr;
pub mod sets;
pub mod verify;

pub use error::{Error, Result};
