//! Lattice invariants of resolution graphs of normal surface singularities:
//! fundamental and canonical cycles, elliptic sequences, the extension
//! criterion and monomial condition, and the strata index sets, together with
//! brute-force oracles.

#![allow(clippy::needless_range_loop)]

#[cfg(feature = "cli")]
pub mod cli;
pub mod criteria;
pub mod ellipsoid;
pub mod ellseq;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod laufer;
pub mod lattice;
pub mod linalg;
pub mod oracle;
pub mod rat;
pub mod report;
pub mod strata;

pub use error::{Error, Result};
pub use lattice::{Cycle, GraphSpec, ResolutionGraph};
