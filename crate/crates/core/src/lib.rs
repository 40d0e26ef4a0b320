//! Sieve-backed prime counting and empirical verification of explicit bounds
//! on π(x).
//!
//! - [`table`]: segmented sieve, exact π(x), compensated θ(x)
//! - [`bounds`]: the bound expressions and [`BoundReport`]s
//! - [`analytic`]: Li(x), piecewise-exact prime integrals, Abel identities
//! - [`proof`]: the even-integer counting argument in integer arithmetic
//! - [`scan`]: range scans, thresholds, CSV tables
//!
//! ```
//! use pibound::{build_table, bounds::{evaluate, BoundKind}};
//!
//! let table = build_table(10_000).unwrap();
//! let r = evaluate(BoundKind::Theorem1Ceiling, 10.0, &table).unwrap();
//! assert_eq!((r.pi_x, r.bound), (4, 4.0));
//! ```

// Negated float comparisons are how NaN inputs get rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod bounds;
pub mod cache;
mod error;
pub mod proof;
pub mod scan;
pub mod sieve;
pub mod sum;
pub mod table;

pub use bounds::{BoundKind, BoundReport};
pub use error::{Error, Result};
pub use table::{build_table, build_table_with, PrimeTable, TableConfig};
