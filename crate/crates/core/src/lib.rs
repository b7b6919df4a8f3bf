//! Exponential-rate calculators and exact finite oracles for Euclidean and
//! Manhattan Ramsey problems and for families with forbidden intersections.
//!
//! Every rate is a [`rates::GrowthRate`]: the natural log of the base `b`
//! in a bound of the form `(b + o(1))^n`. The `o(1)` terms are not modeled.

pub mod constants;
pub mod embeddings;
mod error;
pub mod family_oracle;
pub mod partition_search;
pub mod prime_split;
pub mod product_compose;
pub mod rates;
pub mod simplex_opt;
pub mod tree_concat;

pub use error::{Error, Result};
