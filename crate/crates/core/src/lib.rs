//! Exact cut-monoid arithmetic, filter and min-formula quasi-valuations over
//! lexicographic valuation domains, and finite checks of the lying-over,
//! going-up/down and incomparability properties of prime spectra.

pub mod algebra;
pub mod error;
pub mod field_model;
pub mod fixtures;
pub mod json;
pub mod ordered_values;
pub mod quasival;
pub mod spectrum;
pub mod verdict;
pub mod verify;

pub use error::{Error, Result};
pub use verdict::Verdict;
