//! Brute-force reference implementations shared by the integration and
//! acceptance tests. None of these call the closed forms they check.
#![allow(dead_code)]

pub mod cuts;
pub mod ideals;
pub mod instances;
pub mod spectrum;
pub mod support;
