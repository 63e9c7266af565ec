//! Numerical toolkit for subordination on the unit disk: analytic maps,
//! winding-number geometry, boundary integrals, weighted Green functions
//! and coefficient inequalities.

// `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coeffs;
pub mod error;
pub mod geometry;
pub mod lelong;
pub mod maps;
pub mod par;
pub mod poly;
pub mod potential;
pub mod report;
pub mod roots;

pub use error::{Error, Result};
