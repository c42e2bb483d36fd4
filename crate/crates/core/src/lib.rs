//! Exact symbolic engine for the h-deformed quantum plane.
//!
//! Coefficients are Laurent polynomials in the deformation parameters over the
//! Gaussian rationals ([`scalar`]); coordinate algebras are presented by ordered
//! generators and swap rules ([`algebra`]); forms and tensors live in
//! [`calculus`].

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod calculus;
pub mod climit;
pub mod error;
pub mod geometry;
pub mod par;
pub mod qgroup;
pub mod report;
pub mod scalar;
pub mod suites;

pub use error::{Error, Result};
