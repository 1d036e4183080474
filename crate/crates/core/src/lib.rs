//! Spectral geometry lab for Killing-type one-forms.

// `!(x > 0.0)` is used on purpose so that NaN fails positivity checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod curvature;
pub mod error;
pub mod exterior;
pub mod fields;
pub mod mesh;
pub mod sparse;
pub mod spectral;
pub mod sphere_oracle;
pub mod verify;

pub use error::{Error, Result};
