//! Exact verification kernel for Bethe vectors of gl(2|1)- and gl(1|2)-invariant
//! composite models realized on fundamental spin chains.
//!
//! Everything is computed over exact rationals, optionally deformed by a single
//! infinitesimal `ε` so that removable singularities can be resolved by a limit.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod actions;
pub mod bethe;
pub mod composite;
pub mod error;
pub mod formula;
pub mod gl12;
pub mod graded;
pub mod monodromy;
pub mod notation;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{EpsScalar, Rational};
