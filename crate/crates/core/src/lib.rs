//! Certified lower bounds for the Garsia entropy of algebraic `β ∈ (1, 2)`
//! and the resulting bounds on the dimension of the Bernoulli convolution.
//!
//! [`numberfield`] does exact arithmetic in `Z[β]`, [`graph`] builds the
//! transition graph on differences of `{0, 1}` expansions, and [`entropy`]
//! turns it into estimators with outward-rounded enclosures.
//! [`oracle`] recomputes small cases by enumerating words directly.

#![no_std]

extern crate alloc;

pub mod bounds;
pub mod entropy;
pub mod error;
pub mod graph;
pub mod interval;
pub mod numberfield;
pub mod oracle;

pub use error::{Error, Result};
