//! Exact formal codegrees of fusion rings, spherical categorification
//! obstructions, and certified searches for small global dimensions.
//!
//! Everything in this crate is exact or certified: polynomials carry
//! arbitrary-precision integer coefficients, real roots are designated by
//! rational isolating intervals, and every comparison against an irrational
//! constant is decided on outward-rounded enclosures refined until the sign
//! is certain (or an [`Error::Ambiguity`] is raised).
//!
//! The crate is `no_std` and only needs `alloc`. File formats, rendering and
//! the command-line driver live in the `fgap` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod algnum;
mod error;
pub mod fusionring;
pub mod gapsearch;
pub mod obstruct;

pub use error::{Error, Result};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
