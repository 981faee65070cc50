//! Spectrum and statistical thermodynamics of a quantum particle confined to
//! a half-line by a Robin wall and pushed against it by a uniform field.

pub mod canonical;
pub mod error;
pub mod grand_canonical;
pub mod numeric;
pub mod selftest;
pub mod specfun;
pub mod spectrum;
pub mod summation;
pub mod sweep_io;

pub use error::{Error, Result};
