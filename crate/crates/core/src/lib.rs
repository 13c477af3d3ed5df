//! Algorithmic quadratic Goldreich-Levin over F_2^n.

pub mod bruteforce;
pub mod bsg;
pub mod cli;
pub mod decompose;
pub mod error;
pub mod f2;
pub mod fourier;
pub mod functions;
pub mod model_refine;
pub mod quad_recovery;
pub mod rng;

pub use error::{Error, Result};
