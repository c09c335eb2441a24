pub mod arith;
pub mod error;
pub mod field;

pub use error::{Error, Result};
pub mod primes;
pub mod closure;
pub mod dense;
pub mod formula;
pub mod squares;
pub mod config;
pub mod suite;
