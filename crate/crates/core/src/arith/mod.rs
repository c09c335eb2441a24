//! Exact arithmetic: rationals, dense polynomials over generic rings, finite
//! fields and integer polynomials modulo prime powers.

pub mod factor;
pub mod fp;
pub mod gf;
pub mod poly;
pub mod rational;
pub mod ring;
pub mod text;
pub mod zpoly;
