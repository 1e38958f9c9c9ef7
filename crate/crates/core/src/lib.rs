//! Toolkit for optimal ternary cyclic codes.
//!
//! The codes in question have length 3^m - 1 over GF(3), dimension
//! 3^m - 1 - 2m, and minimum distance 4, which meets the sphere-packing
//! bound. A code is determined by an exponent e: its generator polynomial
//! is the product of the minimal polynomials of alpha and alpha^e for a
//! primitive element alpha of GF(3^m). The crate provides:
//!
//! - [`gf3poly`]: packed polynomial arithmetic and factorization over GF(3);
//! - [`gfext`]: GF(3^m) contexts, minimal polynomials, Zech tables;
//! - [`numthy`]: cyclotomic cosets, gcd closed forms, congruence solvers;
//! - [`codes`]: code construction, the sphere-packing bound, and a
//!   syndrome-based minimum-weight oracle;
//! - [`checker`]: the three-condition optimality test with exact solution
//!   counts, plus witness-factor verification for out-of-reach field sizes;
//! - [`families`]: the named exponent families, nonexistence scanners,
//!   counterexample hunts, and the regression catalog.

pub mod checker;
pub mod codes;
pub mod config;
pub mod error;
pub mod families;
pub mod gf3poly;
pub mod gfext;
pub mod numthy;

pub use config::{OutputFormat, RunConfig};
pub use error::{Gf3Error, Result};
