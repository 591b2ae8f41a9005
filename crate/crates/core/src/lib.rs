//! Exact combinatorics of the operator `(cD)^n`.
//!
//! The crate computes the normal-ordered expansion of `(c(x) D)^n f` in
//! several independent ways (a two-term recurrence, inversion sequences,
//! Comtet's closed sum and a sum over types `(k, mu)` weighted by counts of
//! k-Young tableaux), the g-index of standard and k-Young tableaux, and a
//! collection of Eulerian-type polynomial families, each of which is built by
//! at least two independent constructions and checked against brute-force
//! enumeration in [`oracles`].
//!
//! All arithmetic is exact: integers are [`num_bigint::BigInt`], rationals are
//! [`num_rational::BigRational`].

pub mod algebra;
pub mod combinat;
mod error;
pub mod families;
pub mod grammars;
pub mod operator;
pub mod oracles;
pub mod tableaux;

pub use error::{Error, Result};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
