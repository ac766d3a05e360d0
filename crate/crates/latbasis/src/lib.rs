//! Lattice bases from integer generators, in exact arithmetic.
//!
//! Given integer vectors that generate a lattice, this crate computes a
//! true basis of that lattice: a reference algorithm built on exchange
//! steps, a faster one that folds all leftover generators through gcd
//! translate chains after a single exact solve, a projection-based
//! variant for rank-deficient inputs, and a greedy size reduction for the
//! result. Brute-force oracles (parallelepiped enumeration, minor-gcd
//! determinants) make every claim checkable on small instances, and a
//! thin binary exposes the lot on the command line.
//!
//! Start with [`fast_basis`], or run the programs under `examples/`.

pub mod arith;
pub mod balance;
pub mod basic;
pub mod cli;
mod error;
pub mod fast;
pub mod instances;
pub mod io;
pub mod linalg;
pub mod matrix;
pub mod oracles;
pub mod xadic;

pub use arith::{Int, Rat};
pub use error::Error;
pub use fast::{fast_basis, lowrank_basis, BasisResult};
pub use matrix::{IntMatrix, RatMatrix};
