//! Matching engines for regular expressions extended with intersection,
//! complement and backreference, plus executable reductions from Orthogonal
//! Vectors and 3k-Clique and the brute-force oracles used to check them.
//!
//! The crate is `no_std` and only needs `alloc`. Everything that touches the
//! file system, the clock or randomness lives in the `xre-harness` crate.
//!
//! Engines:
//!
//! * [`thompson`]: Thompson NFA construction and simulation for plain patterns.
//! * [`ere`]: the cubic bottom-up dynamic program over substring relations,
//!   supporting `&` (intersection) and `~` (complement).
//! * [`rewb`]: configuration-space search for capturing groups and
//!   backreferences.
//!
//! [`oracles`] holds independent reference implementations that share no
//! matching code with the engines.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;

pub mod ere;
pub mod oracles;
pub mod reductions;
pub mod relation;
pub mod rewb;
pub mod syntax;
pub mod thompson;

pub use ere::{ere_match, match_relation};
pub use error::Error;
pub use relation::PositionRelation;
pub use rewb::{capture_count, rewb_match};
pub use syntax::{classify, parse, pattern_length, render, Alphabet, Ast, Dialect, Symbol};
pub use thompson::{compile_nfa, nfa_match, Nfa};

pub type Result<T, E = Error> = core::result::Result<T, E>;
