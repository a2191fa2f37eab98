//! Generators, file formats, verification campaigns and benchmarks built on
//! `xre-core`, plus the `xre` command line.

pub mod bench;
pub mod cli;
pub mod engine;
pub mod formats;
pub mod gen;
pub mod verify;

pub use engine::Engine;
