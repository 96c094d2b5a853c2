//! IO companion to `derivkit-core`: JSON schemas and text formats for the
//! algebraic objects, plus the `derivkit` command-line front end.

pub mod cli;
pub mod formats;

pub use derivkit_core as core;
