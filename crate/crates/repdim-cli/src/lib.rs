//! Support library for the `repdim` command line workbench: file formats,
//! the built-in example corpus, seeded module generation, generator
//! search, and structured run reports. The binary in `main.rs` is a thin
//! argument-parsing layer over these modules.

pub mod corpus;
pub mod parse;
pub mod random;
pub mod report;
pub mod search;
