//! Command-line front end: a term language for operadic expressions, suite
//! runners and CSV/SVG writers.

pub mod cli;
pub mod emit;
pub mod eval;
pub mod term;
