//! Command-line front end for `garsia-core`: graph files, a graph cache,
//! degree sweeps and report rendering.

pub mod cache;
pub mod commands;
pub mod format;
pub mod sweep;

pub use commands::{exit_code, run};
