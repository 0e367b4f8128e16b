//! File formats, command-line front end and multi-threaded drivers for `nogo-core`.

pub mod checks;
pub mod cli;
pub mod data;
pub mod parallel;
pub mod sat;
pub mod schema;
