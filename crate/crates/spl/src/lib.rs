//! IO, CLI, and experiment-harness layer over the exact core.

pub mod battery;
pub mod cli;
pub mod io;
pub mod mve;
