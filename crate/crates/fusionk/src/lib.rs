//! File formats and the `fusionk` command line on top of [`fusionk_core`].

pub mod checks;
pub mod cli;
pub mod export;
pub mod json;

pub use fusionk_core as core;
