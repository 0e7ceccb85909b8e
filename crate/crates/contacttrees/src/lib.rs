//! File formats, command-line interface and HTTP service for ContactTrees.
//!
//! The layout engine itself lives in [`contacttrees_core`], re-exported
//! here as [`core`].

pub mod cli;
pub mod formats;
pub mod report;
pub mod service;

pub use contacttrees_core as core;
