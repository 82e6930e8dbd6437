//! File formats, synthetic data, experiment grids and performance profiles
//! on top of [`ibfgs_core`].

pub mod data;
pub mod eval;
pub mod experiment;
pub mod profile;
pub mod trace_io;

pub use ibfgs_core as core;
