//! Incremental quasi-Newton methods for nonsmooth, nonconvex finite sums,
//! specialized to the transductive SVM objective.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod baseline;
pub mod linalg;
pub mod objective;
pub mod problem;
pub mod rng;
pub mod solver;
pub mod trace;

pub use baseline::{run_subgradient, run_subgradient_from, BaselineConfig, StepRule};
pub use linalg::{LinalgError, SymMatrix, Vector};
pub use objective::{Dataset, Label, ModelPoint, ObjectiveConfig, ObjectiveError, Partition};
pub use problem::{FiniteSum, QuadraticSum, TsvmProblem};
pub use solver::{
    run, run_from, run_tsvm, IncrementalBfgs, IndexRule, SolverConfig, SolverError, StepPolicy,
    Variant,
};
pub use trace::{IterationRecord, RunTrace};
