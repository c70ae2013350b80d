//! Derivative-free local search for box-constrained black-box problems and a
//! small harness for benchmarking it on BBOB-style functions.
//!
//! The optimizers are the Hooke-Jeeves pattern search ([`optimizers::hj_sweep`]),
//! MTS-LS1 ([`optimizers::mts_ls1_sweep`]) and BSrr, a round-robin driver for the
//! Brent-STEP univariate hybrid ([`linesearch::bsrr_run_trial`]). The [`bench`]
//! module turns trials into expected-runtime tables, ECDFs and rank-sum tests.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bench;
pub mod error;
pub mod linesearch;
pub mod optimizers;
pub mod problems;

pub use error::{Error, Result};
pub use problems::{EvaluationRecorder, FunctionId, Objective, Problem};
