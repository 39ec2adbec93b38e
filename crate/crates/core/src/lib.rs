//! Constant function market makers whose trading function is a weighted
//! generalized (power) mean, the weighted geometric mean, or a
//! quasi-arithmetic f-mean.
//!
//! - [`means`]: mean evaluation, stable near `p = 0`.
//! - [`probes`]: concavity, superadditivity and homogeneity gap functions.
//! - [`pool`]: pool state, trade validation and closed-form swap solvers.
//! - [`analytics`]: spot rates, slippage and the exponent schedule.
//! - [`experiments`]: the slippage / trade-size scaling sweep and slope fits.
//! - [`config`], [`report`], [`cli`]: file formats and the command line.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytics;
pub mod cli;
pub mod config;
pub mod error;
pub mod experiments;
pub mod means;
pub mod pool;
pub mod probes;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use means::{FKind, MeanSpec, Weights};
pub use pool::{BuyLimit, Pool, Trade, TradeQuote, DEFAULT_REL_TOL};
