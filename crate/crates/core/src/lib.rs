//! Welfare-maximizing allocation of indivisible items to agents whose bundle
//! value is a quantile of their item values.
//!
//! An agent with quantile `tau` values a bundle `S` at the `ceil(tau * |S|)`-th
//! lowest item value (the lowest when `tau = 0`). The crate provides exact
//! evaluation, utilitarian and egalitarian solvers for goods and chores, a
//! matching engine, and an exhaustive oracle for certification.

pub mod bench;
pub mod chores;
pub mod error;
pub mod esw;
pub mod generate;
pub mod io;
pub mod matching;
pub mod model;
pub mod oracle;
pub mod quantile;
mod partial;
mod search;
pub mod solve;
pub mod usw;
pub mod valuation;

pub use error::{Error, Result};
pub use model::{Allocation, Instance, Kind, SolveReport, Value, Welfare};
pub use quantile::{quantile_index, Quantile};
pub use solve::{solve, Algorithm};
pub use valuation::{bundle_value, esc, esw, threshold_binary, usc, usw, Objective};
