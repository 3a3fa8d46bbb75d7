//! Exact arithmetic kernel: rationals and truncated power series.

pub mod rational;
pub mod series;

pub use rational::{format_rational, frac, int, is_canonical, parse_rational, ExactRational};
pub use series::{series_arith, ArithOp, TruncatedPowerSeries};
