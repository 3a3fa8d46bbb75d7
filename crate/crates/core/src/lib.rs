//! Top Segre numbers of tautological bundles on Hilbert schemes of points on
//! surfaces, computed exactly by three independent routes:
//!
//! - [`k3`]: the K3 closed formula `s_{k,g} = 2^k binom(g-2k+1, k)` and the
//!   recursion that rebuilds it from two vanishings per order;
//! - [`universal`]: the universal series `A, B, C, D` with
//!   `s(z) = A^d B^e C^pi D^kappa`, pinned down order by order from K3,
//!   abelian and blow-up data;
//! - [`lehn`]: Lehn's closed-form generating function, expanded in `z` by
//!   series reversion and composition.
//!
//! [`verify`] runs all cross-route checks; [`cli`] is the command-line front end.

pub mod cli;
pub mod error;
pub mod k3;
pub mod kernel;
pub mod lehn;
pub mod universal;
pub mod verify;

pub use error::{Error, Result};
pub use kernel::{ExactRational, TruncatedPowerSeries};
pub use universal::{Engine, Route, SegreTable, SurfaceInvariants, UniversalSeriesSet};
