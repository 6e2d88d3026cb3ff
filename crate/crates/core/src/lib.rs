//! Exact tools for log-concave polynomials built from sums of products of
//! sparse nonnegative polynomials.
//!
//! * [`polynomials`]: exact coefficients, dense polynomials, log-concavity
//!   checkers and Sturm root counting.
//! * [`geometry`]: log-lifted planar points, exact orientation, hulls,
//!   Minkowski sums and maximum convex-position subsets.
//! * [`sps`]: sum-of-products expressions, expansion, degree-bound verifiers,
//!   the sparse-factor witness and the lifting construction.
//! * [`families`]: the explicit log-concave families and their multilinear
//!   encoding.
//! * [`oracle`]: brute-force oracles, seeded generators and experiment drivers.
//! * [`selftest`]: the acceptance criteria, runnable from the CLI and tests.

pub mod cli;
pub mod error;
pub mod exec;
pub mod families;
pub mod geometry;
pub mod limits;
pub mod oracle;
pub mod polynomials;
pub mod selftest;
pub mod sps;

pub use error::{Error, Result};
pub use exec::Exec;
pub use limits::Limits;
