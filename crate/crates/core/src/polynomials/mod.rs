//! Exact univariate polynomials over nonnegative coefficients, the
//! log-concavity checkers, and Sturm root counting.

mod checks;
mod coefficient;
mod dense;
mod sturm;

pub use checks::{
    check_kurtz, check_newton, check_strong, check_strong_with, check_tau_logconcave, strong_factor,
    ConditionReport, NewtonReport,
};
pub(crate) use checks::check_with_factor;
pub use coefficient::Coefficient;
pub use dense::{parse_terms, Polynomial};
pub use sturm::sturm_distinct_real_roots;
