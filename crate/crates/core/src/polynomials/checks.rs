//! Log-concavity conditions on coefficient sequences.
//!
//! Every inequality is decided on exact values: the rational factors are
//! cross-multiplied into integer weights and the comparison runs on
//! [`Coefficient`]s, which never divide.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use super::coefficient::Coefficient;
use super::dense::Polynomial;
use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NewtonReport {
    pub holds_weak: bool,
    pub holds_strict: bool,
    /// Indices where the weak inequality fails.
    pub failures: Vec<usize>,
    /// Indices where the two sides are equal.
    pub equalities: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub holds: bool,
    /// Indices that violate positivity or the strict inequality, ascending.
    pub failures: Vec<usize>,
}

/// Newton's inequalities
/// `a_i^2 >= ((d-i+1)/(d-i)) * ((i+1)/i) * a_{i-1} a_{i+1}`, checked as
/// `(d-i) * i * a_i^2` against `(d-i+1) * (i+1) * a_{i-1} a_{i+1}`.
pub fn check_newton(p: &Polynomial) -> Result<NewtonReport> {
    let d = p.degree();
    if d < 2 {
        return Err(Error::DegreeTooSmall { degree: d, min: 2 });
    }
    let a = p.coeffs();
    let mut failures = Vec::new();
    let mut equalities = Vec::new();
    for i in 1..d {
        let lhs = &Coefficient::from(((d - i) * i) as u64) * &a[i].square();
        let rhs = &Coefficient::from(((d - i + 1) * (i + 1)) as u64) * &(&a[i - 1] * &a[i + 1]);
        match lhs.cmp(&rhs) {
            Ordering::Less => failures.push(i),
            Ordering::Equal => equalities.push(i),
            Ordering::Greater => {}
        }
    }
    Ok(NewtonReport {
        holds_weak: failures.is_empty(),
        holds_strict: failures.is_empty() && equalities.is_empty(),
        failures,
        equalities,
    })
}

/// `a_i > 0` for `1 <= i <= d` and `a_i^2 > tau * a_{i-1} a_{i+1}` for
/// `1 <= i < d`. The constant term may vanish.
pub fn check_tau_logconcave(p: &Polynomial, tau: &BigRational) -> Result<ConditionReport> {
    if !tau.is_positive() {
        return Err(Error::InvalidTau(format!("{tau} is not positive")));
    }
    check_with_factor(p, &Coefficient::from_rational(tau.clone()))
}

/// The Kurtz condition: the strict condition with factor 4.
pub fn check_kurtz(p: &Polynomial) -> Result<ConditionReport> {
    check_with_factor(p, &Coefficient::from(4u64))
}

/// The strict condition with factor `d^(2d)`, `d = deg p`.
pub fn check_strong(p: &Polynomial) -> Result<ConditionReport> {
    check_strong_with(p, &Limits::default())
}

pub fn check_strong_with(p: &Polynomial, limits: &Limits) -> Result<ConditionReport> {
    let d = p.degree();
    if d > limits.max_strong_degree {
        return Err(Error::ResourceLimit(format!(
            "d^(2d) for d = {d} exceeds the strong-condition cap {}",
            limits.max_strong_degree
        )));
    }
    check_with_factor(p, &strong_factor(d))
}

/// `d^(2d)` as an exact integer.
pub fn strong_factor(d: usize) -> Coefficient {
    Coefficient::from_integer(num_traits::pow(BigInt::from(d), 2 * d))
}

pub(crate) fn check_with_factor(p: &Polynomial, factor: &Coefficient) -> Result<ConditionReport> {
    let d = p.degree();
    if d < 1 {
        return Err(Error::DegreeTooSmall { degree: d, min: 1 });
    }
    let a = p.coeffs();
    let mut failures: Vec<usize> = (1..=d).filter(|&i| a[i].is_zero()).collect();
    for i in 1..d {
        if a[i].is_zero() {
            continue;
        }
        let rhs = factor * &(&a[i - 1] * &a[i + 1]);
        if a[i].square() <= rhs {
            failures.push(i);
        }
    }
    failures.sort_unstable();
    failures.dedup();
    Ok(ConditionReport {
        holds: failures.is_empty(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[u64]) -> Polynomial {
        Polynomial::from_u64s(c)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn newton_examples() {
        let r = check_newton(&p(&[1, 2, 1])).unwrap();
        assert!(r.holds_weak && !r.holds_strict);
        assert_eq!(r.equalities, vec![1]);

        let r = check_newton(&p(&[6, 11, 6, 1])).unwrap();
        assert!(r.holds_strict);

        let r = check_newton(&p(&[1, 1, 1])).unwrap();
        assert!(!r.holds_weak);
        assert_eq!(r.failures, vec![1]);

        assert_eq!(
            check_newton(&p(&[1, 1])),
            Err(Error::DegreeTooSmall { degree: 1, min: 2 })
        );
    }

    #[test]
    fn tau_examples() {
        assert!(check_tau_logconcave(&p(&[1, 3, 2]), &q(4, 1)).unwrap().holds);
        let r = check_tau_logconcave(&p(&[1, 2, 1]), &q(4, 1)).unwrap();
        assert!(!r.holds);
        assert_eq!(r.failures, vec![1]);
        assert!(check_tau_logconcave(&p(&[1, 4, 4, 1]), &q(2, 1)).unwrap().holds);
        assert!(check_tau_logconcave(&p(&[1, 4, 4, 1]), &q(0, 1)).is_err());
        assert!(check_tau_logconcave(&p(&[5]), &q(2, 1)).is_err());
    }

    #[test]
    fn kurtz_examples() {
        assert!(check_kurtz(&p(&[1, 3, 2])).unwrap().holds);
        assert!(!check_kurtz(&p(&[1, 2, 1])).unwrap().holds);
        // a_0 = 0: the i = 1 instance reads a_1^2 > 0.
        assert!(check_kurtz(&p(&[0, 1, 1])).unwrap().holds);
    }

    #[test]
    fn strong_examples() {
        let f2 = Polynomial::new(vec![
            Coefficient::one(),
            Coefficient::power_of_two(32),
            Coefficient::power_of_two(32),
            Coefficient::one(),
        ])
        .unwrap();
        assert_eq!(strong_factor(3), Coefficient::from(729u64));
        assert!(check_strong(&f2).unwrap().holds);
        assert!(!check_strong(&p(&[1, 1, 1])).unwrap().holds);
        let r = check_strong(&p(&[1, 0, 1 << 40, 1])).unwrap();
        assert!(!r.holds);
        assert!(r.failures.contains(&1));
        let tight = Limits {
            max_strong_degree: 2,
            ..Limits::default()
        };
        assert!(matches!(check_strong_with(&f2, &tight), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn zero_interior_coefficient_fails_everywhere() {
        let r = check_tau_logconcave(&p(&[1, 5, 0, 5]), &q(1, 2)).unwrap();
        assert!(!r.holds);
        assert!(r.failures.contains(&2));
    }
}
