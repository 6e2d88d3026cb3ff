use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::{LogPoint, PointSet};
use crate::limits::Limits;
use crate::polynomials::{Coefficient, Polynomial};

/// A polynomial stored as `(exponent, coefficient)` terms with strictly
/// increasing exponents and strictly positive coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SparsePoly {
    terms: Vec<(u64, Coefficient)>,
}

impl SparsePoly {
    /// Terms may arrive in any order; repeated exponents and nonpositive
    /// coefficients are rejected.
    pub fn new(mut terms: Vec<(u64, Coefficient)>) -> Result<Self> {
        terms.sort_by_key(|(e, _)| *e);
        for w in terms.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::ShapeError(format!("exponent {} appears twice", w[0].0)));
            }
        }
        if let Some((e, c)) = terms.iter().find(|(_, c)| !c.is_positive()) {
            return Err(Error::PreconditionFailed(format!(
                "coefficient {c} of X^{e} is not positive"
            )));
        }
        Ok(SparsePoly { terms })
    }

    pub fn from_u64s(terms: &[(u64, u64)]) -> Result<Self> {
        Self::new(terms.iter().map(|&(e, c)| (e, Coefficient::from(c))).collect())
    }

    pub fn one() -> Self {
        SparsePoly {
            terms: vec![(0, Coefficient::one())],
        }
    }

    pub fn from_polynomial(p: &Polynomial) -> Self {
        SparsePoly {
            terms: p
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as u64, c.clone()))
                .collect(),
        }
    }

    pub fn terms(&self) -> &[(u64, Coefficient)] {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.terms.last().map_or(0, |(e, _)| *e)
    }

    pub fn mul(&self, other: &SparsePoly, limits: &Limits) -> Result<SparsePoly> {
        let mut acc: BTreeMap<u64, Coefficient> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let prod = ca * cb;
                let slot = acc.entry(ea + eb).or_insert_with(Coefficient::zero);
                *slot = slot.checked_add(&prod, limits.max_pow2_span)?;
            }
        }
        Ok(SparsePoly {
            terms: acc.into_iter().collect(),
        })
    }

    pub fn to_polynomial(&self, limits: &Limits) -> Result<Polynomial> {
        let degree = self.degree() as usize;
        if degree > limits.max_dense_degree {
            return Err(Error::ResourceLimit(format!("degree {degree} exceeds the dense cap")));
        }
        let mut coeffs = vec![Coefficient::zero(); degree + 1];
        for (e, c) in &self.terms {
            coeffs[*e as usize] = c.clone();
        }
        Polynomial::with_limits(coeffs, limits)
    }

    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let e = i32::try_from(*e).map_err(|_| Error::ResourceLimit("exponent too large".into()))?;
            acc += c.to_rational(1 << 20)? * x.pow(e);
        }
        Ok(acc)
    }

    /// The lifted point set `{(e, log c)}`.
    pub fn points(&self) -> PointSet {
        self.terms
            .iter()
            .map(|(e, c)| LogPoint::lifted(*e, c.clone()).expect("coefficients are positive"))
            .collect()
    }
}
