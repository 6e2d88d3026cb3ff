use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::coefficient::Coefficient;
use crate::error::{Error, Result};
use crate::limits::Limits;

/// A univariate polynomial with nonnegative exact coefficients, stored densely.
///
/// `coeffs[i]` is the coefficient of `X^i`. Trailing zeros are trimmed, so the
/// last stored coefficient is nonzero unless the polynomial is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Coefficient>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Coefficient>) -> Result<Self> {
        Self::with_limits(coeffs, &Limits::default())
    }

    pub fn with_limits(mut coeffs: Vec<Coefficient>, limits: &Limits) -> Result<Self> {
        if let Some(i) = coeffs.iter().position(Coefficient::is_negative) {
            return Err(Error::NegativeCoefficient(i));
        }
        while coeffs.last().is_some_and(Coefficient::is_zero) {
            coeffs.pop();
        }
        if coeffs.len() > limits.max_dense_degree.saturating_add(1) {
            return Err(Error::ResourceLimit(format!(
                "degree {} exceeds the dense cap {}",
                coeffs.len() - 1,
                limits.max_dense_degree
            )));
        }
        Ok(Polynomial { coeffs })
    }

    /// Convenience constructor from small integer coefficients.
    pub fn from_u64s(coeffs: &[u64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Coefficient::from(c)).collect()).expect("nonnegative")
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial {
            coeffs: vec![Coefficient::one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Coefficient] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Coefficient {
        self.coeffs.get(i).cloned().unwrap_or_else(Coefficient::zero)
    }

    /// Number of nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        Polynomial { coeffs }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Coefficient::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Polynomial { coeffs }
    }

    /// Horner evaluation at a rational point. Coefficients are materialized.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_rational(1 << 20)?;
        }
        Ok(acc)
    }

    /// Parse the one-term-per-line text format.
    pub fn from_text(text: &str) -> Result<Self> {
        let terms = parse_terms(text)?;
        let degree = terms.iter().map(|(e, _)| *e).max().unwrap_or(0);
        if degree > Limits::default().max_dense_degree {
            return Err(Error::ResourceLimit(format!("degree {degree} exceeds the dense cap")));
        }
        let mut coeffs = vec![Coefficient::zero(); degree + 1];
        for (e, c) in terms {
            coeffs[e] = c;
        }
        Self::new(coeffs)
    }

    /// Render in the text format, one nonzero term per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            out.push_str(&format!("{i} {c}\n"));
        }
        out
    }
}

/// Parse `<exponent> <coefficient>` lines. Signed coefficients are accepted
/// here; `#` lines and blank lines are skipped, repeated exponents are rejected.
pub fn parse_terms(text: &str) -> Result<Vec<(usize, Coefficient)>> {
    let mut terms: Vec<(usize, Coefficient)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(e), Some(c), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::Parse(format!("line {}: expected `<exponent> <coefficient>`", lineno + 1)));
        };
        let e: usize = e
            .parse()
            .map_err(|_| Error::Parse(format!("line {}: bad exponent {e:?}", lineno + 1)))?;
        let c: Coefficient = c
            .parse()
            .map_err(|err| Error::Parse(format!("line {}: {err}", lineno + 1)))?;
        if terms.iter().any(|(prev, _)| *prev == e) {
            return Err(Error::Parse(format!("line {}: exponent {e} repeated", lineno + 1)));
        }
        terms.push((e, c));
    }
    terms.sort_by_key(|(e, _)| *e);
    Ok(terms)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*X")?,
                _ => write!(f, "{c}*X^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[u64]) -> Polynomial {
        Polynomial::from_u64s(c)
    }

    #[test]
    fn addition() {
        assert_eq!(p(&[1, 1]).add(&p(&[1, 1])), p(&[2, 2]));
        assert_eq!(p(&[3, 0, 7]).add(&Polynomial::zero()), p(&[3, 0, 7]));
        assert_eq!(p(&[1, 0, 2]).add(&p(&[0, 3])), p(&[1, 3, 2]));
    }

    #[test]
    fn multiplication() {
        assert_eq!(p(&[1, 1]).mul(&p(&[1, 1])), p(&[1, 2, 1]));
        assert_eq!(p(&[5, 0, 3]).mul(&Polynomial::one()), p(&[5, 0, 3]));
        assert_eq!(p(&[1, 1]).mul(&p(&[1, 4])), p(&[1, 5, 4]));
        assert!(p(&[1, 1]).mul(&Polynomial::zero()).is_zero());
    }

    #[test]
    fn construction_rules() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), 1);
        assert!(matches!(
            Polynomial::new(vec![Coefficient::from(-1i64)]),
            Err(Error::NegativeCoefficient(0))
        ));
        let tight = Limits {
            max_dense_degree: 2,
            ..Limits::default()
        };
        assert!(Polynomial::with_limits(vec![Coefficient::one(); 4], &tight).is_err());
    }

    #[test]
    fn text_format() {
        let text = "# g_{2,1}\n0 1\n1 2^2\n\n2 4\n3 1\n";
        let poly = Polynomial::from_text(text).unwrap();
        assert_eq!(poly, p(&[1, 4, 4, 1]));
        assert_eq!(Polynomial::from_text(&poly.to_text()).unwrap(), poly);
        assert!(Polynomial::from_text("1 2\n1 3\n").is_err());
        assert!(Polynomial::from_text("1\n").is_err());
        assert!(Polynomial::from_text("0 -1\n").is_err());
        assert!(Polynomial::from_text("").unwrap().is_zero());
    }

    proptest! {
        #[test]
        fn degree_is_additive(a in proptest::collection::vec(0u64..20, 1..8), b in proptest::collection::vec(0u64..20, 1..8)) {
            let (pa, pb) = (p(&a), p(&b));
            prop_assume!(!pa.is_zero() && !pb.is_zero());
            prop_assert_eq!(pa.mul(&pb).degree(), pa.degree() + pb.degree());
        }
    }
}
