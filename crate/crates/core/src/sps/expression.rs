use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::sparse::SparsePoly;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::polynomials::{Coefficient, Polynomial};

/// `sum_i prod_j f_{i,j}` over sparse factors with positive coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpsExpression {
    products: Vec<Vec<SparsePoly>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpsParams {
    /// Number of products.
    pub k: usize,
    /// Longest product.
    pub m: usize,
    /// Largest factor term count.
    pub t: usize,
    /// Degree of the expansion.
    pub d: usize,
}

impl SpsParams {
    /// `k * t^m`.
    pub fn trivial_bound(&self) -> BigUint {
        BigUint::from(self.k) * num_traits::pow(BigUint::from(self.t), self.m)
    }

    /// `k * m * t`.
    pub fn kmt(&self) -> u128 {
        self.k as u128 * self.m as u128 * self.t as u128
    }
}

impl SpsExpression {
    pub fn new(products: Vec<Vec<SparsePoly>>) -> Result<Self> {
        if products.is_empty() {
            return Err(Error::ShapeError("an SPS expression needs at least one product".into()));
        }
        for (i, row) in products.iter().enumerate() {
            if row.is_empty() {
                return Err(Error::ShapeError(format!("product {i} has no factors")));
            }
            if let Some(j) = row.iter().position(SparsePoly::is_zero) {
                return Err(Error::ShapeError(format!("factor ({i}, {j}) is zero")));
            }
        }
        Ok(SpsExpression { products })
    }

    pub fn rows(&self) -> &[Vec<SparsePoly>] {
        &self.products
    }

    pub fn k(&self) -> usize {
        self.products.len()
    }

    pub fn m(&self) -> usize {
        self.products.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn t(&self) -> usize {
        self.products
            .iter()
            .flatten()
            .map(SparsePoly::term_count)
            .max()
            .unwrap_or(0)
    }

    /// Degree of product `i`: the sum of its factor degrees.
    pub fn row_degree(&self, i: usize) -> u64 {
        self.products[i].iter().map(SparsePoly::degree).sum()
    }

    pub fn expand(&self) -> Result<Polynomial> {
        self.expand_with(&Limits::default())
    }

    pub fn expand_with(&self, limits: &Limits) -> Result<Polynomial> {
        let work: u64 = self
            .products
            .iter()
            .map(|row| row.iter().fold(1u64, |acc, f| acc.saturating_mul(f.term_count() as u64)))
            .fold(0u64, u64::saturating_add);
        if work > limits.max_expansion_work {
            return Err(Error::ResourceLimit(format!(
                "expansion would form {work} term products (cap {})",
                limits.max_expansion_work
            )));
        }
        let degree = (0..self.k()).map(|i| self.row_degree(i)).max().unwrap_or(0);
        if degree > limits.max_expansion_degree as u64 {
            return Err(Error::ResourceLimit(format!(
                "expansion degree {degree} exceeds cap {}",
                limits.max_expansion_degree
            )));
        }
        let mut total: BTreeMap<u64, Coefficient> = BTreeMap::new();
        for row in &self.products {
            let product = multiply_row(row, limits)?;
            for (e, c) in product.terms() {
                let slot = total.entry(*e).or_insert_with(Coefficient::zero);
                *slot = slot.checked_add(c, limits.max_pow2_span)?;
            }
        }
        let mut coeffs = vec![Coefficient::zero(); degree as usize + 1];
        for (e, c) in total {
            coeffs[e as usize] = c;
        }
        Polynomial::with_limits(coeffs, limits)
    }

    pub fn params(&self) -> Result<SpsParams> {
        Ok(SpsParams {
            k: self.k(),
            m: self.m(),
            t: self.t(),
            d: self.expand()?.degree(),
        })
    }

    /// Evaluate `sum_i prod_j f_{i,j}(x)` without expanding.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let mut acc = BigRational::from_integer(0.into());
        for row in &self.products {
            let mut prod = BigRational::from_integer(1.into());
            for f in row {
                prod *= f.eval(x)?;
            }
            acc += prod;
        }
        Ok(acc)
    }
}

pub(crate) fn multiply_row(row: &[SparsePoly], limits: &Limits) -> Result<SparsePoly> {
    let mut acc = SparsePoly::one();
    for f in row {
        acc = acc.mul(f, limits)?;
    }
    Ok(acc)
}

/// Regroup every product into `G_i * H_i` with `G_i` the product of the first
/// `floor(m_i / 2)` factors, both expanded.
pub fn split_products(e: &SpsExpression) -> Result<SpsExpression> {
    split_products_with(e, &Limits::default())
}

pub fn split_products_with(e: &SpsExpression, limits: &Limits) -> Result<SpsExpression> {
    let mut rows = Vec::with_capacity(e.k());
    for (i, row) in e.rows().iter().enumerate() {
        if row.len() < 2 {
            return Err(Error::ShapeError(format!("product {i} has fewer than two factors")));
        }
        let half = row.len() / 2;
        let work = row.iter().fold(1u64, |acc, f| acc.saturating_mul(f.term_count() as u64));
        if work > limits.max_expansion_work {
            return Err(Error::ResourceLimit(format!("splitting product {i} needs {work} term products")));
        }
        rows.push(vec![multiply_row(&row[..half], limits)?, multiply_row(&row[half..], limits)?]);
    }
    SpsExpression::new(rows)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    pub k: usize,
    pub m: usize,
    pub t: usize,
    pub d: usize,
    /// `k * t^m`, exact.
    pub trivial: String,
    /// `k * m * t`, exact.
    pub thm2: String,
    /// `k * m^(2/3) * t^(2m/3) * ln(kt)^(2/3)` without its hidden constant.
    pub thm1_shape_approx: f64,
    /// Monomials of the expansion.
    pub terms: usize,
    /// `terms <= k t^m`.
    pub within_trivial: bool,
}

pub fn thm1_shape(k: usize, m: usize, t: usize) -> f64 {
    let (k, m, t) = (k as f64, m as f64, t as f64);
    k * m.powf(2.0 / 3.0) * t.powf(2.0 * m / 3.0) * (k * t).ln().powf(2.0 / 3.0)
}

pub fn bounds_report(e: &SpsExpression) -> Result<BoundsReport> {
    let a = e.expand()?;
    let p = SpsParams {
        k: e.k(),
        m: e.m(),
        t: e.t(),
        d: a.degree(),
    };
    let trivial = p.trivial_bound();
    Ok(BoundsReport {
        k: p.k,
        m: p.m,
        t: p.t,
        d: p.d,
        trivial: trivial.to_string(),
        thm2: p.kmt().to_string(),
        thm1_shape_approx: thm1_shape(p.k, p.m, p.t),
        terms: a.term_count(),
        within_trivial: BigUint::from(a.term_count()) <= trivial,
    })
}

#[derive(Serialize, Deserialize)]
struct SpsFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tau: Option<String>,
    products: Vec<Vec<FactorFile>>,
}

#[derive(Serialize, Deserialize)]
struct FactorFile {
    terms: Vec<(u64, Coefficient)>,
}

/// Parse the SPS JSON format, returning the expression and the optional tau.
pub fn parse_sps_json(text: &str) -> Result<(SpsExpression, Option<BigRational>)> {
    let file: SpsFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let tau = file
        .tau
        .map(|s| s.trim().parse::<BigRational>().map_err(|_| Error::Parse(format!("bad tau {s:?}"))))
        .transpose()?;
    let rows = file
        .products
        .into_iter()
        .map(|row| row.into_iter().map(|f| SparsePoly::new(f.terms)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok((SpsExpression::new(rows)?, tau))
}

pub fn to_sps_json(e: &SpsExpression, tau: Option<&BigRational>) -> String {
    let file = SpsFile {
        tau: tau.map(ToString::to_string),
        products: e
            .rows()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|f| FactorFile {
                        terms: f.terms().to_vec(),
                    })
                    .collect()
            })
            .collect(),
    };
    serde_json::to_string(&file).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn sp(t: &[(u64, u64)]) -> SparsePoly {
        SparsePoly::from_u64s(t).unwrap()
    }

    fn one_plus_x_times_one_plus_4x() -> SpsExpression {
        SpsExpression::new(vec![vec![sp(&[(0, 1), (1, 1)]), sp(&[(0, 1), (1, 4)])]]).unwrap()
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(one_plus_x_times_one_plus_4x().expand().unwrap(), Polynomial::from_u64s(&[1, 5, 4]));
        let two_monomials = SpsExpression::new(vec![vec![sp(&[(0, 1)])], vec![sp(&[(1, 1)])]]).unwrap();
        assert_eq!(two_monomials.expand().unwrap(), Polynomial::from_u64s(&[1, 1]));
        let g21 = SpsExpression::new(vec![vec![sp(&[(0, 1), (1, 4), (2, 4), (3, 1)])]]).unwrap();
        assert_eq!(g21.expand().unwrap(), Polynomial::from_u64s(&[1, 4, 4, 1]));
    }

    #[test]
    fn params_examples() {
        let p = one_plus_x_times_one_plus_4x().params().unwrap();
        assert_eq!(p, SpsParams { k: 1, m: 2, t: 2, d: 2 });
        let monomials = SpsExpression::new(vec![vec![sp(&[(3, 1)])], vec![sp(&[(7, 2)])], vec![sp(&[(5, 9)])]]).unwrap();
        let p = monomials.params().unwrap();
        assert_eq!((p.t, p.d), (1, 7));
    }

    #[test]
    fn shape_errors() {
        assert!(SpsExpression::new(vec![]).is_err());
        assert!(SpsExpression::new(vec![vec![]]).is_err());
        assert!(SpsExpression::new(vec![vec![SparsePoly::default()]]).is_err());
    }

    #[test]
    fn expansion_caps() {
        let e = one_plus_x_times_one_plus_4x();
        let tight = Limits {
            max_expansion_work: 3,
            ..Limits::default()
        };
        assert!(matches!(e.expand_with(&tight), Err(Error::ResourceLimit(_))));
        let tight = Limits {
            max_expansion_degree: 1,
            ..Limits::default()
        };
        assert!(matches!(e.expand_with(&tight), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn split_examples() {
        let e = one_plus_x_times_one_plus_4x();
        assert_eq!(split_products(&e).unwrap(), e);
        let f = sp(&[(0, 1), (2, 3)]);
        let three = SpsExpression::new(vec![vec![f.clone(), f.clone(), f.clone()]]).unwrap();
        let s = split_products(&three).unwrap();
        assert!(s.rows()[0][0].term_count() <= 2);
        assert!(s.rows()[0][1].term_count() <= 4);
        assert_eq!(s.expand().unwrap(), three.expand().unwrap());
        let single = SpsExpression::new(vec![vec![f]]).unwrap();
        assert!(matches!(split_products(&single), Err(Error::ShapeError(_))));
    }

    #[test]
    fn bounds_examples() {
        let r = bounds_report(&one_plus_x_times_one_plus_4x()).unwrap();
        assert_eq!((r.trivial.as_str(), r.thm2.as_str(), r.d), ("4", "4", 2));
        let g21 = SpsExpression::new(vec![vec![sp(&[(0, 1), (1, 4), (2, 4), (3, 1)])]]).unwrap();
        let r = bounds_report(&g21).unwrap();
        assert_eq!((r.trivial.as_str(), r.d), ("4", 3));
        assert!(thm1_shape(2, 2, 3) > thm1_shape(1, 2, 3));
        assert!(thm1_shape(2, 3, 3) > thm1_shape(2, 2, 3));
        assert!(thm1_shape(2, 2, 4) > thm1_shape(2, 2, 3));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"tau": "9/2", "products": [[{"terms": [[0, "1"], [1, "2^3"]]}, {"terms": [[2, "3/5*2^100"]]}]]}"#;
        let (e, tau) = parse_sps_json(text).unwrap();
        assert_eq!(tau, Some(BigRational::new(9.into(), 2.into())));
        assert_eq!(e.rows()[0][0].terms()[1].1, Coefficient::from(8u64));
        let again = parse_sps_json(&to_sps_json(&e, tau.as_ref())).unwrap();
        assert_eq!(again, (e, tau));
        assert!(parse_sps_json(r#"{"products": [[{"terms": [[0, "-1"]]}]]}"#).is_err());
        assert!(parse_sps_json("{").is_err());
    }
}
