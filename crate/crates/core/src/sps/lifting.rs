//! Lifting a τ-log-concave `sum_i g_i h_i` to a convexly independent chain.
//!
//! With `ε = log(τ)/2`, coefficient `c_l` is rounded up to
//! `log M_l + λ_l ε`, where `M_l` is the largest single product `a b` landing on
//! `X^l`. The rounded points keep strict concavity, and each one is a point of
//! some `R_i + S_i` shifted by a multiple of `ε`. All of this is checked with
//! `M_l` stored as a coefficient and `λ_l` as `tau_halves`, so no logarithm is
//! ever evaluated.

use num_bigint::BigInt;
use num_integer::Roots;
use serde::Serialize;
use serde_json::json;

use super::expression::SpsExpression;
use crate::error::{Error, Result};
use crate::geometry::{is_convexly_independent, minkowski_sum, LogPoint, PointJson, PointSet, Tau};
use crate::limits::Limits;
use crate::polynomials::{check_tau_logconcave, Coefficient, Polynomial};

#[derive(Clone, Debug)]
pub struct LiftingArtifacts {
    pub tau: Tau,
    pub k: usize,
    /// Largest term count among the `g_i`.
    pub r: usize,
    /// Largest term count among the `h_i`.
    pub s: usize,
    pub d: usize,
    pub expansion: Polynomial,
    /// `M_l` for `l = 1..=d`.
    pub m_values: Vec<Coefficient>,
    /// `(i, j1, j2)` attaining `M_l`, lexicographically smallest.
    pub m_argmax: Vec<(usize, usize, usize)>,
    /// `λ_l` for `l = 1..=d`.
    pub lambda: Vec<u64>,
    /// Least `Λ` with `τ^Λ >= (k r)^2`, i.e. `ceil(log(kr)/ε)`.
    pub lambda_bound: u64,
    /// Least `q` with `τ^(q^2) >= (k r)^2`, i.e. `ceil(sqrt(log(kr)/ε))`.
    pub q_root: u64,
    pub r_sets: Vec<PointSet>,
    pub s_sets: Vec<PointSet>,
    pub q: PointSet,
    pub q1: PointSet,
    pub q2: PointSet,
    pub chain: PointSet,
}

/// Least `n >= 0` with `base * step^n >= target`, or `ResourceLimit` past `cap`.
fn least_power(base: &Coefficient, step: &Coefficient, target: &Coefficient, cap: u64) -> Result<u64> {
    let mut acc = base.clone();
    let mut n = 0;
    while &acc < target {
        if n >= cap {
            return Err(Error::ResourceLimit(format!("no power of tau up to {cap} reaches the target")));
        }
        acc = &acc * step;
        n += 1;
    }
    Ok(n)
}

/// `(0, h ε)`.
fn on_axis(h: i64) -> LogPoint {
    LogPoint {
        x: 0.into(),
        r: Coefficient::one(),
        tau_halves: h,
    }
}

pub fn build_lifting(e: &SpsExpression, tau: &Tau) -> Result<LiftingArtifacts> {
    build_lifting_with(e, tau, &Limits::default())
}

pub fn build_lifting_with(e: &SpsExpression, tau: &Tau, limits: &Limits) -> Result<LiftingArtifacts> {
    if let Some(i) = e.rows().iter().position(|row| row.len() != 2) {
        return Err(Error::ShapeError(format!(
            "product {i} has {} factors; lifting needs exactly two",
            e.rows()[i].len()
        )));
    }
    let c = e.expand_with(limits)?;
    let d = c.degree();
    if d == 0 {
        return Err(Error::PreconditionFailed("the expansion is constant".into()));
    }
    let report = check_tau_logconcave(&c, tau.rational())?;
    if !report.holds {
        return Err(Error::PreconditionFailed(format!(
            "expansion is not {}-log-concave at {:?}",
            tau.rational(),
            report.failures
        )));
    }

    let k = e.k();
    let r = e.rows().iter().map(|row| row[0].term_count()).max().unwrap_or(0);
    let s = e.rows().iter().map(|row| row[1].term_count()).max().unwrap_or(0);

    let mut m_values = Vec::with_capacity(d);
    let mut m_argmax = Vec::with_capacity(d);
    for l in 1..=d as u64 {
        let mut best: Option<(Coefficient, (usize, usize, usize))> = None;
        for (i, row) in e.rows().iter().enumerate() {
            for (j1, (alpha, a)) in row[0].terms().iter().enumerate() {
                let Some(beta) = l.checked_sub(*alpha) else { continue };
                if let Ok(j2) = row[1].terms().binary_search_by_key(&beta, |(b, _)| *b) {
                    let prod = a * &row[1].terms()[j2].1;
                    if best.as_ref().is_none_or(|(m, _)| &prod > m) {
                        best = Some((prod, (i, j1, j2)));
                    }
                }
            }
        }
        let (m, at) = best.ok_or_else(|| Error::FatalInconsistency(format!("c_{l} > 0 but no product lands on X^{l}")))?;
        m_values.push(m);
        m_argmax.push(at);
    }

    let kr = Coefficient::from_integer(BigInt::from(k * r));
    let kr2 = kr.square();
    let cap = limits.exponent_cap;
    let lambda_bound = least_power(&Coefficient::one(), tau.value(), &kr2, cap)?;
    // tau^n is increasing in n, so ceil(sqrt(x)) = ceil(sqrt(ceil(x))).
    let mut q_root = lambda_bound.sqrt();
    if q_root * q_root < lambda_bound {
        q_root += 1;
    }

    let mut lambda = Vec::with_capacity(d);
    for l in 1..=d {
        let m2 = m_values[l - 1].square();
        let c2 = c.coeff(l).square();
        let lam = least_power(&m2, tau.value(), &c2, lambda_bound)
            .map_err(|_| Error::FatalInconsistency(format!("λ_{l} exceeds ceil(log(kr)/ε) = {lambda_bound}")))?;
        lambda.push(lam);
    }

    let lifted = |f: &super::SparsePoly| f.points();
    let r_sets: Vec<PointSet> = e.rows().iter().map(|row| lifted(&row[0])).collect();
    let s_sets: Vec<PointSet> = e.rows().iter().map(|row| lifted(&row[1])).collect();
    let as_h = |v: u64| i64::try_from(v).map_err(|_| Error::ResourceLimit("tau exponent too large".into()));
    let q = (0..=lambda_bound).map(|v| as_h(v).map(on_axis)).collect::<Result<PointSet>>()?;
    let q1 = (0..=q_root).map(|v| as_h(v).map(on_axis)).collect::<Result<PointSet>>()?;
    let q2 = (0..=q_root)
        .map(|v| as_h(v * q_root).map(on_axis))
        .collect::<Result<PointSet>>()?;
    let chain = (1..=d)
        .map(|l| as_h(lambda[l - 1]).and_then(|h| LogPoint::new(l as u64, m_values[l - 1].clone(), h)))
        .collect::<Result<PointSet>>()?;

    Ok(LiftingArtifacts {
        tau: tau.clone(),
        k,
        r,
        s,
        d,
        expansion: c,
        m_values,
        m_argmax,
        lambda,
        lambda_bound,
        q_root,
        r_sets,
        s_sets,
        q,
        q1,
        q2,
        chain,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LiftingVerdict {
    pub chain_size: usize,
    pub d: usize,
    pub chain_in_sum: bool,
    pub q_in_q1_plus_q2: bool,
    pub convexly_independent: bool,
    pub lambda_within_bound: bool,
    pub rounding_within_half_step: bool,
    pub q1_size: usize,
    pub q2_size: usize,
    /// `k r^(2/3) s^(2/3) ln(kr)^(2/3) + k (r+s) ln(kr)^(1/2)`, no constant.
    pub bound_shape_approx: f64,
    /// `k r |Q1| + k s |Q2|`.
    pub raw_terms: u128,
}

/// Re-derive every claim about the artifacts. Any failure is a
/// [`Error::FatalInconsistency`].
pub fn verify_lifting(a: &LiftingArtifacts) -> Result<LiftingVerdict> {
    let fatal = |what: &str| Err(Error::FatalInconsistency(format!("lifting check failed: {what}")));
    if a.chain.len() != a.d {
        return fatal("chain does not have d points");
    }

    let sums = a
        .r_sets
        .iter()
        .zip(&a.s_sets)
        .fold(PointSet::default(), |acc, (r, s)| acc.union(&minkowski_sum(r, s)));
    let lambda_max = a.lambda_bound as i64;
    let chain_in_sum = a.chain.iter().all(|p| {
        (0..=lambda_max).contains(&p.tau_halves)
            && sums.contains(&LogPoint {
                tau_halves: 0,
                ..p.clone()
            })
    });
    if !chain_in_sum {
        return fatal("chain is not inside the union of R_i + S_i shifted by Q");
    }

    let q_in_q1_plus_q2 = a.q.is_subset(&minkowski_sum(&a.q1, &a.q2));
    if !q_in_q1_plus_q2 {
        return fatal("Q is not inside Q1 + Q2");
    }
    let expected = a.q_root as usize + 1;
    if a.q1.len() != expected || a.q2.len() != expected {
        return fatal("|Q1| or |Q2| differs from ceil(sqrt(log(kr)/ε)) + 1");
    }

    let lambda_within_bound = a.lambda.iter().all(|&l| l <= a.lambda_bound);
    if !lambda_within_bound {
        return fatal("some λ_l exceeds ceil(log(kr)/ε)");
    }

    // 0 <= δ_l < ε  <=>  M^2 τ^(λ-1) < c^2 <= M^2 τ^λ
    let tau = a.tau.value();
    let cap = a.tau.exponent_cap();
    for (l, (m, &lam)) in a.m_values.iter().zip(&a.lambda).enumerate() {
        let c2 = a.expansion.coeff(l + 1).square();
        let m2 = m.square();
        let upper = &m2 * &tau.pow(&BigInt::from(lam), cap)?;
        let lower_ok = lam == 0 && m2 <= c2 || lam > 0 && &m2 * &tau.pow(&BigInt::from(lam - 1), cap)? < c2;
        if !(c2 <= upper && lower_ok && m2 <= c2) {
            return fatal(&format!("rounding of c_{} is outside [0, ε)", l + 1));
        }
    }

    let convexly_independent = is_convexly_independent(&a.chain, &a.tau)?;
    if !convexly_independent {
        return fatal("chain is not convexly independent");
    }

    let (k, r, s) = (a.k as f64, a.r as f64, a.s as f64);
    let log_kr = (k * r).ln();
    Ok(LiftingVerdict {
        chain_size: a.chain.len(),
        d: a.d,
        chain_in_sum,
        q_in_q1_plus_q2,
        convexly_independent,
        lambda_within_bound,
        rounding_within_half_step: true,
        q1_size: a.q1.len(),
        q2_size: a.q2.len(),
        bound_shape_approx: k * (r * s).powf(2.0 / 3.0) * log_kr.powf(2.0 / 3.0) + k * (r + s) * log_kr.sqrt(),
        raw_terms: a.k as u128 * (a.r * a.q1.len() + a.s * a.q2.len()) as u128,
    })
}

impl LiftingArtifacts {
    pub fn to_json(&self) -> serde_json::Value {
        let pts = |set: &PointSet| set.iter().map(|p| PointJson::new(p, &self.tau)).collect::<Vec<_>>();
        json!({
            "tau": self.tau.rational().to_string(),
            "k": self.k,
            "r": self.r,
            "s": self.s,
            "d": self.d,
            "expansion": self.expansion.coeffs(),
            "M": self.m_values,
            "M_argmax": self.m_argmax,
            "lambda": self.lambda,
            "lambda_bound": self.lambda_bound,
            "q_root": self.q_root,
            "R_sets": self.r_sets.iter().map(pts).collect::<Vec<_>>(),
            "S_sets": self.s_sets.iter().map(pts).collect::<Vec<_>>(),
            "Q": pts(&self.q),
            "Q1": pts(&self.q1),
            "Q2": pts(&self.q2),
            "chain": pts(&self.chain),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sps::SparsePoly;

    fn sp(t: &[(u64, u64)]) -> SparsePoly {
        SparsePoly::from_u64s(t).unwrap()
    }

    fn pt(x: u64, r: u64, h: i64) -> LogPoint {
        LogPoint::new(x, Coefficient::from(r), h).unwrap()
    }

    #[test]
    fn hand_run() {
        let e = SpsExpression::new(vec![vec![sp(&[(0, 1), (1, 1)]), sp(&[(0, 1), (1, 4)])]]).unwrap();
        let tau = Tau::from_integer(4).unwrap();
        let a = build_lifting(&e, &tau).unwrap();
        assert_eq!(a.m_values, vec![Coefficient::from(4u64), Coefficient::from(4u64)]);
        assert_eq!(a.lambda, vec![1, 0]);
        assert_eq!(a.chain, PointSet::new([pt(1, 4, 1), pt(2, 4, 0)]));
        // k r = 2, so Λ = 1 and q = 1
        assert_eq!((a.lambda_bound, a.q_root), (1, 1));
        let v = verify_lifting(&a).unwrap();
        assert!(v.chain_in_sum && v.convexly_independent && v.q_in_q1_plus_q2);
        assert_eq!((v.q1_size, v.q2_size), (2, 2));
    }

    #[test]
    fn preconditions() {
        let tau = Tau::from_integer(4).unwrap();
        let three = SpsExpression::new(vec![vec![sp(&[(0, 1)]), sp(&[(0, 1)]), sp(&[(1, 1)])]]).unwrap();
        assert!(matches!(build_lifting(&three, &tau), Err(Error::ShapeError(_))));
        let flat = SpsExpression::new(vec![vec![sp(&[(0, 1), (1, 1)]), sp(&[(0, 1), (1, 1)])]]).unwrap();
        assert!(matches!(build_lifting(&flat, &tau), Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn longer_chain() {
        // (1 + 8X + 8X^2)(1 + 64X), k = 1
        let e = SpsExpression::new(vec![vec![sp(&[(0, 1), (1, 8), (2, 8)]), sp(&[(0, 1), (1, 64)])]]).unwrap();
        let tau = Tau::from_integer(4).unwrap();
        let a = build_lifting(&e, &tau).unwrap();
        assert_eq!(a.d, 3);
        let v = verify_lifting(&a).unwrap();
        assert_eq!(v.chain_size, 3);
        assert!(a.to_json()["chain"].as_array().unwrap().len() == 3);
    }
}
