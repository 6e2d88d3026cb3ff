//! Seeded instance generators.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{LogPoint, PointSet};
use crate::polynomials::{check_tau_logconcave, Coefficient, Polynomial};
use crate::sps::{SparsePoly, SpsExpression};

/// Everything that determines a stream of random instances.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub instances: usize,
    pub k_max: usize,
    pub m_max: usize,
    pub t_max: usize,
    pub exp_max: u64,
    /// Bit length of the odd mantissas.
    pub coeff_bits: u32,
    #[serde(serialize_with = "display")]
    pub tau: BigRational,
}

fn display<S: serde::Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            seed: 0,
            instances: 1000,
            k_max: 3,
            m_max: 3,
            t_max: 4,
            exp_max: 8,
            coeff_bits: 4,
            tau: BigRational::from_integer(4.into()),
        }
    }
}

/// The generator for trial `index`: seeded with `seed ^ index`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ index)
}

/// `m * 2^p` with `m` odd and below `2^bits`.
pub fn random_dyadic<R: Rng>(rng: &mut R, bits: u32, pow_range: i64) -> Coefficient {
    let bits = bits.clamp(1, 62);
    let mantissa = rng.random_range(0..1u64 << (bits - 1)) * 2 + 1;
    let p = rng.random_range(-pow_range..=pow_range);
    Coefficient::from(mantissa) * Coefficient::power_of_two(p)
}

/// A `τ`-log-concave polynomial of degree `d` with `a_i = m_i 2^(e_i)`, `m_i`
/// odd below 8 and `2 e_i >= e_(i-1) + e_(i+1) + ceil(log2 τ) + 7`.
pub fn random_kurtz_polynomial<R: Rng>(rng: &mut R, d: usize, tau: &BigRational) -> Result<Polynomial> {
    if d < 2 {
        return Err(Error::DegreeTooSmall { degree: d, min: 2 });
    }
    let limit = BigRational::from_integer(BigInt::from(1u64 << 60));
    if tau <= &BigRational::from_integer(0.into()) || tau > &limit {
        return Err(Error::InvalidTau(format!("{tau} must lie in (0, 2^60]")));
    }
    let ceil_log2 = (0..=60i64)
        .find(|&b| &BigRational::from_integer(BigInt::from(1u64 << b)) >= tau)
        .expect("tau <= 2^60");
    let gap = ceil_log2 + 1 + 6;
    let mut step = rng.random_range(0..=gap * d as i64);
    let mut e = 0i64;
    let mut coeffs = Vec::with_capacity(d + 1);
    for _ in 0..=d {
        let m = [1u64, 3, 5, 7][rng.random_range(0..4)];
        coeffs.push(Coefficient::from(m) * Coefficient::power_of_two(e));
        e += step;
        step -= gap + rng.random_range(0..=2);
    }
    let p = Polynomial::new(coeffs)?;
    if !check_tau_logconcave(&p, tau)?.holds {
        return Err(Error::FatalInconsistency("generated polynomial is not τ-log-concave".into()));
    }
    Ok(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpsMode {
    /// Random supports and random dyadic coefficients.
    Uniform,
    /// Contiguous supports with sharply concave log-coefficients, so the
    /// strong and witness hypotheses hold with fair probability.
    Concave,
}

fn uniform_factor<R: Rng>(rng: &mut R, cfg: &ExperimentConfig) -> SparsePoly {
    let t = rng.random_range(1..=cfg.t_max.min(cfg.exp_max as usize + 1));
    let exps = sample(rng, cfg.exp_max as usize + 1, t);
    let terms = exps
        .into_iter()
        .map(|e| (e as u64, random_dyadic(rng, cfg.coeff_bits, 8)))
        .collect();
    SparsePoly::new(terms).expect("distinct exponents, positive coefficients")
}

fn concave_factor<R: Rng>(rng: &mut R, cfg: &ExperimentConfig, curvature: i64) -> SparsePoly {
    let t = rng.random_range(1..=cfg.t_max.min(cfg.exp_max as usize + 1));
    // Half the factors start at the constant term, so expansions often have
    // no interior gaps.
    let start = if rng.random_bool(0.5) {
        0
    } else {
        rng.random_range(0..=cfg.exp_max - t as u64 + 1)
    };
    let center = rng.random_range(0..t as i64);
    let slope = rng.random_range(-curvature..=curvature);
    let terms = (0..t as i64)
        .map(|j| {
            let m = [1u64, 3][rng.random_range(0..2)];
            let e = -curvature * (j - center) * (j - center) + slope * j;
            (start + j as u64, Coefficient::from(m) * Coefficient::power_of_two(e))
        })
        .collect();
    SparsePoly::new(terms).expect("distinct exponents, positive coefficients")
}

pub fn random_sps<R: Rng>(rng: &mut R, cfg: &ExperimentConfig, mode: SpsMode) -> SpsExpression {
    let k = rng.random_range(1..=cfg.k_max);
    let curvature = [256i64, 1024, 4096][rng.random_range(0..3)];
    let rows = (0..k)
        .map(|_| {
            let m = rng.random_range(1..=cfg.m_max);
            (0..m)
                .map(|_| match mode {
                    SpsMode::Uniform => uniform_factor(rng, cfg),
                    SpsMode::Concave => concave_factor(rng, cfg, curvature),
                })
                .collect()
        })
        .collect();
    SpsExpression::new(rows).expect("k >= 1 and nonzero factors")
}

/// A `sum_i g_i h_i` whose expansion is `τ`-log-concave, found by rejection
/// over mildly concave factors. `None` if `attempts` draws all fail.
pub fn random_two_factor_kurtz<R: Rng>(
    rng: &mut R,
    cfg: &ExperimentConfig,
    attempts: usize,
) -> Result<Option<SpsExpression>> {
    for _ in 0..attempts {
        let k = rng.random_range(1..=cfg.k_max);
        let curvature = rng.random_range(2..=12);
        let rows = (0..k)
            .map(|_| vec![concave_factor(rng, cfg, curvature), concave_factor(rng, cfg, curvature)])
            .collect();
        let e = SpsExpression::new(rows)?;
        let c = e.expand()?;
        if c.degree() >= 1 && check_tau_logconcave(&c, &cfg.tau)?.holds {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

/// `n` points with `x < x_max`, integer `r` in `1..=r_max` and `|tau_halves| <= h_max`.
pub fn random_point_set<R: Rng>(rng: &mut R, n: usize, x_max: i64, r_max: u64, h_max: i64) -> PointSet {
    (0..n)
        .map(|_| {
            LogPoint::new(
                rng.random_range(0..x_max),
                Coefficient::from(rng.random_range(1..=r_max)),
                rng.random_range(-h_max..=h_max),
            )
            .expect("positive coefficient")
        })
        .collect()
}

/// `prod (X + r_j)` over `d` distinct positive rationals, and the roots.
pub fn random_real_rooted<R: Rng>(rng: &mut R, d: usize) -> (Polynomial, Vec<BigRational>) {
    let mut roots: Vec<BigRational> = Vec::with_capacity(d);
    while roots.len() < d {
        let r = BigRational::new(rng.random_range(1..=60).into(), rng.random_range(1..=12).into());
        if !roots.contains(&r) {
            roots.push(r);
        }
    }
    let p = roots.iter().fold(Polynomial::one(), |acc, r| {
        let linear = Polynomial::new(vec![Coefficient::from_rational(r.clone()), Coefficient::one()]).expect("positive");
        acc.mul(&linear)
    });
    (p, roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomials::{check_kurtz, sturm_distinct_real_roots};

    #[test]
    fn kurtz_generator_is_deterministic_and_real_rooted() {
        let tau = BigRational::from_integer(4.into());
        let a = random_kurtz_polynomial(&mut trial_rng(7, 3), 9, &tau).unwrap();
        let b = random_kurtz_polynomial(&mut trial_rng(7, 3), 9, &tau).unwrap();
        assert_eq!(a, b);
        assert!(check_kurtz(&a).unwrap().holds);
        assert_eq!(sturm_distinct_real_roots(a.coeffs()).unwrap(), 9);
        assert!(random_kurtz_polynomial(&mut trial_rng(0, 0), 1, &tau).is_err());
    }

    #[test]
    fn kurtz_generator_handles_large_and_fractional_tau() {
        let mut rng = trial_rng(1, 1);
        for tau in [BigRational::new(3.into(), 2.into()), BigRational::from_integer(BigInt::from(1u64 << 59) + 1)] {
            let p = random_kurtz_polynomial(&mut rng, 5, &tau).unwrap();
            assert!(check_tau_logconcave(&p, &tau).unwrap().holds);
        }
    }

    #[test]
    fn sps_generators_respect_caps() {
        let cfg = ExperimentConfig::default();
        let mut rng = trial_rng(11, 0);
        for mode in [SpsMode::Uniform, SpsMode::Concave] {
            for _ in 0..50 {
                let e = random_sps(&mut rng, &cfg, mode);
                assert!(e.k() <= 3 && e.m() <= 3 && e.t() <= 4);
                assert!(e.rows().iter().flatten().all(|f| f.degree() <= 8));
            }
        }
    }

    #[test]
    fn two_factor_generator_finds_instances() {
        let cfg = ExperimentConfig::default();
        let mut rng = trial_rng(5, 0);
        let e = random_two_factor_kurtz(&mut rng, &cfg, 1000).unwrap().unwrap();
        assert!(e.rows().iter().all(|r| r.len() == 2));
    }

    #[test]
    fn real_rooted_products() {
        let (p, roots) = random_real_rooted(&mut trial_rng(2, 2), 6);
        assert_eq!(p.degree(), 6);
        for r in roots {
            assert_eq!(p.eval(&-r).unwrap(), BigRational::from_integer(0.into()));
        }
    }
}
