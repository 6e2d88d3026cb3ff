//! The explicit strongly log-concave family and its multilinear encoding.
//!
//! `g_{n,s} = sum_{i < 2^n} 2^(e(n,i)) X^i` with `e(n,i) = s i (2^n - i - 1)`,
//! and `f_n = g_{n, n 2^(n+1)}`. `h_n` spells out the exponents of `X` and of
//! `2` in binary, one variable per bit.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::polynomials::{check_strong_with, Coefficient, Polynomial};

/// `e(n, i) = s i (2^n - i - 1)`.
pub fn exponent(n: u32, i: u64, s: &BigInt) -> BigInt {
    s * BigInt::from(i) * ((BigInt::one() << n) - i - 1u32)
}

/// The exponents `e(n, 0), ..., e(n, 2^n - 1)`.
pub fn g_exponents(n: u32, s: &BigInt) -> Result<Vec<BigInt>> {
    if n == 0 || s <= &BigInt::zero() {
        return Err(Error::PreconditionFailed("g needs n >= 1 and s >= 1".into()));
    }
    if n > 20 {
        return Err(Error::ResourceLimit(format!("n = {n} exceeds the exponent-form cap of 20")));
    }
    Ok((0..1u64 << n).map(|i| exponent(n, i, s)).collect())
}

/// `g_{n,s}` with every coefficient a pure power of two.
pub fn gen_g(n: u32, s: &BigInt) -> Result<Polynomial> {
    gen_g_with(n, s, &Limits::default())
}

pub fn gen_g_with(n: u32, s: &BigInt, limits: &Limits) -> Result<Polynomial> {
    if n < 64 && (1u64 << n) - 1 > limits.max_dense_degree as u64 || n >= 64 {
        return Err(Error::ResourceLimit(format!("degree 2^{n} - 1 exceeds the dense cap")));
    }
    let coeffs = g_exponents(n, s)?.into_iter().map(Coefficient::power_of_two).collect();
    Polynomial::with_limits(coeffs, limits)
}

/// `2 e_i > s + e_(i-1) + e_(i+1)` at every interior index.
pub fn check_g_exponents(e: &[BigInt], s: &BigInt) -> bool {
    e.windows(3).all(|w| BigInt::from(2) * &w[1] > s + &w[0] + &w[2])
}

pub fn check_g(n: u32, s: &BigInt) -> Result<bool> {
    if n < 2 {
        return Err(Error::PreconditionFailed("check_g needs n >= 2".into()));
    }
    Ok(check_g_exponents(&g_exponents(n, s)?, s))
}

/// `s = n 2^(n+1)`.
pub fn f_scale(n: u32) -> BigInt {
    BigInt::from(n) << (n + 1)
}

/// `f_n`, checked against the strong condition before it is returned.
pub fn gen_f(n: u32) -> Result<Polynomial> {
    if n > 12 {
        return Err(Error::ResourceLimit(format!("f_n is capped at n = 12, got {n}")));
    }
    let limits = Limits::default();
    let f = gen_g_with(n, &f_scale(n), &limits)?;
    if f.degree() >= 1 && !check_strong_with(&f, &limits)?.holds {
        return Err(Error::FatalInconsistency(format!("f_{n} fails the strong condition")));
    }
    Ok(f)
}

/// `h_n` as a coefficient predicate over `X_0..X_(n-1), Y_0..Y_(4n-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MultilinearH {
    n: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HMonomial {
    /// `alpha_0 alpha_1 ...`, index 0 first.
    pub alpha: String,
    /// `beta_0 beta_1 ...`, index 0 first.
    pub beta: String,
}

fn bits_of(value: &BigUint, width: u32) -> Vec<bool> {
    (0..width as u64).map(|j| value.bit(j)).collect()
}

fn value_of(bits: &[bool]) -> BigUint {
    bits.iter()
        .enumerate()
        .filter(|(_, b)| **b)
        .fold(BigUint::zero(), |acc, (j, _)| acc | (BigUint::one() << j))
}

fn bitstring(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

pub fn gen_h(n: u32) -> Result<MultilinearH> {
    if n == 0 || n > 8 {
        return Err(Error::PreconditionFailed(format!("h_n needs 1 <= n <= 8, got {n}")));
    }
    Ok(MultilinearH { n })
}

impl MultilinearH {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn variable_count(&self) -> u32 {
        5 * self.n
    }

    /// `2n 2^n i (2^n - i - 1)`.
    fn target(&self, i: u64) -> BigUint {
        let n = self.n;
        BigUint::from(2 * n as u64) * (BigUint::one() << n) * i * ((1u64 << n) - i - 1)
    }

    /// The coefficient of `X^alpha Y^beta`.
    pub fn lambda(&self, alpha: &[bool], beta: &[bool]) -> bool {
        if alpha.len() != self.n as usize || beta.len() != 4 * self.n as usize {
            return false;
        }
        let i = value_of(alpha);
        let i = u64::try_from(&i).expect("alpha has at most 8 bits");
        let target = self.target(i);
        target.bits() <= 4 * self.n as u64 && value_of(beta) == target
    }

    /// The `beta` paired with exponent `i`, or `None` when the target does not
    /// fit in `4n` bits.
    pub fn beta_for(&self, i: u64) -> Option<Vec<bool>> {
        let target = self.target(i);
        (target.bits() <= 4 * self.n as u64).then(|| bits_of(&target, 4 * self.n))
    }

    /// Every monomial with coefficient 1, by increasing `i`.
    pub fn monomials(&self) -> impl Iterator<Item = (Vec<bool>, Vec<bool>)> + '_ {
        (0..1u64 << self.n).filter_map(move |i| {
            let alpha = bits_of(&BigUint::from(i), self.n);
            self.beta_for(i).map(|beta| (alpha, beta))
        })
    }

    /// How many `alpha` the `< 2^(4n)` guard rejects.
    pub fn guard_rejections(&self) -> usize {
        (0..1u64 << self.n).filter(|&i| self.beta_for(i).is_none()).count()
    }

    pub fn monomials_json(&self) -> Vec<HMonomial> {
        self.monomials()
            .map(|(a, b)| HMonomial {
                alpha: bitstring(&a),
                beta: bitstring(&b),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityVerdict {
    pub n: u32,
    pub coefficients_checked: usize,
    pub holds: bool,
}

/// Substitute `X_k <- X^(2^k)` and `Y_j <- 2^(2^j)` into `h_n` and compare with
/// `f_n` coefficient by coefficient.
pub fn verify_substitution_identity(n: u32) -> Result<IdentityVerdict> {
    if n > 3 {
        return Err(Error::ResourceLimit(format!("the identity is only checked up to n = 3, got {n}")));
    }
    let h = gen_h(n)?;
    let constants: Vec<BigUint> = (0..4 * n).map(|j| BigUint::one() << (1u64 << j)).collect();
    let mut collected: BTreeMap<u64, BigUint> = BTreeMap::new();
    for (alpha, beta) in h.monomials() {
        let x_exp: u64 = alpha.iter().enumerate().filter(|(_, b)| **b).map(|(k, _)| 1u64 << k).sum();
        let c = beta
            .iter()
            .zip(&constants)
            .filter(|(b, _)| **b)
            .fold(BigUint::one(), |acc, (_, y)| acc * y);
        *collected.entry(x_exp).or_default() += c;
    }
    let f = gen_f(n)?;
    for (i, a) in f.coeffs().iter().enumerate() {
        let expected = a
            .to_biguint(1 << 20)
            .ok_or_else(|| Error::FatalInconsistency(format!("f_{n} coefficient {i} is not an integer")))?;
        let got = collected.remove(&(i as u64)).unwrap_or_default();
        if got != expected {
            return Err(Error::FatalInconsistency(format!("substituted h_{n} differs from f_{n} at X^{i}")));
        }
    }
    if let Some((e, _)) = collected.into_iter().find(|(_, c)| !c.is_zero()) {
        return Err(Error::FatalInconsistency(format!("substituted h_{n} has a stray term X^{e}")));
    }
    Ok(IdentityVerdict {
        n,
        coefficients_checked: f.coeffs().len(),
        holds: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomials::check_strong;

    fn big(v: u64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn g_examples() {
        assert_eq!(gen_g(2, &big(1)).unwrap(), Polynomial::from_u64s(&[1, 4, 4, 1]));
        assert_eq!(gen_g(1, &big(99)).unwrap(), Polynomial::from_u64s(&[1, 1]));
        let e: Vec<BigInt> = [0u64, 12, 20, 24, 24, 20, 12, 0].into_iter().map(big).collect();
        assert_eq!(g_exponents(3, &big(2)).unwrap(), e);
        assert!(gen_g(2, &big(0)).is_err());
    }

    #[test]
    fn check_g_examples() {
        assert!(check_g(2, &big(1)).unwrap());
        for n in 2..=10 {
            assert!(check_g(n, &f_scale(n)).unwrap(), "n = {n}");
        }
        assert!(check_g(1, &big(1)).is_err());
    }

    #[test]
    fn mutated_exponent_fails() {
        let (n, s) = (4, big(3));
        let mut e = g_exponents(n, &s).unwrap();
        e[1] -= &s * (1u64 << n);
        assert!(!check_g_exponents(&e, &s));
    }

    #[test]
    fn palindromic() {
        let e = g_exponents(5, &big(7)).unwrap();
        let mut r = e.clone();
        r.reverse();
        assert_eq!(e, r);
    }

    #[test]
    fn f_examples() {
        assert_eq!(gen_f(1).unwrap(), Polynomial::from_u64s(&[1, 1]));
        let f2 = gen_f(2).unwrap();
        let two32 = Coefficient::power_of_two(32);
        assert_eq!(f2.coeffs(), &[Coefficient::one(), two32.clone(), two32, Coefficient::one()]);
        for n in 1..=10 {
            assert_eq!(gen_f(n).unwrap().degree(), (1usize << n) - 1);
        }
        assert!(check_strong(&gen_f(3).unwrap()).unwrap().holds);
        assert!(matches!(gen_f(13), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn both_spellings_of_the_exponent_agree() {
        for n in 1..=10u32 {
            for i in 0..1u64 << n {
                let spelled = BigInt::from(2 * n) * (BigInt::one() << n) * i * ((1u64 << n) - i - 1);
                assert_eq!(exponent(n, i, &f_scale(n)), spelled);
            }
        }
    }

    #[test]
    fn h_examples() {
        let h1 = gen_h(1).unwrap();
        let m: Vec<HMonomial> = h1.monomials_json();
        assert_eq!(m.len(), 2);
        assert_eq!((m[0].alpha.as_str(), m[0].beta.as_str()), ("0", "0000"));
        assert_eq!((m[1].alpha.as_str(), m[1].beta.as_str()), ("1", "0000"));
        for n in 1..=8 {
            let h = gen_h(n).unwrap();
            assert_eq!(h.monomials().count(), 1 << n);
            assert_eq!(h.guard_rejections(), 0);
            assert_eq!(h.variable_count(), 5 * n);
            for (a, b) in h.monomials() {
                let degree = a.iter().chain(&b).filter(|x| **x).count();
                assert!(degree <= 5 * n as usize);
            }
        }
        let h2 = gen_h(2).unwrap();
        let beta32: Vec<bool> = (0..8).map(|j| j == 5).collect();
        assert!(h2.lambda(&[true, false], &beta32));
        let mut other = beta32.clone();
        other[0] = true;
        assert!(!h2.lambda(&[true, false], &other));
        assert!(gen_h(9).is_err());
    }

    #[test]
    fn substitution_identity() {
        for n in 1..=3 {
            let v = verify_substitution_identity(n).unwrap();
            assert!(v.holds);
            assert_eq!(v.coefficients_checked, 1 << n);
        }
        assert!(matches!(verify_substitution_identity(4), Err(Error::ResourceLimit(_))));
    }
}
