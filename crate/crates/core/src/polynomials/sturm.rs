//! Distinct real root counting with Sturm sequences.
//!
//! Works over primitive integer polynomials: the input is scaled to integer
//! coefficients, made square-free by dividing out `gcd(p, p')`, and the chain
//! is built from sign-corrected pseudo-remainders reduced to primitive parts.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::coefficient::Coefficient;
use crate::error::{Error, Result};

/// Coefficients must be materializable; larger binary exponents are refused.
const MAX_SHIFT: u64 = 1 << 20;

type IntPoly = Vec<BigInt>;

/// Number of distinct real roots of `sum coeffs[i] X^i`. Coefficients may be
/// negative.
pub fn sturm_distinct_real_roots(coeffs: &[Coefficient]) -> Result<usize> {
    let rationals = coeffs
        .iter()
        .map(|c| c.to_rational(MAX_SHIFT))
        .collect::<Result<Vec<_>>>()?;
    let p = to_integer_poly(&rationals);
    if p.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    if degree(&p) == 0 {
        return Ok(0);
    }
    let g = gcd(&p, &derivative(&p));
    let square_free = if degree(&g) == 0 { p } else { exact_quotient(&p, &g) };
    let chain = sturm_chain(square_free);
    let at_neg_inf = variations(chain.iter().map(|s| {
        let lc = s.last().expect("chain members are nonzero").signum();
        if degree(s) % 2 == 1 {
            -lc
        } else {
            lc
        }
    }));
    let at_pos_inf = variations(chain.iter().map(|s| s.last().expect("nonzero").signum()));
    Ok(at_neg_inf - at_pos_inf)
}

fn to_integer_poly(coeffs: &[BigRational]) -> IntPoly {
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut p: IntPoly = coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
    trim(&mut p);
    primitive(p)
}

fn trim(p: &mut IntPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn degree(p: &IntPoly) -> usize {
    p.len().saturating_sub(1)
}

fn derivative(p: &IntPoly) -> IntPoly {
    let mut d: IntPoly = p.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    trim(&mut d);
    d
}

/// Divide by the positive content.
fn primitive(mut p: IntPoly) -> IntPoly {
    let content = p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !content.is_zero() && !content.is_one() {
        for c in &mut p {
            *c /= &content;
        }
    }
    p
}

/// Pseudo-division: returns `(q, r)` with `lc(b)^(deg a - deg b + 1) * a = q * b + r`.
fn pseudo_divide(a: &IntPoly, b: &IntPoly) -> (IntPoly, IntPoly) {
    let db = degree(b);
    let lc = b.last().expect("divisor is nonzero").clone();
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let steps = degree(a) - db + 1;
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); steps];
    for k in (0..steps).rev() {
        for c in q.iter_mut() {
            *c *= &lc;
        }
        for c in r.iter_mut() {
            *c *= &lc;
        }
        let lead = r.get(k + db).cloned().unwrap_or_default();
        if lead.is_zero() {
            continue;
        }
        let factor = &lead / &lc;
        q[k] += &factor;
        for (i, bc) in b.iter().enumerate() {
            r[k + i] -= &factor * bc;
        }
    }
    trim(&mut q);
    trim(&mut r);
    (q, r)
}

fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let (mut a, mut b) = (primitive(a.clone()), primitive(b.clone()));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let (_, r) = pseudo_divide(&a, &b);
        a = b;
        b = primitive(r);
    }
    a
}

fn exact_quotient(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let (q, r) = pseudo_divide(a, b);
    debug_assert!(r.is_empty(), "divisor must divide exactly");
    primitive(q)
}

/// `s_0 = p`, `s_1 = p'`, `s_{k+1}` a positive multiple of `-rem(s_{k-1}, s_k)`.
fn sturm_chain(p: IntPoly) -> Vec<IntPoly> {
    let dp = primitive(derivative(&p));
    let mut chain = vec![p, dp];
    loop {
        let n = chain.len();
        let (a, b) = (&chain[n - 2], &chain[n - 1]);
        if b.is_empty() {
            chain.pop();
            break;
        }
        let (_, r) = pseudo_divide(a, b);
        if r.is_empty() {
            break;
        }
        // The pseudo-remainder carries lc(b)^(deg a - deg b + 1); undo its sign.
        let steps = degree(a) - degree(b) + 1;
        let flips = b.last().expect("nonzero").is_negative() && steps % 2 == 1;
        let mut next = primitive(r);
        if !flips {
            for c in &mut next {
                *c = -&*c;
            }
        }
        chain.push(next);
    }
    chain
}

fn variations(signs: impl Iterator<Item = BigInt>) -> usize {
    let mut count = 0;
    let mut prev: Option<bool> = None;
    for s in signs.filter(|s| !s.is_zero()) {
        let positive = s.is_positive();
        if prev.is_some_and(|p| p != positive) {
            count += 1;
        }
        prev = Some(positive);
    }
    count
}
