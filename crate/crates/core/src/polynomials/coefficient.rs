//! Exact coefficients of the form `mantissa * 2^pow2`.
//!
//! The mantissa is a rational whose numerator and denominator are both odd, so
//! every value has exactly one representation and structural equality is value
//! equality. Keeping the binary exponent apart from the mantissa lets the
//! astronomically large powers of two produced by the family generators be
//! multiplied and compared through integer exponent arithmetic only.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exponents of two at most this large are rendered as plain rationals.
const PLAIN_RENDER_POW2: u64 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coefficient {
    mantissa: BigRational,
    pow2: BigInt,
}

impl Coefficient {
    pub fn new(mantissa: BigRational, pow2: BigInt) -> Self {
        if mantissa.is_zero() {
            return Self::zero();
        }
        let (mut numer, mut denom) = mantissa.into_raw();
        let mut pow2 = pow2;
        if let Some(tz) = numer.trailing_zeros().filter(|&tz| tz > 0) {
            numer >>= tz;
            pow2 += tz;
        }
        if let Some(tz) = denom.trailing_zeros().filter(|&tz| tz > 0) {
            denom >>= tz;
            pow2 -= tz;
        }
        Coefficient {
            mantissa: BigRational::new(numer, denom),
            pow2,
        }
    }

    pub fn zero() -> Self {
        Coefficient {
            mantissa: BigRational::zero(),
            pow2: BigInt::zero(),
        }
    }

    pub fn one() -> Self {
        Coefficient {
            mantissa: BigRational::one(),
            pow2: BigInt::zero(),
        }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::new(BigRational::from_integer(n.into()), BigInt::zero())
    }

    pub fn from_ratio(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        Self::new(BigRational::new(numer.into(), denom.into()), BigInt::zero())
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::new(r, BigInt::zero())
    }

    /// `2^exponent`.
    pub fn power_of_two(exponent: impl Into<BigInt>) -> Self {
        Coefficient {
            mantissa: BigRational::one(),
            pow2: exponent.into(),
        }
    }

    pub fn mantissa(&self) -> &BigRational {
        &self.mantissa
    }

    pub fn pow2(&self) -> &BigInt {
        &self.pow2
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn signum(&self) -> i8 {
        match self.mantissa.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// True when the mantissa is `±1`, i.e. the value is a signed power of two.
    pub fn is_dyadic_unit(&self) -> bool {
        self.mantissa.numer().magnitude().is_one() && self.mantissa.denom().is_one()
    }

    pub fn abs(&self) -> Self {
        Coefficient {
            mantissa: self.mantissa.abs(),
            pow2: self.pow2.clone(),
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Raise to an integer power.
    ///
    /// Powers of two only touch the exponent. Any other mantissa is raised
    /// explicitly and the magnitude of `exponent` must not exceed `cap`.
    pub fn pow(&self, exponent: &BigInt, cap: u64) -> Result<Self> {
        if exponent.is_zero() {
            return Ok(Self::one());
        }
        if self.is_zero() {
            if exponent.is_negative() {
                return Err(Error::PreconditionFailed("zero raised to a negative power".into()));
            }
            return Ok(Self::zero());
        }
        if self.is_dyadic_unit() {
            let negative = self.is_negative() && exponent.is_odd();
            let mantissa = if negative { -BigRational::one() } else { BigRational::one() };
            return Ok(Coefficient {
                mantissa,
                pow2: &self.pow2 * exponent,
            });
        }
        let e = exponent
            .to_i32()
            .filter(|e| e.unsigned_abs() as u64 <= cap)
            .ok_or_else(|| Error::ExponentOverflow {
                exponent: exponent.to_string(),
                cap,
            })?;
        Ok(Self::new(self.mantissa.pow(e), &self.pow2 * exponent))
    }

    /// Exact sum, refusing to align binary exponents further apart than `max_span`.
    pub fn checked_add(&self, other: &Self, max_span: u64) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let span = (&self.pow2 - &other.pow2).abs();
        if span > BigInt::from(max_span) {
            return Err(Error::ResourceLimit(format!(
                "adding coefficients whose binary exponents differ by {span}"
            )));
        }
        Ok(self.add_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let base = (&self.pow2).min(&other.pow2).clone();
        let lift = |c: &Coefficient| -> BigRational {
            let shift = (&c.pow2 - &base).to_u64().expect("exponent gap fits in u64");
            BigRational::new(c.mantissa.numer() << shift, c.mantissa.denom().clone())
        };
        Self::new(lift(self) + lift(other), base)
    }

    /// Materialize as a plain rational when `|pow2| <= max_shift`.
    pub fn to_rational(&self, max_shift: u64) -> Result<BigRational> {
        let shift = self
            .pow2
            .abs()
            .to_u64()
            .filter(|&s| s <= max_shift)
            .ok_or_else(|| Error::ResourceLimit(format!("2^{} is too large to materialize", self.pow2)))?;
        let (n, d) = (self.mantissa.numer().clone(), self.mantissa.denom().clone());
        Ok(if self.pow2.is_negative() {
            BigRational::new(n, d << shift)
        } else {
            BigRational::new(n << shift, d)
        })
    }

    /// The value as a natural number, if it is one.
    pub fn to_biguint(&self, max_shift: u64) -> Option<BigUint> {
        let r = self.to_rational(max_shift).ok()?;
        if r.is_integer() {
            r.to_integer().to_biguint()
        } else {
            None
        }
    }

    /// Approximate base-2 logarithm of the magnitude. Only for plotting.
    pub fn log2_approx(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let p = self.pow2.to_f64().unwrap_or(f64::NAN);
        p + log2_biguint(self.mantissa.numer().magnitude()) - log2_biguint(self.mantissa.denom().magnitude())
    }

    /// `pow2 + bits(numer) - bits(denom)`; the true `log2 |value|` lies strictly
    /// within one of this estimate.
    fn log2_estimate(&self) -> BigInt {
        &self.pow2 + BigInt::from(self.mantissa.numer().bits()) - BigInt::from(self.mantissa.denom().bits())
    }
}

fn log2_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 64 {
        return n.to_f64().unwrap_or(0.0).log2();
    }
    let shift = bits - 64;
    (n >> shift).to_f64().unwrap_or(0.0).log2() + shift as f64
}

fn cmp_magnitude(a: &Coefficient, b: &Coefficient) -> Ordering {
    let (la, lb) = (a.log2_estimate(), b.log2_estimate());
    let two = BigInt::from(2);
    if la >= &lb + &two {
        return Ordering::Greater;
    }
    if lb >= &la + &two {
        return Ordering::Less;
    }
    let diff = (&a.pow2 - &b.pow2).to_i64().expect("exponents within comparison window");
    let mut lhs = a.mantissa.numer().magnitude() * b.mantissa.denom().magnitude();
    let mut rhs = b.mantissa.numer().magnitude() * a.mantissa.denom().magnitude();
    if diff > 0 {
        lhs <<= diff as u64;
    } else {
        rhs <<= diff.unsigned_abs();
    }
    lhs.cmp(&rhs)
}

impl Ord for Coefficient {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        match sa {
            0 => Ordering::Equal,
            1 => cmp_magnitude(self, other),
            _ => cmp_magnitude(self, other).reverse(),
        }
    }
}

impl PartialOrd for Coefficient {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for &Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        if self.is_zero() || rhs.is_zero() {
            return Coefficient::zero();
        }
        Coefficient::new(&self.mantissa * &rhs.mantissa, &self.pow2 + &rhs.pow2)
    }
}

impl Mul for Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: Coefficient) -> Coefficient {
        &self * &rhs
    }
}

impl Add for &Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &Coefficient) -> Coefficient {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        self.add_unchecked(rhs)
    }
}

impl Add for Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: Coefficient) -> Coefficient {
        &self + &rhs
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient {
            mantissa: -self.mantissa,
            pow2: self.pow2,
        }
    }
}

impl From<u64> for Coefficient {
    fn from(n: u64) -> Self {
        Self::from_integer(n)
    }
}

impl From<i64> for Coefficient {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigInt> for Coefficient {
    fn from(n: BigInt) -> Self {
        Self::from_integer(n)
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() || self.pow2.is_zero() {
            return write!(f, "{}", self.mantissa);
        }
        if self.is_dyadic_unit() {
            let sign = if self.is_negative() { "-" } else { "" };
            return write!(f, "{sign}2^{}", self.pow2);
        }
        if let Ok(r) = self.to_rational(PLAIN_RENDER_POW2) {
            return write!(f, "{r}");
        }
        write!(f, "{}/{}*2^{}", self.mantissa.numer(), self.mantissa.denom(), self.pow2)
    }
}

fn parse_int(s: &str) -> Result<BigInt> {
    let s = s.trim();
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("expected an integer, found {s:?}")));
    }
    s.parse().map_err(|_| Error::Parse(format!("bad integer {s:?}")))
}

fn parse_ratio(s: &str) -> Result<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(parse_int(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

/// Accepts `INT`, `INT/INT`, `2^INT` and `INT/INT*2^INT`, each optionally
/// preceded by a minus sign.
impl FromStr for Coefficient {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) if rest.starts_with("2^") => (true, rest),
            _ => (false, s),
        };
        let value = if let Some(e) = body.strip_prefix("2^") {
            Coefficient::power_of_two(parse_int(e)?)
        } else if let Some((m, e)) = body.split_once("*2^") {
            Coefficient::new(parse_ratio(m)?, parse_int(e)?)
        } else {
            Coefficient::from_rational(parse_ratio(body)?)
        };
        Ok(if negative { -value } else { value })
    }
}

impl Serialize for Coefficient {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Coefficient {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(s: &str) -> Coefficient {
        s.parse().unwrap()
    }

    #[test]
    fn normal_form_strips_powers_of_two() {
        let x = Coefficient::from_ratio(12, 40);
        assert_eq!(x.mantissa(), &BigRational::new(3.into(), 5.into()));
        assert_eq!(x.pow2(), &BigInt::from(-1));
        assert_eq!(Coefficient::from_integer(0), Coefficient::zero());
        assert_eq!(Coefficient::from_integer(8), Coefficient::power_of_two(3));
    }

    #[test]
    fn grammar_forms() {
        assert_eq!(c("6"), Coefficient::from_integer(6));
        assert_eq!(c("3/4"), Coefficient::from_ratio(3, 4));
        assert_eq!(c("2^-3"), Coefficient::from_ratio(1, 8));
        assert_eq!(c("3/5*2^100"), Coefficient::new(BigRational::new(3.into(), 5.into()), 100.into()));
        assert_eq!(c("-2^4"), Coefficient::from_integer(-16));
        assert!("2^".parse::<Coefficient>().is_err());
        assert!("1/0".parse::<Coefficient>().is_err());
        assert!("x".parse::<Coefficient>().is_err());
    }

    #[test]
    fn rendering() {
        assert_eq!(c("4").to_string(), "2^2");
        assert_eq!(c("6").to_string(), "6");
        assert_eq!(c("3/8").to_string(), "3/8");
        assert_eq!(c("3*2^200").to_string(), "3/1*2^200");
        assert_eq!(Coefficient::zero().to_string(), "0");
    }

    #[test]
    fn comparison_of_huge_powers() {
        let a = Coefficient::power_of_two(BigInt::from(10).pow(30u32));
        let b = &Coefficient::power_of_two(BigInt::from(10).pow(30u32) - 1) * &Coefficient::from_integer(3);
        assert!(b > a);
        assert!(Coefficient::from_integer(-5) < Coefficient::from_integer(-3));
        assert!(Coefficient::from_integer(-5) < Coefficient::zero());
    }

    #[test]
    fn pow_respects_cap() {
        let three = Coefficient::from_integer(3);
        assert_eq!(three.pow(&BigInt::from(4), 10).unwrap(), Coefficient::from_integer(81));
        assert_eq!(three.pow(&BigInt::from(-1), 10).unwrap(), Coefficient::from_ratio(1, 3));
        assert!(matches!(three.pow(&BigInt::from(11), 10), Err(Error::ExponentOverflow { .. })));
        let big = BigInt::from(1u64 << 40);
        assert_eq!(
            Coefficient::power_of_two(3).pow(&big, 10).unwrap(),
            Coefficient::power_of_two(big * 3)
        );
    }

    #[test]
    fn checked_add_span() {
        let a = Coefficient::power_of_two(0);
        let b = Coefficient::power_of_two(100);
        assert!(a.checked_add(&b, 99).is_err());
        assert_eq!(a.checked_add(&b, 100).unwrap().to_string(), "1267650600228229401496703205377");
    }

    fn arb_coeff() -> impl Strategy<Value = Coefficient> {
        (-50i64..50, 1i64..50, -80i64..80)
            .prop_map(|(n, d, e)| Coefficient::new(BigRational::new(n.into(), d.into()), e.into()))
    }

    fn value(x: &Coefficient) -> BigRational {
        x.to_rational(1000).unwrap()
    }

    proptest! {
        #[test]
        fn display_round_trips(x in arb_coeff()) {
            prop_assert_eq!(x.to_string().parse::<Coefficient>().unwrap(), x);
        }

        #[test]
        fn ops_agree_with_rationals(x in arb_coeff(), y in arb_coeff()) {
            prop_assert_eq!(value(&(&x + &y)), value(&x) + value(&y));
            prop_assert_eq!(value(&(&x * &y)), value(&x) * value(&y));
            prop_assert_eq!(x.cmp(&y), value(&x).cmp(&value(&y)));
        }
    }
}
