use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::polynomials::Coefficient;

/// A planar point `(x, log r + (tau_halves / 2) * log tau)`.
///
/// Equality is structural: two points at the same geometric location but with
/// different `(r, tau_halves)` encodings are distinct values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LogPoint {
    pub x: BigInt,
    pub r: Coefficient,
    pub tau_halves: i64,
}

impl LogPoint {
    pub fn new(x: impl Into<BigInt>, r: Coefficient, tau_halves: i64) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::PreconditionFailed(format!("point coefficient {r} is not positive")));
        }
        Ok(LogPoint {
            x: x.into(),
            r,
            tau_halves,
        })
    }

    /// `(x, log r)`.
    pub fn lifted(x: impl Into<BigInt>, r: Coefficient) -> Result<Self> {
        Self::new(x, r, 0)
    }

    /// Componentwise sum: `x` adds, `r` multiplies, `tau_halves` adds.
    pub fn translate(&self, other: &LogPoint) -> LogPoint {
        LogPoint {
            x: &self.x + &other.x,
            r: &self.r * &other.r,
            tau_halves: self.tau_halves + other.tau_halves,
        }
    }

    /// Approximate `y` for plotting.
    pub fn y_approx(&self, tau: &Tau) -> f64 {
        std::f64::consts::LN_2 * (self.r.log2_approx() + self.tau_halves as f64 / 2.0 * tau.value.log2_approx())
    }
}

/// A finite, deduplicated set of [`LogPoint`]s kept in sorted order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PointSet {
    points: Vec<LogPoint>,
}

impl PointSet {
    pub fn new(points: impl IntoIterator<Item = LogPoint>) -> Self {
        let mut points: Vec<LogPoint> = points.into_iter().collect();
        points.sort();
        points.dedup();
        PointSet { points }
    }

    pub fn points(&self) -> &[LogPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &LogPoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.points.iter().all(|p| other.contains(p))
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        PointSet::new(self.points.iter().chain(other.points.iter()).cloned())
    }

    pub fn iter(&self) -> std::slice::Iter<'_, LogPoint> {
        self.points.iter()
    }
}

impl FromIterator<LogPoint> for PointSet {
    fn from_iter<I: IntoIterator<Item = LogPoint>>(iter: I) -> Self {
        PointSet::new(iter)
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a LogPoint;
    type IntoIter = std::slice::Iter<'a, LogPoint>;
    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// The rational `tau > 1` that gives meaning to `tau_halves`, together with the
/// exponent cap of the exact predicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tau {
    rational: BigRational,
    value: Coefficient,
    exponent_cap: u64,
}

impl Tau {
    pub fn new(tau: BigRational) -> Result<Self> {
        if tau <= BigRational::one() {
            return Err(Error::InvalidTau(format!("{tau} must exceed 1")));
        }
        Ok(Tau {
            value: Coefficient::from_rational(tau.clone()),
            rational: tau,
            exponent_cap: Limits::default().exponent_cap,
        })
    }

    pub fn from_integer(tau: u64) -> Result<Self> {
        Self::new(BigRational::from_integer(tau.into()))
    }

    pub fn with_exponent_cap(mut self, cap: u64) -> Self {
        self.exponent_cap = cap;
        self
    }

    pub fn rational(&self) -> &BigRational {
        &self.rational
    }

    pub fn value(&self) -> &Coefficient {
        &self.value
    }

    pub fn exponent_cap(&self) -> u64 {
        self.exponent_cap
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Turn {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Turn {
    pub fn signum(self) -> i8 {
        match self {
            Turn::Clockwise => -1,
            Turn::Collinear => 0,
            Turn::CounterClockwise => 1,
        }
    }
}

/// Accumulates `prod base^exp` as a fraction `lhs / rhs` with only
/// nonnegative powers on each side.
struct PowerProduct<'a> {
    tau: &'a Tau,
    lhs: Coefficient,
    rhs: Coefficient,
}

impl<'a> PowerProduct<'a> {
    fn new(tau: &'a Tau) -> Self {
        PowerProduct {
            tau,
            lhs: Coefficient::one(),
            rhs: Coefficient::one(),
        }
    }

    fn push(&mut self, base: &Coefficient, exponent: &BigInt) -> Result<()> {
        if exponent.is_zero() {
            return Ok(());
        }
        let power = base.pow(&exponent.abs(), self.tau.exponent_cap)?;
        if exponent.is_positive() {
            self.lhs = &self.lhs * &power;
        } else {
            self.rhs = &self.rhs * &power;
        }
        Ok(())
    }

    fn sign(self) -> Ordering {
        self.lhs.cmp(&self.rhs)
    }
}

/// Sign of `(x2-x1)(y3-y1) - (x3-x1)(y2-y1)`.
///
/// Twice that determinant is the logarithm of
/// `r1^(2(dx3-dx2)) * r2^(-2 dx3) * r3^(2 dx2) * tau^(dx2 (h3-h1) - dx3 (h2-h1))`,
/// so the sign is decided by comparing that rational with 1.
pub fn orientation(p1: &LogPoint, p2: &LogPoint, p3: &LogPoint, tau: &Tau) -> Result<Turn> {
    let dx2 = &p2.x - &p1.x;
    let dx3 = &p3.x - &p1.x;
    let dh2 = BigInt::from(p2.tau_halves) - p1.tau_halves;
    let dh3 = BigInt::from(p3.tau_halves) - p1.tau_halves;
    let mut prod = PowerProduct::new(tau);
    prod.push(&p1.r, &((&dx3 - &dx2) * 2))?;
    prod.push(&p2.r, &(-(&dx3 * BigInt::from(2))))?;
    prod.push(&p3.r, &(&dx2 * 2))?;
    prod.push(&tau.value, &(&dx2 * &dh3 - &dx3 * &dh2))?;
    Ok(match prod.sign() {
        Ordering::Less => Turn::Clockwise,
        Ordering::Equal => Turn::Collinear,
        Ordering::Greater => Turn::CounterClockwise,
    })
}

/// Compare the `y` coordinates via `r_a^2 tau^(h_a)` against `r_b^2 tau^(h_b)`.
pub fn compare_y(a: &LogPoint, b: &LogPoint, tau: &Tau) -> Result<Ordering> {
    let mut prod = PowerProduct::new(tau);
    prod.lhs = a.r.square();
    prod.rhs = b.r.square();
    prod.push(&tau.value, &BigInt::from(a.tau_halves - b.tau_halves))?;
    Ok(prod.sign())
}

/// Lexicographic `(x, y)` order on geometric locations.
pub fn compare_xy(a: &LogPoint, b: &LogPoint, tau: &Tau) -> Result<Ordering> {
    match a.x.cmp(&b.x) {
        Ordering::Equal => compare_y(a, b, tau),
        other => Ok(other),
    }
}

/// Sort by `(x, y)` and keep one representative per geometric location
/// (the structurally smallest).
pub(crate) fn sorted_locations(points: &[LogPoint], tau: &Tau) -> Result<Vec<LogPoint>> {
    let mut err = None;
    let mut sorted: Vec<LogPoint> = points.to_vec();
    sorted.sort();
    sorted.sort_by(|a, b| {
        compare_xy(a, b, tau).unwrap_or_else(|e| {
            err.get_or_insert(e);
            Ordering::Equal
        })
    });
    if let Some(e) = err {
        return Err(e);
    }
    let mut out: Vec<LogPoint> = Vec::with_capacity(sorted.len());
    for p in sorted {
        if let Some(last) = out.last() {
            if compare_xy(last, &p, tau)? == Ordering::Equal {
                continue;
            }
        }
        out.push(p);
    }
    Ok(out)
}

/// `x` as an `i64` where it fits; used for plot-friendly output.
pub(crate) fn x_i64(p: &LogPoint) -> Option<i64> {
    p.x.to_i64()
}
