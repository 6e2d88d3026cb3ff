//! The sparse-factor witness and the degree bound it implies.
//!
//! `C[i][l]` is the largest single product `prod_r c_{i,r,l_r}` with
//! `l_1 + ... + l_m = l`. Strong log-concavity of the expansion pins the column
//! maxima `C_l` on a strictly concave curve, so the product that attains most of
//! them owns at least `d/k` vertices of its Minkowski sum, and one of its
//! factors must then carry at least `d/(km)` terms.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::expression::{SpsExpression, SpsParams};
use crate::error::{Error, Result};
use crate::geometry::{upper_envelope, LogPoint, PointSet, Tau};
use crate::limits::Limits;
use crate::polynomials::{check_strong_with, check_with_factor, Coefficient, Polynomial};

/// A maximal product and the lexicographically smallest exponent tuple reaching it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaxProduct {
    pub value: Coefficient,
    pub composition: Vec<u64>,
}

/// `table[i][l]`, for `l` up to the largest row degree; `None` where row `i`
/// has no product of degree `l`.
pub type MaxProductTable = Vec<Vec<Option<MaxProduct>>>;

/// Layered max-convolution over the factors of each row.
pub fn max_product_table(e: &SpsExpression) -> MaxProductTable {
    let width = (0..e.k()).map(|i| e.row_degree(i)).max().unwrap_or(0) as usize + 1;
    e.rows()
        .iter()
        .map(|row| {
            let mut layer: BTreeMap<u64, MaxProduct> = BTreeMap::new();
            layer.insert(
                0,
                MaxProduct {
                    value: Coefficient::one(),
                    composition: Vec::new(),
                },
            );
            for f in row {
                let mut next: BTreeMap<u64, MaxProduct> = BTreeMap::new();
                for (l, best) in &layer {
                    for (exp, c) in f.terms() {
                        let value = &best.value * c;
                        let slot = next.entry(l + exp);
                        let better = |old: &MaxProduct| {
                            value > old.value
                                || (value == old.value && composition_lt(&best.composition, *exp, &old.composition))
                        };
                        match slot {
                            std::collections::btree_map::Entry::Vacant(v) => {
                                let mut composition = best.composition.clone();
                                composition.push(*exp);
                                v.insert(MaxProduct { value, composition });
                            }
                            std::collections::btree_map::Entry::Occupied(mut o) => {
                                if better(o.get()) {
                                    let mut composition = best.composition.clone();
                                    composition.push(*exp);
                                    o.insert(MaxProduct { value, composition });
                                }
                            }
                        }
                    }
                }
                layer = next;
            }
            let mut out = vec![None; width];
            for (l, best) in layer {
                out[l as usize] = Some(best);
            }
            out
        })
        .collect()
}

/// `prefix ++ [last] < other`, lexicographically.
fn composition_lt(prefix: &[u64], last: u64, other: &[u64]) -> bool {
    prefix.iter().copied().chain(std::iter::once(last)).lt(other.iter().copied())
}

fn value_at(row: &[Option<MaxProduct>], l: usize) -> Option<&Coefficient> {
    row.get(l).and_then(|c| c.as_ref()).map(|c| &c.value)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessReport {
    pub i0: usize,
    pub j0: usize,
    /// Exponents `l` in `1..=d` where product `i0` attains the column maximum.
    pub l_set: Vec<usize>,
    pub factor_terms: usize,
    /// `d / (k m)`, reduced.
    pub threshold: String,
    pub d: usize,
    pub k: usize,
    pub m: usize,
    /// `C_l` for `l = 0..=d`, `0` where no product reaches degree `l`.
    pub column_maxima: Vec<Coefficient>,
    /// `C[i][l]` for `l = 0..=d`.
    pub row_maxima: Vec<Vec<Coefficient>>,
}

pub fn sparse_factor_witness(e: &SpsExpression) -> Result<WitnessReport> {
    sparse_factor_witness_with(e, &Limits::default())
}

pub fn sparse_factor_witness_with(e: &SpsExpression, limits: &Limits) -> Result<WitnessReport> {
    let a = e.expand_with(limits)?;
    witness_for_expansion(e, &a)
}

fn fatal(msg: String) -> Error {
    Error::FatalInconsistency(msg)
}

fn witness_for_expansion(e: &SpsExpression, a: &Polynomial) -> Result<WitnessReport> {
    let (k, m, d) = (e.k(), e.m(), a.degree());
    if d == 0 {
        return Err(Error::PreconditionFailed("the expansion is constant".into()));
    }
    let k_dm = BigInt::from(k) * num_traits::pow(BigInt::from(d), m);
    let hypothesis = check_with_factor(a, &Coefficient::from_integer(&k_dm * &k_dm))?;
    if !hypothesis.holds {
        return Err(Error::PreconditionFailed(format!(
            "a_i^2 > k^2 d^(2m) a_(i-1) a_(i+1) fails at i in {:?}",
            hypothesis.failures
        )));
    }

    let table = max_product_table(e);
    let k_dm = Coefficient::from_integer(k_dm);
    let mut column: Vec<Coefficient> = Vec::with_capacity(d + 1);
    for l in 0..=d {
        let c = table
            .iter()
            .filter_map(|row| value_at(row, l))
            .max()
            .cloned()
            .unwrap_or_else(Coefficient::zero);
        let al = a.coeff(l);
        if c > al || al > &k_dm * &c {
            return Err(fatal(format!("sandwich C_l <= a_l <= k d^m C_l fails at l = {l}")));
        }
        column.push(c);
    }
    for l in 1..d {
        if column[l].square() <= &column[l - 1] * &column[l + 1] {
            return Err(fatal(format!("column maxima are not strictly concave at l = {l}")));
        }
    }

    // i0 attains the column maximum most often; ties go to the smaller index.
    let attained = |i: usize| -> Vec<usize> {
        (1..=d)
            .filter(|&l| value_at(&table[i], l) == Some(&column[l]))
            .collect()
    };
    let (i0, l_set) = (0..k)
        .map(|i| (i, attained(i)))
        .fold(None::<(usize, Vec<usize>)>, |best, cur| match best {
            Some(b) if b.1.len() >= cur.1.len() => Some(b),
            _ => Some(cur),
        })
        .expect("k >= 1");
    if l_set.len() * k < d {
        return Err(fatal(format!("no product attains d/k = {d}/{k} column maxima")));
    }

    // The attained maxima must be vertices of the upper envelope of row i0.
    let row: PointSet = table[i0]
        .iter()
        .enumerate()
        .filter_map(|(l, c)| c.as_ref().map(|c| LogPoint::lifted(l as u64, c.value.clone())))
        .collect::<Result<_>>()?;
    let tau = Tau::from_integer(2)?;
    let envelope: PointSet = upper_envelope(&row, &tau)?.into_iter().collect();
    for &l in &l_set {
        let p = LogPoint::lifted(l as u64, column[l].clone())?;
        if !envelope.contains(&p) {
            return Err(fatal(format!("(l, log C_l) at l = {l} is not an envelope vertex of product {i0}")));
        }
    }
    let factors = &e.rows()[i0];
    let total_terms: usize = factors.iter().map(|f| f.term_count()).sum();
    if envelope.len() > total_terms {
        return Err(fatal(format!(
            "envelope of product {i0} has {} vertices, more than its {total_terms} factor terms",
            envelope.len()
        )));
    }

    let j0 = (0..factors.len())
        .rev()
        .max_by_key(|&j| factors[j].term_count())
        .expect("rows are nonempty");
    let factor_terms = factors[j0].term_count();
    if factor_terms * m < l_set.len() || factor_terms * k * m < d {
        return Err(fatal(format!(
            "factor ({i0}, {j0}) has {factor_terms} terms, fewer than d/(km) = {d}/{}",
            k * m
        )));
    }

    let row_maxima = table
        .iter()
        .map(|row| {
            (0..=d)
                .map(|l| value_at(row, l).cloned().unwrap_or_else(Coefficient::zero))
                .collect()
        })
        .collect();
    Ok(WitnessReport {
        i0,
        j0,
        l_set,
        factor_terms,
        threshold: BigRational::new(d.into(), (k * m).into()).to_string(),
        d,
        k,
        m,
        column_maxima: column,
        row_maxima,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Theorem2Verdict {
    /// The expansion satisfies `a_i^2 > d^(2d) a_(i-1) a_(i+1)` with positive interior coefficients.
    pub applicable: bool,
    /// `d <= k m t`.
    pub bound_holds: bool,
    pub params: SpsParams,
    /// `"not-applicable"`, `"trivial"` (`d <= k` or `d <= m`) or `"witness"`.
    pub route: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
}

pub fn verify_theorem2(e: &SpsExpression) -> Result<Theorem2Verdict> {
    verify_theorem2_with(e, &Limits::default())
}

pub fn verify_theorem2_with(e: &SpsExpression, limits: &Limits) -> Result<Theorem2Verdict> {
    let a = e.expand_with(limits)?;
    let params = SpsParams {
        k: e.k(),
        m: e.m(),
        t: e.t(),
        d: a.degree(),
    };
    let bound_holds = params.d as u128 <= params.kmt();
    let applicable = params.d == 0 || check_strong_with(&a, limits)?.holds;
    let verdict = |route, witness| Theorem2Verdict {
        applicable,
        bound_holds,
        params,
        route,
        witness,
    };
    if !applicable {
        return Ok(verdict("not-applicable", None));
    }
    let trivial = params.d <= params.k || params.d <= params.m;
    let witness = if trivial {
        None
    } else {
        match witness_for_expansion(e, &a) {
            Ok(w) => Some(w),
            Err(Error::PreconditionFailed(msg)) => {
                return Err(fatal(format!("strong condition holds but the witness hypothesis fails: {msg}")))
            }
            Err(err) => return Err(err),
        }
    };
    if !bound_holds {
        return Err(fatal(format!(
            "d = {} exceeds k m t = {} on an applicable instance",
            params.d,
            params.kmt()
        )));
    }
    Ok(verdict(if trivial { "trivial" } else { "witness" }, witness))
}
