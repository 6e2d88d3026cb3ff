//! Exhaustive oracles. They share nothing with the code they check beyond the
//! coefficient type: orientation is recomputed over plain rationals, convex
//! position is tested by point-in-triangle, and max-products come from full
//! tuple enumeration.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::geometry::{LogPoint, PointSet, Tau};
use crate::polynomials::Coefficient;
use crate::sps::SpsExpression;

pub const CONVEX_SUBSET_CAP: usize = 12;
pub const CONVOLUTION_CAP: usize = 64;

fn small(v: &BigInt) -> Result<i32> {
    v.to_i32()
        .ok_or_else(|| Error::ResourceLimit(format!("coordinate difference {v} is too large for the oracle")))
}

fn rational(c: &Coefficient) -> Result<BigRational> {
    c.to_rational(1 << 16)
}

/// Sign of the turn `a -> b -> c` from the value
/// `ra^(2(dxc-dxb)) rb^(-2dxc) rc^(2dxb) tau^(dxb dhc - dxc dhb)` compared with 1.
fn turn(a: &LogPoint, b: &LogPoint, c: &LogPoint, tau: &BigRational) -> Result<i8> {
    let dxb = small(&(&b.x - &a.x))?;
    let dxc = small(&(&c.x - &a.x))?;
    let dhb = i32::try_from(b.tau_halves - a.tau_halves).map_err(|_| Error::ResourceLimit("tau_halves".into()))?;
    let dhc = i32::try_from(c.tau_halves - a.tau_halves).map_err(|_| Error::ResourceLimit("tau_halves".into()))?;
    let value = rational(&a.r)?.pow(2 * (dxc - dxb))
        * rational(&b.r)?.pow(-2 * dxc)
        * rational(&c.r)?.pow(2 * dxb)
        * tau.pow(dxb * dhc - dxc * dhb);
    Ok(match value.cmp(&BigRational::one()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    })
}

/// `y_a` vs `y_b` through `r_a^2 tau^(h_a - h_b)` vs `r_b^2`.
fn y_order(a: &LogPoint, b: &LogPoint, tau: &BigRational) -> Result<Ordering> {
    let h = i32::try_from(a.tau_halves - b.tau_halves).map_err(|_| Error::ResourceLimit("tau_halves".into()))?;
    let ra = rational(&a.r)?;
    let rb = rational(&b.r)?;
    Ok((&ra * &ra * tau.pow(h)).cmp(&(&rb * &rb)))
}

/// Size of the largest subset of `a` in strict convex position, by trying
/// every subset from the largest down.
pub fn brute_max_convex_subset(a: &PointSet, tau: &Tau) -> Result<usize> {
    let n = a.len();
    if n > CONVEX_SUBSET_CAP {
        return Err(Error::CapExceeded {
            size: n,
            cap: CONVEX_SUBSET_CAP,
        });
    }
    let pts = a.points();
    let t = tau.rational();
    let mut orient = vec![0i8; n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                orient[(i * n + j) * n + k] = turn(&pts[i], &pts[j], &pts[k], t)?;
            }
        }
    }
    let mut same_or_below = vec![Ordering::Equal; n * n];
    for i in 0..n {
        for j in 0..n {
            same_or_below[i * n + j] = pts[i].x.cmp(&pts[j].x).then(y_order(&pts[i], &pts[j], t)?);
        }
    }
    let o = |i: usize, j: usize, k: usize| orient[(i * n + j) * n + k];
    // p on the closed segment [a, b]
    let on_segment = |p: usize, a: usize, b: usize| {
        o(a, b, p) == 0
            && same_or_below[a * n + p] != Ordering::Greater
            && same_or_below[p * n + b] != Ordering::Greater
            || o(a, b, p) == 0
                && same_or_below[b * n + p] != Ordering::Greater
                && same_or_below[p * n + a] != Ordering::Greater
    };
    // p in the closed triangle abc, which must be nondegenerate
    let in_triangle = |p: usize, a: usize, b: usize, c: usize| {
        let s = o(a, b, c);
        s != 0 && o(a, b, p) * s >= 0 && o(b, c, p) * s >= 0 && o(c, a, p) * s >= 0
    };
    let independent = |members: &[usize]| {
        if members.len() <= 2 {
            return members.len() < 2 || same_or_below[members[0] * n + members[1]] != Ordering::Equal;
        }
        for &p in members {
            let others: Vec<usize> = members.iter().copied().filter(|&q| q != p).collect();
            for (x, &a) in others.iter().enumerate() {
                for (y, &b) in others.iter().enumerate().skip(x + 1) {
                    if on_segment(p, a, b) {
                        return false;
                    }
                    for &c in &others[y + 1..] {
                        if in_triangle(p, a, b, c) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    };
    for size in (1..=n).rev() {
        for mask in 0u32..1 << n {
            if mask.count_ones() as usize != size {
                continue;
            }
            let members: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if independent(&members) {
                return Ok(size);
            }
        }
    }
    Ok(0)
}

/// `C[i][l]` by enumerating every tuple of terms, one per factor.
pub fn brute_max_convolution(e: &SpsExpression) -> Result<Vec<Vec<Option<Coefficient>>>> {
    let width = (0..e.k()).map(|i| e.row_degree(i)).max().unwrap_or(0) as usize + 1;
    let mut table = Vec::with_capacity(e.k());
    for row in e.rows() {
        let tuples: usize = row.iter().map(|f| f.term_count()).product();
        if tuples > CONVOLUTION_CAP {
            return Err(Error::CapExceeded {
                size: tuples,
                cap: CONVOLUTION_CAP,
            });
        }
        let mut best: Vec<Option<Coefficient>> = vec![None; width];
        let mut digits = vec![0usize; row.len()];
        loop {
            let mut exp = 0usize;
            let mut value = Coefficient::one();
            for (f, &d) in row.iter().zip(&digits) {
                let (e, c) = &f.terms()[d];
                exp += *e as usize;
                value = &value * c;
            }
            if best[exp].as_ref().is_none_or(|b| &value > b) {
                best[exp] = Some(value);
            }
            let mut pos = 0;
            loop {
                if pos == row.len() {
                    break;
                }
                digits[pos] += 1;
                if digits[pos] < row[pos].term_count() {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
            if pos == row.len() {
                break;
            }
        }
        table.push(best);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sps::SparsePoly;

    fn set(v: &[(i64, u64)]) -> PointSet {
        v.iter()
            .map(|&(x, r)| LogPoint::lifted(x, Coefficient::from(r)).unwrap())
            .collect()
    }

    #[test]
    fn convex_subset_examples() {
        let tau = Tau::from_integer(4).unwrap();
        let collinear = set(&[(0, 1), (1, 2), (2, 4), (3, 8), (4, 16)]);
        assert_eq!(brute_max_convex_subset(&collinear, &tau).unwrap(), 2);
        let square = set(&[(0, 1), (0, 2), (1, 1), (1, 2)]);
        assert_eq!(brute_max_convex_subset(&square, &tau).unwrap(), 4);
        let interior = set(&[(0, 1), (4, 1), (2, 256), (2, 4)]);
        assert_eq!(brute_max_convex_subset(&interior, &tau).unwrap(), 3);
        // two encodings of one location count once
        let twins = PointSet::new([
            LogPoint::new(0, Coefficient::from(2u64), 0).unwrap(),
            LogPoint::new(0, Coefficient::one(), 1).unwrap(),
        ]);
        assert_eq!(brute_max_convex_subset(&twins, &tau).unwrap(), 1);
        let big: PointSet = (0..13).map(|x| LogPoint::lifted(x, Coefficient::one()).unwrap()).collect();
        assert!(matches!(brute_max_convex_subset(&big, &tau), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn convolution_examples() {
        let f = SparsePoly::from_u64s(&[(0, 1), (1, 1)]).unwrap();
        let g = SparsePoly::from_u64s(&[(0, 1), (1, 4)]).unwrap();
        let e = SpsExpression::new(vec![vec![f.clone(), g]]).unwrap();
        let t = brute_max_convolution(&e).unwrap();
        let four = Some(Coefficient::from(4u64));
        assert_eq!(t[0], vec![Some(Coefficient::one()), four.clone(), four]);
        let single = SpsExpression::new(vec![vec![f]]).unwrap();
        assert_eq!(brute_max_convolution(&single).unwrap()[0], vec![Some(Coefficient::one()); 2]);
    }
}
