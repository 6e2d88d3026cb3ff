//! Largest subset in strict convex position.
//!
//! For every choice of the lowest vertex `p` the remaining candidates (those
//! above `p`, or level with it and to its right) are sorted by angle around `p`.
//! `best[i][j]` is the largest convex chain `p -> ... -> i -> j` with strictly
//! increasing angles and left turns throughout. For a fixed middle vertex `i`
//! the admissible predecessors of `j` form a prefix of the predecessors sorted
//! by the direction of `k - i`, so each row is filled with one sorted sweep.
//! Anchors are independent and run through [`Exec`].

use std::cmp::Ordering;

use num_traits::Signed;

use super::point::{compare_y, orientation, sorted_locations, LogPoint, PointSet, Tau, Turn};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::limits::Limits;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainResult {
    pub size: usize,
    pub witness: PointSet,
}

pub fn max_convex_chain(a: &PointSet, tau: &Tau) -> Result<ChainResult> {
    max_convex_chain_with(a, tau, Limits::default().chain_cap, Exec::default())
}

pub fn max_convex_chain_with(a: &PointSet, tau: &Tau, cap: usize, exec: Exec) -> Result<ChainResult> {
    if a.len() > cap {
        return Err(Error::CapExceeded { size: a.len(), cap });
    }
    let pts = sorted_locations(a.points(), tau)?;
    if pts.len() <= 2 {
        return Ok(ChainResult {
            size: pts.len(),
            witness: pts.into_iter().collect(),
        });
    }
    let per_anchor = exec.map(pts.len(), |anchor| best_with_anchor(&pts, anchor, tau));
    let mut best: Vec<usize> = vec![0, 1];
    for chain in per_anchor {
        let chain = chain?;
        if chain.len() > best.len() {
            best = chain;
        }
    }
    Ok(ChainResult {
        size: best.len(),
        witness: best.into_iter().map(|i| pts[i].clone()).collect(),
    })
}

fn try_sort<T>(v: &mut [T], mut cmp: impl FnMut(&T, &T) -> Result<Ordering>) -> Result<()> {
    let mut err = None;
    v.sort_by(|a, b| {
        cmp(a, b).unwrap_or_else(|e| {
            err.get_or_insert(e);
            Ordering::Equal
        })
    });
    err.map_or(Ok(()), Err)
}

/// `(y, x)` order, used to decide which point may serve as the lowest vertex.
fn below(a: &LogPoint, b: &LogPoint, tau: &Tau) -> Result<Ordering> {
    Ok(compare_y(a, b, tau)?.then_with(|| a.x.cmp(&b.x)))
}

fn ccw(a: &LogPoint, b: &LogPoint, c: &LogPoint, tau: &Tau) -> Result<bool> {
    Ok(orientation(a, b, c, tau)? == Turn::CounterClockwise)
}

/// Indices into `pts` of the largest convex polygon whose lowest vertex is
/// `pts[anchor]`.
fn best_with_anchor(pts: &[LogPoint], anchor: usize, tau: &Tau) -> Result<Vec<usize>> {
    let p = &pts[anchor];
    let mut cand: Vec<usize> = Vec::new();
    for (i, q) in pts.iter().enumerate() {
        if i != anchor && below(p, q, tau)? == Ordering::Less {
            cand.push(i);
        }
    }
    if cand.is_empty() {
        return Ok(vec![anchor]);
    }
    // Angular order around p; along a ray, nearer points first.
    try_sort(&mut cand, |&u, &v| {
        let (u, v) = (&pts[u], &pts[v]);
        Ok(match orientation(p, u, v, tau)? {
            Turn::CounterClockwise => Ordering::Less,
            Turn::Clockwise => Ordering::Greater,
            Turn::Collinear if u.x != p.x => (&u.x - &p.x).abs().cmp(&(&v.x - &p.x).abs()),
            Turn::Collinear => compare_y(u, v, tau)?,
        })
    })?;

    // Node 0 is the anchor, node t >= 1 is cand[t - 1].
    let m = cand.len() + 1;
    let node = |t: usize| -> &LogPoint { if t == 0 { p } else { &pts[cand[t - 1]] } };
    let mut ray = vec![0usize; m];
    for t in 2..m {
        let same = orientation(p, node(t - 1), node(t), tau)? == Turn::Collinear;
        ray[t] = if same { ray[t - 1] } else { ray[t - 1] + 1 };
    }

    const NONE: u32 = u32::MAX;
    let mut best = vec![0u32; m * m];
    let mut pred = vec![NONE; m * m];
    best[1..m].fill(2);
    for i in 1..m {
        let mut incoming: Vec<usize> = std::iter::once(0).chain((1..i).filter(|&k| ray[k] < ray[i])).collect();
        let mut outgoing: Vec<usize> = (i + 1..m).filter(|&j| ray[j] > ray[i]).collect();
        if outgoing.is_empty() {
            continue;
        }
        let vi = node(i);
        let by_direction = |a: &usize, b: &usize| -> Result<Ordering> {
            Ok(match orientation(vi, node(*a), node(*b), tau)? {
                Turn::CounterClockwise => Ordering::Less,
                Turn::Clockwise => Ordering::Greater,
                Turn::Collinear => Ordering::Equal,
            })
        };
        try_sort(&mut incoming, by_direction)?;
        try_sort(&mut outgoing, by_direction)?;
        let mut ptr = 0;
        let mut top: Option<(u32, usize)> = None;
        for &j in &outgoing {
            while ptr < incoming.len() && ccw(node(incoming[ptr]), vi, node(j), tau)? {
                let k = incoming[ptr];
                let value = best[k * m + i];
                if top.is_none_or(|(v, _)| value > v) {
                    top = Some((value, k));
                }
                ptr += 1;
            }
            if let Some((value, k)) = top {
                best[i * m + j] = value + 1;
                pred[i * m + j] = k as u32;
            }
        }
    }

    let mut winner: Option<(u32, usize, usize)> = None;
    for i in 1..m {
        for j in i + 1..m {
            let value = best[i * m + j];
            if value >= 3 && winner.is_none_or(|(v, _, _)| value > v) && ccw(node(i), node(j), p, tau)? {
                winner = Some((value, i, j));
            }
        }
    }
    let Some((_, mut i, mut j)) = winner else {
        return Ok(vec![anchor, cand[0]]);
    };
    let mut chain = vec![cand[j - 1]];
    while i != 0 {
        chain.push(cand[i - 1]);
        let k = pred[i * m + j] as usize;
        j = i;
        i = k;
    }
    chain.push(anchor);
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::is_convexly_independent;
    use crate::polynomials::Coefficient;

    fn set(v: &[(i64, u64)]) -> PointSet {
        v.iter()
            .map(|&(x, r)| LogPoint::lifted(x, Coefficient::from(r)).unwrap())
            .collect()
    }

    fn tau4() -> Tau {
        Tau::from_integer(4).unwrap()
    }

    #[test]
    fn convex_position_keeps_everything() {
        let a = set(&[(0, 1), (0, 2), (1, 1), (1, 2)]);
        let r = max_convex_chain(&a, &tau4()).unwrap();
        assert_eq!(r.size, 4);
        assert_eq!(r.witness, a);
    }

    #[test]
    fn collinear_points_give_two() {
        let a = set(&[(0, 1), (1, 2), (2, 4), (3, 8), (4, 16)]);
        let r = max_convex_chain(&a, &tau4()).unwrap();
        assert_eq!(r.size, 2);
    }

    #[test]
    fn interior_point_is_dropped() {
        // triangle with a point strictly inside
        let a = set(&[(0, 1), (4, 1), (2, 256), (2, 4)]);
        let r = max_convex_chain(&a, &tau4()).unwrap();
        assert_eq!(r.size, 3);
        assert!(is_convexly_independent(&r.witness, &tau4()).unwrap());
    }

    #[test]
    fn strictly_concave_run_is_independent() {
        // 2^{i(7-i)}: a strictly concave sequence of 8 points
        let a: PointSet = (0..8)
            .map(|i| LogPoint::lifted(i, Coefficient::power_of_two(i * (7 - i))).unwrap())
            .collect();
        let r = max_convex_chain(&a, &tau4()).unwrap();
        assert_eq!(r.size, 8);
    }

    #[test]
    fn cap_is_enforced() {
        let a = set(&[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(
            max_convex_chain_with(&a, &tau4(), 2, Exec::Sequential),
            Err(Error::CapExceeded { size: 3, cap: 2 })
        );
    }

    #[test]
    fn small_sets() {
        assert_eq!(max_convex_chain(&PointSet::default(), &tau4()).unwrap().size, 0);
        assert_eq!(max_convex_chain(&set(&[(1, 1)]), &tau4()).unwrap().size, 1);
        assert_eq!(max_convex_chain(&set(&[(1, 1), (1, 2)]), &tau4()).unwrap().size, 2);
    }

    #[test]
    fn strategies_agree() {
        let a = set(&[(0, 1), (1, 5), (2, 7), (3, 6), (4, 2), (2, 1), (1, 3), (3, 3), (0, 9)]);
        let s = max_convex_chain_with(&a, &tau4(), 400, Exec::Sequential).unwrap();
        let p = max_convex_chain_with(&a, &tau4(), 400, Exec::Parallel).unwrap();
        assert_eq!(s, p);
        assert!(is_convexly_independent(&s.witness, &tau4()).unwrap());
    }
}
