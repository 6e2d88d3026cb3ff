use super::point::{orientation, sorted_locations, LogPoint, PointSet, Tau, Turn};
use crate::error::Result;

/// `{a + b : a in A, b in B}`.
pub fn minkowski_sum(a: &PointSet, b: &PointSet) -> PointSet {
    a.iter().flat_map(|p| b.iter().map(move |q| p.translate(q))).collect()
}

/// Minkowski sum of several sets, folded left to right. The empty list gives
/// the neutral set `{(0, 1, 0)}`.
pub fn minkowski_sum_all<'a>(sets: impl IntoIterator<Item = &'a PointSet>) -> PointSet {
    let neutral = PointSet::new([LogPoint {
        x: 0.into(),
        r: crate::polynomials::Coefficient::one(),
        tau_halves: 0,
    }]);
    sets.into_iter().fold(neutral, |acc, s| minkowski_sum(&acc, s))
}

/// Hull vertices in counterclockwise order starting from the lowest point of
/// the leftmost column. Points in the relative interior of an edge are not
/// vertices. Geometrically coincident points are reported once.
pub fn convex_hull_vertices(a: &PointSet, tau: &Tau) -> Result<Vec<LogPoint>> {
    let pts = sorted_locations(a.points(), tau)?;
    if pts.len() <= 2 {
        return Ok(pts);
    }
    let mut lower: Vec<LogPoint> = Vec::new();
    for p in &pts {
        pop_while(&mut lower, p, tau, |t| t != Turn::CounterClockwise)?;
        lower.push(p.clone());
    }
    let mut upper: Vec<LogPoint> = Vec::new();
    for p in pts.iter().rev() {
        pop_while(&mut upper, p, tau, |t| t != Turn::CounterClockwise)?;
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    Ok(lower)
}

/// Hull vertices visible from `y = +inf`, left to right.
pub fn upper_envelope(a: &PointSet, tau: &Tau) -> Result<Vec<LogPoint>> {
    let pts = sorted_locations(a.points(), tau)?;
    // Only the top point of each column can be on the upper envelope.
    let mut tops: Vec<LogPoint> = Vec::with_capacity(pts.len());
    for p in pts {
        if tops.last().is_some_and(|q: &LogPoint| q.x == p.x) {
            tops.pop();
        }
        tops.push(p);
    }
    let mut chain: Vec<LogPoint> = Vec::new();
    for p in &tops {
        pop_while(&mut chain, p, tau, |t| t != Turn::Clockwise)?;
        chain.push(p.clone());
    }
    Ok(chain)
}

fn pop_while(stack: &mut Vec<LogPoint>, p: &LogPoint, tau: &Tau, pop: impl Fn(Turn) -> bool) -> Result<()> {
    while stack.len() >= 2 {
        let n = stack.len();
        if pop(orientation(&stack[n - 2], &stack[n - 1], p, tau)?) {
            stack.pop();
        } else {
            break;
        }
    }
    Ok(())
}

/// True iff every point is a vertex of the hull of the set. Sets with at most
/// two points are convexly independent by convention.
pub fn is_convexly_independent(c: &PointSet, tau: &Tau) -> Result<bool> {
    if c.len() <= 2 {
        return Ok(true);
    }
    Ok(convex_hull_vertices(c, tau)?.len() == c.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomials::Coefficient;
    use proptest::prelude::*;

    fn pt(x: i64, r: u64) -> LogPoint {
        LogPoint::lifted(x, Coefficient::from(r)).unwrap()
    }

    fn set(v: &[(i64, u64)]) -> PointSet {
        v.iter().map(|&(x, r)| pt(x, r)).collect()
    }

    fn tau4() -> Tau {
        Tau::from_integer(4).unwrap()
    }

    #[test]
    fn minkowski_examples() {
        let a = set(&[(0, 1), (1, 2)]);
        let b = set(&[(0, 1), (2, 4)]);
        assert_eq!(minkowski_sum(&a, &b), set(&[(0, 1), (1, 2), (2, 4), (3, 8)]));
        assert_eq!(minkowski_sum(&a, &set(&[(0, 1)])), a);
        assert_eq!(minkowski_sum(&set(&[(1, 2)]), &set(&[(1, 2)])), set(&[(2, 4)]));
    }

    #[test]
    fn hull_examples() {
        let tau = tau4();
        let collinear = set(&[(0, 1), (1, 2), (2, 4)]);
        assert_eq!(convex_hull_vertices(&collinear, &tau).unwrap(), vec![pt(0, 1), pt(2, 4)]);
        let square = set(&[(0, 1), (0, 2), (1, 1), (1, 2)]);
        let hull = convex_hull_vertices(&square, &tau).unwrap();
        assert_eq!(hull, vec![pt(0, 1), pt(1, 1), pt(1, 2), pt(0, 2)]);
    }

    #[test]
    fn envelope_examples() {
        let tau = tau4();
        let peak = set(&[(0, 1), (1, 4), (2, 1)]);
        assert_eq!(upper_envelope(&peak, &tau).unwrap(), vec![pt(0, 1), pt(1, 4), pt(2, 1)]);
        let dip = set(&[(0, 1), (1, 1), (2, 4)]);
        assert_eq!(upper_envelope(&dip, &tau).unwrap(), vec![pt(0, 1), pt(2, 4)]);
        assert_eq!(upper_envelope(&set(&[(3, 5)]), &tau).unwrap(), vec![pt(3, 5)]);
        // a lower point in the same column is hidden
        let column = set(&[(0, 1), (0, 8), (1, 1)]);
        assert_eq!(upper_envelope(&column, &tau).unwrap(), vec![pt(0, 8), pt(1, 1)]);
    }

    #[test]
    fn independence_examples() {
        let tau = tau4();
        assert!(!is_convexly_independent(&set(&[(0, 1), (1, 2), (2, 4)]), &tau).unwrap());
        assert!(is_convexly_independent(&set(&[(0, 1), (1, 3), (2, 4)]), &tau).unwrap());
        assert!(is_convexly_independent(&set(&[(0, 1), (5, 3)]), &tau).unwrap());
        // Kurtz coefficients 1, 3, 2 lifted at i = 1, 2 and a 3-point strictly concave run.
        assert!(is_convexly_independent(&set(&[(1, 3), (2, 2), (3, 1)]), &tau).unwrap());
    }

    fn arb_set() -> impl Strategy<Value = PointSet> {
        proptest::collection::vec((0i64..5, 1u64..9, -2i64..3), 1..7).prop_map(|v| {
            v.into_iter()
                .map(|(x, r, h)| LogPoint::new(x, Coefficient::from(r), h).unwrap())
                .collect()
        })
    }

    proptest! {
        #[test]
        fn orientation_is_antisymmetric(a in arb_set(), b in arb_set(), c in arb_set()) {
            let tau = tau4();
            let (p, q, r) = (&a.points()[0], &b.points()[0], &c.points()[0]);
            let s1 = orientation(p, q, r, &tau).unwrap().signum();
            prop_assert_eq!(s1, -orientation(p, r, q, &tau).unwrap().signum());
            prop_assert_eq!(s1, -orientation(q, p, r, &tau).unwrap().signum());
            prop_assert_eq!(s1, orientation(q, r, p, &tau).unwrap().signum());
        }

        #[test]
        fn minkowski_commutes_and_associates(a in arb_set(), b in arb_set(), c in arb_set()) {
            prop_assert_eq!(minkowski_sum(&a, &b), minkowski_sum(&b, &a));
            prop_assert_eq!(
                minkowski_sum(&minkowski_sum(&a, &b), &c),
                minkowski_sum(&a, &minkowski_sum(&b, &c))
            );
            prop_assert!(minkowski_sum(&a, &b).len() <= a.len() * b.len());
        }

        #[test]
        fn hull_vertices_are_members_and_independent(a in arb_set()) {
            let tau = tau4();
            let hull: PointSet = convex_hull_vertices(&a, &tau).unwrap().into_iter().collect();
            prop_assert!(hull.is_subset(&a));
            prop_assert!(is_convexly_independent(&hull, &tau).unwrap());
        }

        #[test]
        fn minkowski_hull_vertex_bound(a in arb_set(), b in arb_set()) {
            let tau = tau4();
            let sum = minkowski_sum(&a, &b);
            prop_assert!(convex_hull_vertices(&sum, &tau).unwrap().len() <= a.len() + b.len());
        }
    }
}
