use std::collections::VecDeque;
use std::fmt;

use super::{OrderRelation, PairState, Side};
use crate::magma::Magma;

/// Why a partial order state cannot be completed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Contradiction {
    /// `(a, b)` was forced while `(b, a)` already held.
    Conflict { a: usize, b: usize },
    /// `(a, b)` holds but its translate by `c` is a diagonal pair.
    Collapse { side: Side, c: usize, a: usize, b: usize },
}

impl fmt::Display for Contradiction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Contradiction::Conflict { a, b } => write!(f, "both ({a},{b}) and ({b},{a}) forced"),
            Contradiction::Collapse { side, c, a, b } => {
                write!(f, "{side} translate of ({a},{b}) by {c} lands on the diagonal")
            }
        }
    }
}

/// Least fixpoint of the order rules starting from `state`.
///
/// Rules: `(a,b)` forces `(b,a)` out; transitivity; every translate of a
/// holding pair on the requested side holds. Pairs marked out force their
/// reverse in, since the target is a total order.
pub fn propagate(m: &Magma, state: &OrderRelation, side: Side) -> Result<OrderRelation, Contradiction> {
    let n = state.size();
    let mut rel = OrderRelation::empty(n);
    let mut queue = VecDeque::new();
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            match state.state(a, b) {
                PairState::Holds => assert_pair(&mut rel, a, b, &mut queue)?,
                PairState::Fails => assert_pair(&mut rel, b, a, &mut queue)?,
                PairState::Undecided => {}
            }
        }
    }
    run(m, &mut rel, side, &mut queue)?;
    Ok(rel)
}

/// Adds `(a, b)` to an already propagated state and re-closes it.
pub(crate) fn extend(m: &Magma, rel: &mut OrderRelation, side: Side, a: usize, b: usize) -> Result<(), Contradiction> {
    let mut queue = VecDeque::new();
    assert_pair(rel, a, b, &mut queue)?;
    run(m, rel, side, &mut queue)
}

#[inline]
fn assert_pair(
    rel: &mut OrderRelation,
    a: usize,
    b: usize,
    queue: &mut VecDeque<(usize, usize)>,
) -> Result<(), Contradiction> {
    match rel.state(a, b) {
        PairState::Holds => Ok(()),
        PairState::Fails => Err(Contradiction::Conflict { a, b }),
        PairState::Undecided => {
            rel.set(a, b, PairState::Holds);
            rel.set(b, a, PairState::Fails);
            queue.push_back((a, b));
            Ok(())
        }
    }
}

fn run(
    m: &Magma,
    rel: &mut OrderRelation,
    side: Side,
    queue: &mut VecDeque<(usize, usize)>,
) -> Result<(), Contradiction> {
    let n = rel.size();
    while let Some((a, b)) = queue.pop_front() {
        for c in 0..n {
            if c != b && c != a && rel.state(b, c) == PairState::Holds {
                assert_pair(rel, a, c, queue)?;
            }
            if c != a && c != b && rel.state(c, a) == PairState::Holds {
                assert_pair(rel, c, b, queue)?;
            }
        }
        if side.includes_left() {
            for c in 0..n {
                let (x, y) = (m.op(c, a), m.op(c, b));
                if x == y {
                    return Err(Contradiction::Collapse { side: Side::Left, c, a, b });
                }
                assert_pair(rel, x, y, queue)?;
            }
        }
        if side.includes_right() {
            for c in 0..n {
                let (x, y) = (m.op(a, c), m.op(b, c));
                if x == y {
                    return Err(Contradiction::Collapse { side: Side::Right, c, a, b });
                }
                assert_pair(rel, x, y, queue)?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magma::FiniteGroup;
    use crate::quandle::trivial_quandle;

    fn with_pairs(n: usize, pairs: &[(usize, usize)]) -> OrderRelation {
        let mut r = OrderRelation::empty(n);
        for &(a, b) in pairs {
            r.set(a, b, PairState::Holds);
        }
        r
    }

    #[test]
    fn torsion_kills_left_orders() {
        let c2 = FiniteGroup::cyclic(2);
        let err = propagate(c2.magma(), &with_pairs(2, &[(0, 1)]), Side::Left).unwrap_err();
        assert_eq!(err, Contradiction::Conflict { a: 1, b: 0 });
    }

    #[test]
    fn transitivity_only_on_trivial_quandle() {
        let t3 = trivial_quandle(3).unwrap().into_magma();
        let out = propagate(&t3, &with_pairs(3, &[(0, 1), (1, 2)]), Side::Right).unwrap();
        assert_eq!(out.holding_pairs(), vec![(0, 1), (0, 2), (1, 2)]);
        assert!(out.is_completed());
    }

    #[test]
    fn empty_state_is_a_fixpoint() {
        let t3 = trivial_quandle(3).unwrap().into_magma();
        let out = propagate(&t3, &OrderRelation::empty(3), Side::Bi).unwrap();
        assert_eq!(out, OrderRelation::empty(3));
    }

    #[test]
    fn left_collapse_is_reported() {
        let t3 = trivial_quandle(3).unwrap().into_magma();
        let err = propagate(&t3, &with_pairs(3, &[(1, 2)]), Side::Left).unwrap_err();
        assert_eq!(err, Contradiction::Collapse { side: Side::Left, c: 0, a: 1, b: 2 });
    }

    #[test]
    fn inconsistent_seed_is_a_conflict() {
        let t2 = trivial_quandle(2).unwrap().into_magma();
        let err = propagate(&t2, &with_pairs(2, &[(0, 1), (1, 0)]), Side::Right).unwrap_err();
        assert_eq!(err, Contradiction::Conflict { a: 1, b: 0 });
    }
}
