use std::collections::BTreeSet;

use itertools::Itertools;
use rayon::prelude::*;

use super::propagate::{extend, propagate, Contradiction};
use super::{verify_order, ConstraintSet, OrderRelation, PairState, Side};
use crate::error::{Error, Result};
use crate::magma::Magma;
use crate::quandle::{left_cancellative, right_cancellative};

/// Largest magma the permutation filter accepts by default.
pub const BRUTE_FORCE_BOUND: usize = 7;

/// A branch cut by propagation: `parent` plus the decision `(a, b)` is contradictory.
#[derive(Clone, Debug)]
pub struct PrunedBranch {
    pub parent: OrderRelation,
    pub decision: (usize, usize),
    pub reason: Contradiction,
}

/// Depth-first stream of the invariant total orders extending a seed state.
///
/// The branching pair is always the smallest undecided `(a, b)`; the branch
/// with `(a, b)` in the order is explored before the one with `(b, a)`.
pub struct OrderStream<'m> {
    magma: &'m Magma,
    side: Side,
    stack: Vec<OrderRelation>,
    prunes: Option<Vec<PrunedBranch>>,
}

impl<'m> OrderStream<'m> {
    fn from_roots(magma: &'m Magma, side: Side, roots: Vec<OrderRelation>) -> Self {
        let mut stack = roots;
        stack.reverse();
        OrderStream { magma, side, stack, prunes: None }
    }

    /// Keep every pruned branch for later inspection.
    pub fn record_prunes(mut self) -> Self {
        self.prunes = Some(Vec::new());
        self
    }

    pub fn take_prunes(&mut self) -> Vec<PrunedBranch> {
        self.prunes.take().unwrap_or_default()
    }

    fn children(&mut self, node: OrderRelation, a: usize, b: usize) -> [Option<OrderRelation>; 2] {
        let holds = {
            let mut rel = node.clone();
            match extend(self.magma, &mut rel, self.side, a, b) {
                Ok(()) => Some(rel),
                Err(reason) => {
                    self.log(&node, (a, b), reason);
                    None
                }
            }
        };
        let fails = {
            let mut rel = node.clone();
            match extend(self.magma, &mut rel, self.side, b, a) {
                Ok(()) => Some(rel),
                Err(reason) => {
                    self.log(&node, (b, a), reason);
                    None
                }
            }
        };
        [holds, fails]
    }

    fn log(&mut self, parent: &OrderRelation, decision: (usize, usize), reason: Contradiction) {
        if let Some(log) = self.prunes.as_mut() {
            log.push(PrunedBranch { parent: parent.clone(), decision, reason });
        }
    }
}

impl Iterator for OrderStream<'_> {
    type Item = OrderRelation;

    fn next(&mut self) -> Option<OrderRelation> {
        while let Some(node) = self.stack.pop() {
            let Some((a, b)) = node.first_undecided() else {
                return Some(node);
            };
            let [holds, fails] = self.children(node, a, b);
            if let Some(f) = fails {
                self.stack.push(f);
            }
            if let Some(h) = holds {
                self.stack.push(h);
            }
        }
        None
    }
}

/// Propagated root state, or `None` when no order can exist.
fn root(m: &Magma, side: Side, constraints: &ConstraintSet) -> Result<Option<OrderRelation>> {
    let n = m.size();
    for &(a, b) in constraints.pairs() {
        m.check_element(a)?;
        m.check_element(b)?;
    }
    if side.includes_left() && left_cancellative(m).is_some() {
        return Ok(None);
    }
    if side.includes_right() && right_cancellative(m).is_some() {
        return Ok(None);
    }
    let mut seed = OrderRelation::empty(n);
    for &(a, b) in constraints.pairs() {
        seed.set(a, b, PairState::Holds);
    }
    Ok(propagate(m, &seed, side).ok())
}

/// Stream of all `side`-invariant total orders containing every constraint pair.
pub fn orders<'m>(m: &'m Magma, side: Side, constraints: &ConstraintSet) -> Result<OrderStream<'m>> {
    let roots = root(m, side, constraints)?.into_iter().collect();
    Ok(OrderStream::from_roots(m, side, roots))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub orders: Vec<OrderRelation>,
    /// `false` when the limit stopped the search before it was exhausted.
    pub complete: bool,
}

pub fn enumerate(m: &Magma, side: Side, constraints: &ConstraintSet, limit: Option<usize>) -> Result<Enumeration> {
    let mut stream = orders(m, side, constraints)?;
    let mut out = Vec::new();
    loop {
        if limit.is_some_and(|l| out.len() >= l) {
            let complete = stream.next().is_none();
            return Ok(Enumeration { orders: out, complete });
        }
        match stream.next() {
            Some(r) => out.push(r),
            None => return Ok(Enumeration { orders: out, complete: true }),
        }
    }
}

pub fn count(m: &Magma, side: Side) -> Result<u64> {
    count_constrained(m, side, &ConstraintSet::default())
}

pub fn count_constrained(m: &Magma, side: Side, constraints: &ConstraintSet) -> Result<u64> {
    orders(m, side, constraints)?.try_fold(0u64, |acc, _| acc.checked_add(1).ok_or(Error::CountOverflow))
}

/// Search-tree nodes at `depth` decisions, in stream order. Orders completed
/// above that depth are kept in place.
fn frontier(m: &Magma, side: Side, start: OrderRelation, depth: usize) -> Vec<OrderRelation> {
    let mut level = vec![start];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(level.len() * 2);
        let mut expanded = false;
        for node in level {
            match node.first_undecided() {
                None => next.push(node),
                Some((a, b)) => {
                    expanded = true;
                    let mut stream = OrderStream::from_roots(m, side, vec![]);
                    next.extend(stream.children(node, a, b).into_iter().flatten());
                }
            }
        }
        level = next;
        if !expanded {
            break;
        }
    }
    level
}

fn split_depth() -> usize {
    let threads = rayon::current_num_threads().max(1);
    (usize::BITS - (threads * 8).leading_zeros()) as usize
}

/// Same stream as [`enumerate`] without a limit, with subtrees searched on the
/// current rayon pool and merged back in stream order.
pub fn enumerate_par(m: &Magma, side: Side, constraints: &ConstraintSet) -> Result<Vec<OrderRelation>> {
    let Some(start) = root(m, side, constraints)? else {
        return Ok(Vec::new());
    };
    let parts: Vec<Vec<OrderRelation>> = frontier(m, side, start, split_depth())
        .into_par_iter()
        .map(|node| OrderStream::from_roots(m, side, vec![node]).collect())
        .collect();
    Ok(parts.concat())
}

pub fn count_par(m: &Magma, side: Side, constraints: &ConstraintSet) -> Result<u64> {
    let Some(start) = root(m, side, constraints)? else {
        return Ok(0);
    };
    frontier(m, side, start, split_depth())
        .into_par_iter()
        .map(|node| {
            OrderStream::from_roots(m, side, vec![node])
                .try_fold(0u64, |acc, _| acc.checked_add(1).ok_or(Error::CountOverflow))
        })
        .try_reduce(|| 0, |x, y| x.checked_add(y).ok_or(Error::CountOverflow))
}

pub fn brute_force_orders(m: &Magma, side: Side) -> Result<BTreeSet<OrderRelation>> {
    brute_force_orders_bounded(m, side, BRUTE_FORCE_BOUND)
}

/// All `n!` rankings filtered through [`verify_order`].
pub fn brute_force_orders_bounded(m: &Magma, side: Side, bound: usize) -> Result<BTreeSet<OrderRelation>> {
    let n = m.size();
    if n > bound {
        return Err(Error::BoundExceeded { size: n, bound });
    }
    let mut out = BTreeSet::new();
    for ranking in (0..n).permutations(n) {
        let r = OrderRelation::from_ranking(&ranking)?;
        if verify_order(m, &r, side)?.is_none() {
            out.insert(r);
        }
    }
    Ok(out)
}
