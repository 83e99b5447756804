use super::closure::{seeded_closure, BallArith, Closure, IDENTITY};
use super::predicate::verify_cone_total;
use crate::error::{Error, Result};
use crate::groups::{Ball, GroupOracle};

pub const DEFAULT_NODE_BUDGET: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GreedyOutcome<E> {
    /// A total cone on the ball containing the seed and avoiding `e`.
    Extended {
        /// The positive elements of the ball, in ball order.
        positives: Vec<E>,
        /// Elements chosen positive by the search (the rest were forced).
        decisions: Vec<E>,
        nodes: usize,
    },
    /// Every sign assignment traps `e`. `trapped` holds the decisions on the
    /// first dead-end path plus the element neither of whose signs survived.
    Failed { trapped: Vec<E>, nodes: usize },
    /// The node budget ran out first.
    Budget { nodes: usize },
}

impl<E> GreedyOutcome<E> {
    pub fn is_extended(&self) -> bool {
        matches!(self, GreedyOutcome::Extended { .. })
    }
}

struct Frame {
    closure: Closure,
    /// Next undecided pair position, `None` when everything is decided.
    pos: Option<usize>,
    tried: u8,
    decision: Option<usize>,
}

/// Backtracking sign assignment over the pairs `{g, g⁻¹}` of the ball, in
/// ball order, trying `g` positive before `g⁻¹`. Elements whose sign is already
/// decided by the closure are skipped. A success is re-checked with
/// [`verify_cone_total`].
pub fn greedy_extend<G: GroupOracle>(
    group: &G,
    seed: &[G::Elem],
    ball: &Ball<G::Elem>,
    node_budget: usize,
    closure_budget: usize,
) -> Result<GreedyOutcome<G::Elem>> {
    let arith = BallArith::new(group, ball);
    let base = seeded_closure(&arith, seed, closure_budget)?;
    if base.has_identity() {
        return Ok(GreedyOutcome::Failed { trapped: Vec::new(), nodes: 0 });
    }
    let reps: Vec<usize> = (1..ball.len()).filter(|&i| i <= arith.inv(i)).collect();
    let next_undecided = |c: &Closure, from: usize| {
        (from..reps.len()).find(|&p| !c.contains(reps[p]) && !c.contains(arith.inv(reps[p])))
    };
    let mut nodes = 0usize;
    let mut dead_end: Option<Vec<usize>> = None;
    let mut stack = vec![Frame { pos: next_undecided(&base, 0), closure: base, tried: 0, decision: None }];
    loop {
        let Some(top) = stack.last_mut() else {
            let trapped = dead_end.unwrap_or_default().into_iter().map(|i| ball.get(i).clone()).collect();
            return Ok(GreedyOutcome::Failed { trapped, nodes });
        };
        let Some(pos) = top.pos else {
            return finish(&arith, &stack, nodes);
        };
        let rep = reps[pos];
        let self_inverse = arith.inv(rep) == rep;
        if top.tried == 2 || (top.tried == 1 && self_inverse) {
            stack.pop();
            continue;
        }
        let choice = if top.tried == 0 { rep } else { arith.inv(rep) };
        top.tried += 1;
        nodes += 1;
        if nodes > node_budget {
            return Ok(GreedyOutcome::Budget { nodes });
        }
        let mut child = top.closure.clone();
        child.add_generator(&arith, choice);
        if child.has_identity() {
            let exhausted = top.tried == 2 || self_inverse;
            if exhausted && dead_end.is_none() {
                let mut path: Vec<usize> = stack.iter().filter_map(|f| f.decision).collect();
                path.push(rep);
                dead_end = Some(path);
            }
            continue;
        }
        if child.is_partial() {
            return Err(Error::BudgetExceeded("closure budget exhausted during extension search".into()));
        }
        let pos = next_undecided(&child, pos + 1);
        stack.push(Frame { closure: child, pos, tried: 0, decision: Some(choice) });
    }
}

fn finish<G: GroupOracle>(arith: &BallArith<'_, G>, stack: &[Frame], nodes: usize) -> Result<GreedyOutcome<G::Elem>> {
    let ball = arith.ball();
    let closure = &stack.last().expect("nonempty").closure;
    let mut positives: Vec<usize> = closure.members().to_vec();
    positives.sort_unstable();
    let report = verify_cone_total(arith.group(), ball, |g| ball.position(g).is_some_and(|i| closure.contains(i)));
    if !report.passes() || closure.contains(IDENTITY) {
        return Err(Error::Internal(format!("extension search produced a set that is not a total cone: {report:?}")));
    }
    Ok(GreedyOutcome::Extended {
        positives: positives.into_iter().map(|i| ball.get(i).clone()).collect(),
        decisions: stack.iter().filter_map(|f| f.decision).map(|i| ball.get(i).clone()).collect(),
        nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::{conrad_test, DEFAULT_CLOSURE_BUDGET};
    use crate::groups::{Cyclic, FreeAbelian, Klein};

    fn run<G: GroupOracle>(g: &G, seed: &[G::Elem], r: usize) -> GreedyOutcome<G::Elem> {
        let ball = Ball::new(g, r).unwrap();
        greedy_extend(g, seed, &ball, DEFAULT_NODE_BUDGET, DEFAULT_CLOSURE_BUDGET).unwrap()
    }

    #[test]
    fn integers_extend_by_sign() {
        let z = FreeAbelian::new(1).unwrap();
        match run(&z, &[], 5) {
            GreedyOutcome::Extended { positives, decisions, .. } => {
                assert_eq!(decisions, vec![vec![1]]);
                assert_eq!(positives.len(), 5);
                assert!(positives.iter().all(|p| p[0] > 0));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn torsion_fails_with_trace() {
        let c2 = Cyclic::new(2).unwrap();
        assert_eq!(run(&c2, &[], 1), GreedyOutcome::Failed { trapped: vec![1], nodes: 1 });
        let c3 = Cyclic::new(3).unwrap();
        assert!(matches!(run(&c3, &[], 2), GreedyOutcome::Failed { .. }));
    }

    #[test]
    fn klein_seed_extends() {
        let out = run(&Klein, &[(0, 2), (1, 0), (1, -2)], 4);
        let GreedyOutcome::Extended { positives, .. } = out else { panic!("{out:?}") };
        assert!(positives.contains(&(0, 2)) && positives.contains(&(1, -2)));
    }

    #[test]
    fn surviving_singletons_mean_no_depth_one_failure() {
        let ball = Ball::new(&Klein, 3).unwrap();
        let seed = [(0, 2), (1, 0), (1, -2)];
        let all_survive = ball
            .iter()
            .skip(1)
            .all(|x| conrad_test(&Klein, &seed, &[*x], &ball, DEFAULT_CLOSURE_BUDGET).unwrap().survives());
        assert!(all_survive);
        match greedy_extend(&Klein, &seed, &ball, DEFAULT_NODE_BUDGET, DEFAULT_CLOSURE_BUDGET).unwrap() {
            GreedyOutcome::Failed { trapped, .. } => assert!(trapped.len() > 1),
            GreedyOutcome::Extended { .. } => {}
            GreedyOutcome::Budget { .. } => panic!("budget"),
        }
    }

    #[test]
    fn budget_is_reported() {
        let z2 = FreeAbelian::new(2).unwrap();
        let ball = Ball::new(&z2, 3).unwrap();
        assert!(matches!(
            greedy_extend(&z2, &[], &ball, 1, DEFAULT_CLOSURE_BUDGET).unwrap(),
            GreedyOutcome::Budget { .. }
        ));
    }
}
