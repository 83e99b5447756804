use std::collections::BTreeSet;

use invorder::corpus::all_quandles;
use invorder::magma::{FiniteGroup, Magma};
use invorder::order::{
    brute_force_orders, count, count_par, enumerate, enumerate_par, orders, verify_order, ConstraintSet, OrderRelation,
    PairState, Side,
};
use invorder::quandle::{kei_quandle, trivial_quandle};
use proptest::prelude::*;

const SIDES: [Side; 3] = [Side::Left, Side::Right, Side::Bi];

fn magma_strategy(max: usize) -> impl Strategy<Value = Magma> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(0..n, n * n).prop_map(move |t| Magma::new(n, t).expect("entries in range"))
    })
}

fn enumerated(m: &Magma, side: Side) -> BTreeSet<OrderRelation> {
    enumerate(m, side, &ConstraintSet::default(), None).unwrap().orders.into_iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn search_matches_permutation_filter(m in magma_strategy(4)) {
        for side in SIDES {
            prop_assert_eq!(enumerated(&m, side), brute_force_orders(&m, side).unwrap());
        }
    }

    #[test]
    fn bi_orders_are_left_and_right(m in magma_strategy(4)) {
        let left = enumerated(&m, Side::Left);
        let right = enumerated(&m, Side::Right);
        let both: BTreeSet<_> = left.intersection(&right).cloned().collect();
        prop_assert_eq!(enumerated(&m, Side::Bi), both);
    }

    #[test]
    fn every_emitted_order_verifies(m in magma_strategy(4), side in prop::sample::select(SIDES.to_vec())) {
        for r in enumerate(&m, side, &ConstraintSet::default(), None).unwrap().orders {
            prop_assert_eq!(verify_order(&m, &r, side).unwrap(), None);
        }
    }

    #[test]
    fn pruned_branches_hold_no_orders(m in magma_strategy(4), side in prop::sample::select(SIDES.to_vec())) {
        let all = brute_force_orders(&m, side).unwrap();
        let mut stream = orders(&m, side, &ConstraintSet::default()).unwrap().record_prunes();
        let found: BTreeSet<_> = stream.by_ref().collect();
        prop_assert_eq!(&found, &all);
        for p in stream.take_prunes() {
            let (a, b) = p.decision;
            let lost = all.iter().find(|r| {
                r.holds(a, b)
                    && (0..m.size()).all(|x| (0..m.size()).all(|y| x == y || p.parent.state(x, y) != PairState::Holds || r.holds(x, y)))
            });
            prop_assert!(lost.is_none(), "prune {:?} lost {:?}", p.reason, lost);
        }
    }

    #[test]
    fn constraints_select_matching_orders(m in magma_strategy(4), a in 0usize..4, b in 0usize..4) {
        prop_assume!(a != b && a < m.size() && b < m.size());
        let cs = ConstraintSet::single(a, b).unwrap();
        let want: BTreeSet<_> = enumerated(&m, Side::Right).into_iter().filter(|r| r.holds(a, b)).collect();
        let got: BTreeSet<_> = enumerate(&m, Side::Right, &cs, None).unwrap().orders.into_iter().collect();
        prop_assert_eq!(got, want);
    }
}

#[test]
fn parallel_stream_is_the_sequential_stream() {
    for q in all_quandles(4) {
        for side in SIDES {
            let seq = enumerate(&q, side, &ConstraintSet::default(), None).unwrap().orders;
            assert_eq!(enumerate_par(&q, side, &ConstraintSet::default()).unwrap(), seq);
            assert_eq!(count_par(&q, side, &ConstraintSet::default()).unwrap(), seq.len() as u64);
        }
    }
}

#[test]
fn trivial_quandles_are_right_but_not_left_orderable() {
    let mut fact = 1u64;
    for n in 1..=6 {
        fact *= n as u64;
        let t = trivial_quandle(n).unwrap().into_magma();
        assert_eq!(count(&t, Side::Right).unwrap(), fact, "n = {n}");
        assert_eq!(count(&t, Side::Left).unwrap(), if n == 1 { 1 } else { 0 }, "n = {n}");
    }
}

#[test]
fn dihedral_three_has_no_right_orders() {
    let kei = kei_quandle(&FiniteGroup::cyclic(3)).unwrap().into_magma();
    assert_eq!(brute_force_orders(&kei, Side::Right).unwrap().len(), 0);
    assert_eq!(count(&kei, Side::Right).unwrap(), 0);
}

#[test]
fn limit_reports_truncation() {
    let t = trivial_quandle(4).unwrap().into_magma();
    let e = enumerate(&t, Side::Right, &ConstraintSet::default(), Some(5)).unwrap();
    assert_eq!((e.orders.len(), e.complete), (5, false));
    let e = enumerate(&t, Side::Right, &ConstraintSet::default(), Some(24)).unwrap();
    assert_eq!((e.orders.len(), e.complete), (24, true));
}
