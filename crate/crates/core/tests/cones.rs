use invorder::cone::{
    conrad_test, evaluate, find_nonextend_witness, greedy_extend, lex_cone_catalog, parse_seed_word, purity_check,
    sgr_closure, verify_cone_total, Factor, GreedyOutcome, Purity, DEFAULT_CLOSURE_BUDGET, DEFAULT_NODE_BUDGET,
};
use invorder::groups::{Ball, Cyclic, FreeAbelian, GroupOracle, Klein};
use invorder::magma::FiniteGroup;
use invorder::order::{count, Side};
use proptest::prelude::*;

fn seed_factors(d: &[usize]) -> Vec<Factor> {
    d.iter().map(|&i| Factor::Seed(i)).collect()
}

#[test]
fn b_inverse_and_b_squared_derive_the_identity() {
    let seed = [(0, -1), (0, 2)];
    let ball = Ball::new(&Klein, 3).unwrap();
    let cone = sgr_closure(&Klein, &seed, &ball, DEFAULT_CLOSURE_BUDGET).unwrap();
    let Purity::ContainsIdentity { derivation } = purity_check(&Klein, &cone) else { panic!("identity expected") };
    assert_eq!(evaluate(&Klein, &seed, &[], &seed_factors(&derivation)), (0, 0));
}

#[test]
fn seeded_klein_cone_lies_in_the_upper_half() {
    let seed: Vec<(i64, i64)> = ["bb", "a", "aBB"].iter().map(|w| Klein.parse_element(w).unwrap()).collect();
    let ball = Ball::new(&Klein, 4).unwrap();
    let cone = sgr_closure(&Klein, &seed, &ball, DEFAULT_CLOSURE_BUDGET).unwrap();
    assert_eq!(purity_check(&Klein, &cone), Purity::Pure);
    for (g, d) in &cone.members {
        assert_eq!(evaluate(&Klein, &seed, &[], &seed_factors(d)), *g);
        let (p, q) = *g;
        assert!(p >= 0, "{g:?}");
        if p == 0 {
            assert!(q >= 2 && q % 2 == 0, "{g:?}");
        }
    }
}

#[test]
fn identity_is_not_a_seed() {
    assert!(parse_seed_word(&Klein, "aA").is_err());
    let ball = Ball::new(&Klein, 2).unwrap();
    assert!(sgr_closure(&Klein, &[(0, 0)], &ball, DEFAULT_CLOSURE_BUDGET).is_err());
}

#[test]
fn torsion_needs_one_witness() {
    for n in [2u64, 3] {
        let g = Cyclic::new(n).unwrap();
        let ball = Ball::new(&g, n as usize).unwrap();
        let report = find_nonextend_witness(&g, &[], &ball, 2, DEFAULT_CLOSURE_BUDGET).unwrap();
        let cert = report.certificate.expect("certificate");
        assert_eq!(cert.witnesses.len(), 1);
        assert!(cert.verify(&g));
        let table = FiniteGroup::cyclic(n as usize);
        assert_eq!(count(table.magma(), Side::Left).unwrap(), 0);
    }
}

#[test]
fn tampered_certificates_fail_verification() {
    let g = Cyclic::new(3).unwrap();
    let ball = Ball::new(&g, 3).unwrap();
    let mut cert = find_nonextend_witness(&g, &[], &ball, 1, DEFAULT_CLOSURE_BUDGET).unwrap().certificate.unwrap();
    cert.vectors[0].word.pop();
    assert!(!cert.verify(&g));
}

#[test]
fn lexicographic_klein_cones() {
    let big = Ball::new(&Klein, 6).unwrap();
    let small = Ball::new(&Klein, 4).unwrap();
    for (label, cone) in lex_cone_catalog(&Klein) {
        assert!(verify_cone_total(&Klein, &big, |g| cone.contains(&Klein, g)).passes(), "{label}");
        let p: Vec<(i64, i64)> = small.iter().filter(|g| cone.contains(&Klein, g)).copied().collect();
        for x in small.iter().skip(1) {
            let r = conrad_test(&Klein, &p, &[*x], &small, DEFAULT_CLOSURE_BUDGET).unwrap();
            assert!(r.survives(), "{label} traps {x:?}");
        }
    }
}

#[test]
fn klein_seed_extends_on_balls() {
    let seed = [(0, 2), (1, 0), (1, -2)];
    for r in 3..=6 {
        let ball = Ball::new(&Klein, r).unwrap();
        let out = greedy_extend(&Klein, &seed, &ball, DEFAULT_NODE_BUDGET, DEFAULT_CLOSURE_BUDGET).unwrap();
        let GreedyOutcome::Extended { positives, .. } = out else { panic!("radius {r}: {out:?}") };
        let report = verify_cone_total(&Klein, &ball, |g| positives.contains(g));
        assert!(report.passes() && seed.iter().all(|s| positives.contains(s)));
    }
}

fn z2_seed() -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(proptest::collection::vec(-2i64..=2, 2), 1..=3)
        .prop_filter("no identity", |s| s.iter().all(|g| g.iter().any(|&c| c != 0)))
}

fn klein_seed() -> impl Strategy<Value = Vec<(i64, i64)>> {
    proptest::collection::vec((-1i64..=1, -2i64..=2), 1..=3).prop_filter("no identity", |s| !s.contains(&(0, 0)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn certificates_and_extensions_exclude_each_other_on_z2(seed in z2_seed()) {
        let g = FreeAbelian::new(2).unwrap();
        let ball = Ball::new(&g, 4).unwrap();
        let cert = find_nonextend_witness(&g, &seed, &ball, 2, DEFAULT_CLOSURE_BUDGET).unwrap().certificate;
        let ext = greedy_extend(&g, &seed, &ball, DEFAULT_NODE_BUDGET, DEFAULT_CLOSURE_BUDGET).unwrap();
        if let Some(c) = &cert {
            prop_assert!(c.verify(&g));
        }
        prop_assert!(!(cert.is_some() && ext.is_extended()));
    }

    #[test]
    fn certificates_and_extensions_exclude_each_other_on_klein(seed in klein_seed()) {
        let ball = Ball::new(&Klein, 3).unwrap();
        let cert = find_nonextend_witness(&Klein, &seed, &ball, 2, DEFAULT_CLOSURE_BUDGET).unwrap().certificate;
        let ext = greedy_extend(&Klein, &seed, &ball, DEFAULT_NODE_BUDGET, DEFAULT_CLOSURE_BUDGET).unwrap();
        if let Some(c) = &cert {
            prop_assert!(c.verify(&Klein));
        }
        prop_assert!(!(cert.is_some() && ext.is_extended()));
    }
}
