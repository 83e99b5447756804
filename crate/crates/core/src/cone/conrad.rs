use std::collections::HashMap;

use itertools::Itertools;
use rayon::prelude::*;

use super::closure::{seeded_closure, BallArith, Closure, IDENTITY};
use super::{evaluate, Factor, Sign};
use crate::error::{Error, Result};
use crate::groups::{Ball, GroupOracle};

/// Sign vector number `v` of length `k`: `x₁` is the most significant bit and
/// a clear bit means `−1`, so vector 0 is all minus.
pub fn sign_vector(k: usize, v: usize) -> Vec<Sign> {
    (0..k).map(|j| if (v >> (k - 1 - j)) & 1 == 1 { Sign::Plus } else { Sign::Minus }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VectorResult {
    /// The identity is a product of the listed factors.
    Found(Vec<Factor>),
    /// Not derived inside the ball of this radius.
    Absent { radius: usize, partial: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorOutcome {
    pub signs: Vec<Sign>,
    pub result: VectorResult,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConradReport {
    pub radius: usize,
    pub outcomes: Vec<VectorOutcome>,
}

impl ConradReport {
    /// Some sign vector avoids the identity at this radius.
    pub fn survives(&self) -> bool {
        self.outcomes.iter().any(|o| matches!(o.result, VectorResult::Absent { .. }))
    }
}

fn slot_factor(slot: usize, seeds: usize, signs: &[Sign]) -> Factor {
    if slot < seeds {
        Factor::Seed(slot)
    } else {
        Factor::Witness(slot - seeds, signs[slot - seeds])
    }
}

/// Closure of the seed plus `x_j^{ε_j}`, started from the seed closure.
fn signed_closure<G: GroupOracle>(arith: &BallArith<'_, G>, base: &Closure, xs: &[usize], signs: &[Sign]) -> Closure {
    let mut c = base.clone();
    for (&x, s) in xs.iter().zip(signs) {
        c.add_generator(arith, if *s == Sign::Plus { x } else { arith.inv(x) });
        if c.has_identity() {
            break;
        }
    }
    c
}

fn identity_word(c: &Closure, seeds: usize, signs: &[Sign]) -> Option<Vec<Factor>> {
    c.derivation(IDENTITY).map(|d| d.into_iter().map(|s| slot_factor(s, seeds, signs)).collect())
}

fn locate_witnesses<G: GroupOracle>(arith: &BallArith<'_, G>, xs: &[G::Elem]) -> Result<Vec<usize>> {
    xs.iter()
        .map(|x| {
            let i = arith.locate(x)?;
            if i == IDENTITY {
                return Err(Error::InvalidArgument("the identity cannot be a witness element".into()));
            }
            Ok(i)
        })
        .collect()
}

/// Runs every sign vector of `xs` against the seed closure.
pub fn conrad_test<G: GroupOracle>(
    group: &G,
    seed: &[G::Elem],
    xs: &[G::Elem],
    ball: &Ball<G::Elem>,
    budget: usize,
) -> Result<ConradReport> {
    let arith = BallArith::new(group, ball);
    let base = seeded_closure(&arith, seed, budget)?;
    let idx = locate_witnesses(&arith, xs)?;
    let k = idx.len();
    let outcomes = (0..1usize << k)
        .into_par_iter()
        .map(|v| {
            let signs = sign_vector(k, v);
            let c = signed_closure(&arith, &base, &idx, &signs);
            let result = match identity_word(&c, seed.len(), &signs) {
                Some(word) => VectorResult::Found(word),
                None => VectorResult::Absent { radius: ball.radius(), partial: c.is_partial() },
            };
            VectorOutcome { signs, result }
        })
        .collect();
    Ok(ConradReport { radius: ball.radius(), outcomes })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedVector {
    pub signs: Vec<Sign>,
    pub word: Vec<Factor>,
}

/// A finite set `X` such that every sign vector traps the identity; each
/// vector comes with a product equal to `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate<E> {
    pub seed: Vec<E>,
    pub witnesses: Vec<E>,
    /// Radius of the ball the search ran in; the certificate itself does not depend on it.
    pub radius: usize,
    pub vectors: Vec<CertifiedVector>,
}

impl<E: Clone> Certificate<E> {
    /// Re-evaluates every derivation with exact group arithmetic.
    pub fn verify<G: GroupOracle<Elem = E>>(&self, group: &G) -> bool {
        let k = self.witnesses.len();
        if self.vectors.len() != 1 << k || self.witnesses.iter().any(|x| group.is_identity(x)) {
            return false;
        }
        self.vectors.iter().enumerate().all(|(v, cv)| {
            let signs_ok = cv.signs == sign_vector(k, v);
            let factors_ok = cv.word.iter().all(|f| match *f {
                Factor::Seed(i) => i < self.seed.len(),
                Factor::Witness(j, s) => j < k && cv.signs[j] == s,
            });
            signs_ok
                && factors_ok
                && !cv.word.is_empty()
                && group.is_identity(&evaluate(group, &self.seed, &self.witnesses, &cv.word))
        })
    }
}

#[derive(Clone, Debug)]
pub struct SearchReport<E> {
    pub certificate: Option<Certificate<E>>,
    /// Non-forced ball elements up to inversion.
    pub candidates: usize,
    pub subsets_examined: usize,
    pub closures_computed: usize,
    pub partial: bool,
}

/// Per subset, what is known about each sign vector: `Some(word)` when it traps `e`.
type Trapped = HashMap<Vec<u32>, Vec<Option<Vec<Factor>>>>;

struct SubsetResult {
    trapped: Vec<Option<Vec<Factor>>>,
    survived: bool,
    closures: usize,
    partial: bool,
}

/// Searches subsets `X` of the ball, smallest first and in canonical order,
/// for one where every sign vector derives the identity.
///
/// Only one element of each pair `{g, g⁻¹}` is tried, and elements already
/// decided by the seed closure are skipped: such an `x` never helps trap `e`.
/// A sign vector is known trapped without a closure run when its restriction
/// to a smaller subset was trapped, and a subset stops at its first surviving
/// vector.
pub fn find_nonextend_witness<G: GroupOracle>(
    group: &G,
    seed: &[G::Elem],
    ball: &Ball<G::Elem>,
    max_size: usize,
    budget: usize,
) -> Result<SearchReport<G::Elem>> {
    if max_size == 0 {
        return Err(Error::InvalidArgument("witness size bound must be at least 1".into()));
    }
    let arith = BallArith::new(group, ball);
    let base = seeded_closure(&arith, seed, budget)?;
    let mut report = SearchReport {
        certificate: None,
        candidates: 0,
        subsets_examined: 0,
        closures_computed: 1,
        partial: base.is_partial(),
    };
    if let Some(word) = identity_word(&base, seed.len(), &[]) {
        report.certificate = Some(Certificate {
            seed: seed.to_vec(),
            witnesses: Vec::new(),
            radius: ball.radius(),
            vectors: vec![CertifiedVector { signs: Vec::new(), word }],
        });
        return Ok(report);
    }
    let candidates: Vec<usize> =
        (1..ball.len()).filter(|&i| i <= arith.inv(i) && !base.contains(i) && !base.contains(arith.inv(i))).collect();
    report.candidates = candidates.len();

    let mut previous: Trapped = HashMap::new();
    for size in 1..=max_size.min(candidates.len()) {
        let keep = size < max_size;
        let mut current: Trapped = HashMap::new();
        let mut combos = (0..candidates.len() as u32).combinations(size);
        loop {
            let chunk: Vec<Vec<u32>> = combos.by_ref().take(4096).collect();
            if chunk.is_empty() {
                break;
            }
            let results: Vec<SubsetResult> = chunk
                .par_iter()
                .map(|combo| examine_subset(&arith, &base, seed.len(), &candidates, combo, &previous))
                .collect();
            for (combo, res) in chunk.into_iter().zip(results) {
                report.subsets_examined += 1;
                report.closures_computed += res.closures;
                report.partial |= res.partial;
                if !res.survived {
                    let witnesses = combo.iter().map(|&c| ball.get(candidates[c as usize]).clone()).collect();
                    let vectors = res
                        .trapped
                        .into_iter()
                        .enumerate()
                        .map(|(v, w)| CertifiedVector { signs: sign_vector(size, v), word: w.expect("all trapped") })
                        .collect();
                    report.certificate =
                        Some(Certificate { seed: seed.to_vec(), witnesses, radius: ball.radius(), vectors });
                    return Ok(report);
                }
                if keep && res.trapped.iter().any(Option::is_some) {
                    current.insert(combo, res.trapped);
                }
            }
        }
        previous = current;
    }
    Ok(report)
}

fn examine_subset<G: GroupOracle>(
    arith: &BallArith<'_, G>,
    base: &Closure,
    seeds: usize,
    candidates: &[usize],
    combo: &[u32],
    previous: &Trapped,
) -> SubsetResult {
    let k = combo.len();
    let xs: Vec<usize> = combo.iter().map(|&c| candidates[c as usize]).collect();
    let mut res = SubsetResult { trapped: vec![None; 1 << k], survived: false, closures: 0, partial: false };
    for v in 0..1usize << k {
        let signs = sign_vector(k, v);
        if let Some(word) = inherited(previous, combo, &signs) {
            res.trapped[v] = Some(word);
            continue;
        }
        let c = signed_closure(arith, base, &xs, &signs);
        res.closures += 1;
        res.partial |= c.is_partial();
        match identity_word(&c, seeds, &signs) {
            Some(word) => res.trapped[v] = Some(word),
            None => {
                res.survived = true;
                break;
            }
        }
    }
    res
}

/// A trapped restriction of `signs` to `combo` minus one element, with its
/// witness indices shifted back into `combo`.
fn inherited(previous: &Trapped, combo: &[u32], signs: &[Sign]) -> Option<Vec<Factor>> {
    if combo.len() < 2 {
        return None;
    }
    for drop in 0..combo.len() {
        let sub: Vec<u32> = combo.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &c)| c).collect();
        let Some(known) = previous.get(&sub) else { continue };
        let sub_signs: Vec<Sign> = signs.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &s)| s).collect();
        let v = sub_signs.iter().fold(0, |acc, s| acc << 1 | usize::from(*s == Sign::Plus));
        if let Some(word) = &known[v] {
            return Some(
                word.iter()
                    .map(|f| match *f {
                        Factor::Witness(j, s) if j >= drop => Factor::Witness(j + 1, s),
                        other => other,
                    })
                    .collect(),
            );
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::DEFAULT_CLOSURE_BUDGET;
    use crate::groups::{Cyclic, FreeAbelian, Klein};

    #[test]
    fn sign_vector_order() {
        assert_eq!(sign_vector(2, 0), vec![Sign::Minus, Sign::Minus]);
        assert_eq!(sign_vector(2, 1), vec![Sign::Minus, Sign::Plus]);
        assert_eq!(sign_vector(2, 2), vec![Sign::Plus, Sign::Minus]);
    }

    #[test]
    fn klein_single_b() {
        let ball = Ball::new(&Klein, 4).unwrap();
        let seed = [(0, 2), (1, 0), (1, -2)];
        let r = conrad_test(&Klein, &seed, &[(0, 1)], &ball, DEFAULT_CLOSURE_BUDGET).unwrap();
        match &r.outcomes[0].result {
            VectorResult::Found(word) => {
                assert_eq!(evaluate(&Klein, &seed, &[(0, 1)], word), (0, 0));
                assert!(word.contains(&Factor::Witness(0, Sign::Minus)));
            }
            other => panic!("minus sign should trap: {other:?}"),
        }
        assert_eq!(r.outcomes[1].result, VectorResult::Absent { radius: 4, partial: false });
        assert!(r.survives());
    }

    #[test]
    fn torsion_traps_both_signs() {
        for n in [2, 3] {
            let g = Cyclic::new(n).unwrap();
            let ball = Ball::new(&g, n as usize).unwrap();
            let r = conrad_test(&g, &[], &[1], &ball, DEFAULT_CLOSURE_BUDGET).unwrap();
            assert!(!r.survives());
            let s = find_nonextend_witness(&g, &[], &ball, 2, DEFAULT_CLOSURE_BUDGET).unwrap();
            let cert = s.certificate.expect("torsion certificate");
            assert_eq!(cert.witnesses.len(), 1);
            assert!(cert.verify(&g));
            for cv in &cert.vectors {
                assert_eq!(cv.word.len(), n as usize);
            }
        }
    }

    #[test]
    fn integers_survive() {
        let z = FreeAbelian::new(1).unwrap();
        for r in [1, 3, 6] {
            let ball = Ball::new(&z, r).unwrap();
            let rep = conrad_test(&z, &[], &[vec![1]], &ball, DEFAULT_CLOSURE_BUDGET).unwrap();
            assert!(rep.outcomes.iter().all(|o| matches!(o.result, VectorResult::Absent { .. })));
            let s = find_nonextend_witness(&z, &[], &ball, 2, DEFAULT_CLOSURE_BUDGET).unwrap();
            assert!(s.certificate.is_none());
        }
    }

    #[test]
    fn tampered_certificate_fails() {
        let g = Cyclic::new(3).unwrap();
        let ball = Ball::new(&g, 3).unwrap();
        let mut cert = find_nonextend_witness(&g, &[], &ball, 1, DEFAULT_CLOSURE_BUDGET).unwrap().certificate.unwrap();
        assert!(cert.verify(&g));
        cert.vectors[0].word.pop();
        assert!(!cert.verify(&g));
    }

    #[test]
    fn seed_containing_identity_gives_empty_certificate() {
        let ball = Ball::new(&Klein, 3).unwrap();
        let s = find_nonextend_witness(&Klein, &[(0, 1), (0, -1)], &ball, 1, DEFAULT_CLOSURE_BUDGET).unwrap();
        let cert = s.certificate.unwrap();
        assert!(cert.witnesses.is_empty());
        assert!(cert.verify(&Klein));
    }

    #[test]
    fn empty_seed_in_klein_has_no_certificate() {
        let ball = Ball::new(&Klein, 3).unwrap();
        let s = find_nonextend_witness(&Klein, &[], &ball, 2, DEFAULT_CLOSURE_BUDGET).unwrap();
        assert!(s.certificate.is_none());
        assert!(s.subsets_examined > 0);
    }

    #[test]
    fn inherited_words_are_reindexed() {
        let mut prev: Trapped = HashMap::new();
        // subset {0, 2} traps under (+, -) with word x0 · x1⁻¹
        let word = vec![Factor::Witness(0, Sign::Plus), Factor::Witness(1, Sign::Minus), Factor::Seed(0)];
        prev.insert(vec![0, 2], vec![None, None, Some(word), None]);
        let got = inherited(&prev, &[0, 1, 2], &[Sign::Plus, Sign::Plus, Sign::Minus]).unwrap();
        assert_eq!(got, vec![Factor::Witness(0, Sign::Plus), Factor::Witness(2, Sign::Minus), Factor::Seed(0)]);
        assert!(inherited(&prev, &[0, 1, 2], &[Sign::Plus, Sign::Plus, Sign::Plus]).is_none());
    }
}
