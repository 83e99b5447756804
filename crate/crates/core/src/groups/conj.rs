use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Ball, BiOrder, Centrality, GroupOracle};
use crate::error::{Error, Result};

/// `a ∉ C(b)` yet `aⁿ ∈ C(b)`: in the conjugation quandle `b ∗ a ≠ b` while
/// `b ∗ a^{∗n} = b`, which rules out right-invariant orders there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjWitness<E> {
    pub a: E,
    pub b: E,
    pub n: u32,
    /// How far `aⁿ` is known to be central in the whole group.
    pub centrality: Centrality,
}

/// Centrality of `g`, certified where the family allows it.
pub fn centrality<G: GroupOracle>(group: &G, g: &G::Elem, ball: &Ball<G::Elem>) -> Centrality {
    if let Some(all) = group.elements() {
        return if all.iter().all(|h| group.commutes(g, h)) { Centrality::Exhaustive } else { Centrality::NotCentral };
    }
    if group.structurally_central(g) {
        return Centrality::Structural;
    }
    if ball.iter().all(|h| group.commutes(g, h)) {
        Centrality::BallEvidence
    } else {
        Centrality::NotCentral
    }
}

/// Scans `a` then `b` over the ball (canonical order) for a non-commuting pair
/// with `aⁿ b = b aⁿ`, taking the least `n` in `2..=n_max`.
pub fn conj_obstruction_oracle<G: GroupOracle>(
    group: &G,
    ball: &Ball<G::Elem>,
    n_max: u32,
) -> Option<ConjWitness<G::Elem>> {
    let elems = ball.elements();
    for a in &elems {
        let powers: Vec<G::Elem> = (2..=n_max).map(|n| group.pow(a, n as i64)).collect();
        for b in &elems {
            if group.commutes(a, b) {
                continue;
            }
            if let Some(i) = powers.iter().position(|an| group.commutes(an, b)) {
                let n = i as u32 + 2;
                return Some(ConjWitness {
                    a: a.clone(),
                    b: b.clone(),
                    n,
                    centrality: centrality(group, &powers[i], ball),
                });
            }
        }
    }
    None
}

/// Lexicographic comparison of normal-form coordinates.
pub struct LexBiOrder<'g, G> {
    group: &'g G,
}

impl<'g, G: GroupOracle> LexBiOrder<'g, G> {
    pub fn new(group: &'g G) -> Result<Self> {
        if !group.lex_biorderable() {
            return Err(Error::Unsupported(format!("no lexicographic bi-order on {}", group.name())));
        }
        Ok(LexBiOrder { group })
    }

    pub fn group(&self) -> &'g G {
        self.group
    }
}

impl<G: GroupOracle> BiOrder<G> for LexBiOrder<'_, G> {
    fn cmp(&self, g: &G::Elem, h: &G::Elem) -> Ordering {
        let cg = self.group.coordinates(g).expect("lex-orderable families have coordinates");
        let ch = self.group.coordinates(h).expect("lex-orderable families have coordinates");
        cg.cmp(&ch)
    }
}

/// Triples `(g, h, c)` where the order is not a two-sided invariant strict
/// total order: antisymmetry fails, or `c·g, c·h` or `g·c, h·c` compare
/// differently from `g, h`.
pub fn biorder_violations<G: GroupOracle, O: BiOrder<G>>(
    group: &G,
    order: &O,
    triples: impl IntoIterator<Item = (G::Elem, G::Elem, G::Elem)>,
) -> Vec<(G::Elem, G::Elem, G::Elem)> {
    triples
        .into_iter()
        .filter(|(g, h, c)| {
            let base = order.cmp(g, h);
            base != order.cmp(h, g).reverse()
                || (base == Ordering::Equal) != (g == h)
                || order.cmp(&group.mul(c, g), &group.mul(c, h)) != base
                || order.cmp(&group.mul(g, c), &group.mul(h, c)) != base
        })
        .collect()
}

/// The right order on the conjugation quandle induced by a bi-order:
/// `a < b` iff `e < a⁻¹b`.
pub struct InducedConjOrder<'o, G: GroupOracle, O> {
    group: &'o G,
    order: &'o O,
}

pub fn induce_conj_order<'o, G: GroupOracle, O: BiOrder<G>>(group: &'o G, order: &'o O) -> InducedConjOrder<'o, G, O> {
    InducedConjOrder { group, order }
}

impl<G: GroupOracle, O: BiOrder<G>> InducedConjOrder<'_, G, O> {
    pub fn relates(&self, a: &G::Elem, b: &G::Elem) -> bool {
        let diff = self.group.mul(&self.group.inv(a), b);
        self.order.cmp(&self.group.identity(), &diff) == Ordering::Less
    }

    /// `a < b` must give `a ∗ c < b ∗ c` with `x ∗ c = c⁻¹ x c`.
    pub fn violates(&self, a: &G::Elem, b: &G::Elem, c: &G::Elem) -> bool {
        self.relates(a, b) && !self.relates(&self.group.conj(a, c), &self.group.conj(b, c))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductionReport<E> {
    pub checked: usize,
    /// Triples with `a < b`, where invariance had something to prove.
    pub premises: usize,
    pub violations: Vec<(E, E, E)>,
}

fn induction_report<'a, G, O, I>(induced: &InducedConjOrder<'_, G, O>, triples: I) -> InductionReport<G::Elem>
where
    G: GroupOracle + 'a,
    O: BiOrder<G>,
    I: IntoIterator<Item = (&'a G::Elem, &'a G::Elem, &'a G::Elem)>,
{
    let mut report = InductionReport { checked: 0, premises: 0, violations: Vec::new() };
    for (a, b, c) in triples {
        report.checked += 1;
        if induced.relates(a, b) {
            report.premises += 1;
            if induced.violates(a, b, c) {
                report.violations.push((a.clone(), b.clone(), c.clone()));
            }
        }
    }
    report
}

/// Right invariance on every triple of the ball.
pub fn induced_violations_exhaustive<G: GroupOracle, O: BiOrder<G>>(
    induced: &InducedConjOrder<'_, G, O>,
    ball: &Ball<G::Elem>,
) -> InductionReport<G::Elem> {
    let elems = ball.elements();
    let elems = &elems;
    let triples = elems.iter().flat_map(|a| elems.iter().flat_map(move |b| elems.iter().map(move |c| (a, b, c))));
    induction_report(induced, triples)
}

/// Right invariance on `samples` triples drawn uniformly from the ball.
pub fn induced_violations_sampled<G: GroupOracle, O: BiOrder<G>>(
    induced: &InducedConjOrder<'_, G, O>,
    ball: &Ball<G::Elem>,
    samples: usize,
    seed: u64,
) -> InductionReport<G::Elem> {
    let triples = sample_triples(ball.len(), samples, seed);
    induction_report(induced, triples.iter().map(|&(a, b, c)| (ball.get(a), ball.get(b), ball.get(c))))
}

/// Index triples into a set of `len` elements from a ChaCha8 stream seeded with `seed`.
pub fn sample_triples(len: usize, samples: usize, seed: u64) -> Vec<(usize, usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).map(|_| (rng.gen_range(0..len), rng.gen_range(0..len), rng.gen_range(0..len))).collect()
}

/// `[a, b] = a⁻¹ b⁻¹ a b`.
pub fn commutator<G: GroupOracle>(group: &G, a: &G::Elem, b: &G::Elem) -> G::Elem {
    group.mul(&group.mul(&group.inv(a), &group.inv(b)), &group.mul(a, b))
}

/// A pair where `[aⁿ, b] = e` for some `n ≤ nMax` but `a` and `b` do not commute.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeumannViolation<E> {
    pub a: E,
    pub b: E,
    pub n: u32,
}

/// In a bi-orderable group `aⁿ b = b aⁿ` with `n ≥ 1` forces `ab = ba`; this
/// lists every ball pair breaking that.
pub fn neumann_scan<G: GroupOracle>(
    group: &G,
    ball: &Ball<G::Elem>,
    n_max: u32,
) -> Result<Vec<NeumannViolation<G::Elem>>> {
    if !group.lex_biorderable() {
        return Err(Error::Unsupported(format!("{} is not a bi-orderable family", group.name())));
    }
    let e = group.identity();
    let elems = ball.elements();
    let mut out = Vec::new();
    for a in &elems {
        let powers: Vec<G::Elem> = (1..=n_max).map(|n| group.pow(a, n as i64)).collect();
        for b in &elems {
            if group.commutes(a, b) {
                continue;
            }
            if let Some(i) = powers.iter().position(|an| commutator(group, an, b) == e) {
                out.push(NeumannViolation { a: a.clone(), b: b.clone(), n: i as u32 + 1 });
            }
        }
    }
    Ok(out)
}
