use indexmap::IndexMap;
use rayon::prelude::*;

use super::Factor;
use crate::error::{Error, Result};
use crate::groups::{Ball, GroupOracle};

pub const DEFAULT_CLOSURE_BUDGET: usize = 500_000;

/// Balls up to this size get a precomputed partial multiplication table.
const TABLE_LIMIT: usize = 2048;
const NONE: u32 = u32::MAX;

/// Index arithmetic on a ball: products are kept only when they land inside.
pub(crate) struct BallArith<'a, G: GroupOracle> {
    group: &'a G,
    ball: &'a Ball<G::Elem>,
    table: Option<Vec<u32>>,
    inverse: Vec<usize>,
}

impl<'a, G: GroupOracle> BallArith<'a, G> {
    pub(crate) fn new(group: &'a G, ball: &'a Ball<G::Elem>) -> Self {
        let n = ball.len();
        // balls are closed under inversion: the reversed word has the same length
        let inverse = (0..n).map(|i| ball.position(&group.inv(ball.get(i))).expect("balls are symmetric")).collect();
        let table = (n <= TABLE_LIMIT).then(|| {
            (0..n)
                .into_par_iter()
                .flat_map_iter(|i| {
                    let gi = ball.get(i);
                    (0..n).map(move |j| ball.position(&group.mul(gi, ball.get(j))).map_or(NONE, |p| p as u32))
                })
                .collect()
        });
        BallArith { group, ball, table, inverse }
    }

    pub(crate) fn len(&self) -> usize {
        self.ball.len()
    }

    pub(crate) fn ball(&self) -> &'a Ball<G::Elem> {
        self.ball
    }

    pub(crate) fn group(&self) -> &'a G {
        self.group
    }

    pub(crate) fn mul(&self, i: usize, j: usize) -> Option<usize> {
        match &self.table {
            Some(t) => {
                let p = t[i * self.ball.len() + j];
                (p != NONE).then_some(p as usize)
            }
            None => self.ball.position(&self.group.mul(self.ball.get(i), self.ball.get(j))),
        }
    }

    pub(crate) fn inv(&self, i: usize) -> usize {
        self.inverse[i]
    }

    /// Ball index of `g`, or an error naming the element.
    pub(crate) fn locate(&self, g: &G::Elem) -> Result<usize> {
        self.ball.position(g).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "{} lies outside the ball of radius {}",
                self.group.render(g),
                self.ball.radius()
            ))
        })
    }
}

/// The identity is always the first element of a ball.
pub(crate) const IDENTITY: usize = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Origin {
    /// Generator slot.
    Generator(usize),
    /// Product of two earlier members (ball indices).
    Product(usize, usize),
}

/// Semi-naive partial-product closure over ball indices.
///
/// Members `order[..processed]` are pairwise closed; saturation multiplies each
/// newly processed member with every processed member on both sides. The
/// search stops as soon as the identity appears.
#[derive(Clone, Debug)]
pub(crate) struct Closure {
    origin: Vec<Option<Origin>>,
    order: Vec<usize>,
    processed: usize,
    slots: usize,
    cap: usize,
    partial: bool,
}

impl Closure {
    pub(crate) fn new(ball_len: usize, cap: usize) -> Self {
        Closure { origin: vec![None; ball_len], order: Vec::new(), processed: 0, slots: 0, cap, partial: false }
    }

    /// Adds ball element `g` as the next generator slot and saturates.
    pub(crate) fn add_generator<G: GroupOracle>(&mut self, arith: &BallArith<'_, G>, g: usize) {
        let slot = self.slots;
        self.slots += 1;
        if self.origin[g].is_none() {
            self.insert(g, Origin::Generator(slot));
        }
        self.saturate(arith);
    }

    fn insert(&mut self, x: usize, origin: Origin) {
        if self.order.len() >= self.cap {
            self.partial = true;
            return;
        }
        self.origin[x] = Some(origin);
        self.order.push(x);
    }

    fn saturate<G: GroupOracle>(&mut self, arith: &BallArith<'_, G>) {
        while !self.has_identity() && !self.partial && self.processed < self.order.len() {
            let x = self.order[self.processed];
            self.processed += 1;
            for i in 0..self.processed {
                let y = self.order[i];
                for (l, r) in [(x, y), (y, x)] {
                    if let Some(p) = arith.mul(l, r) {
                        if self.origin[p].is_none() {
                            self.insert(p, Origin::Product(l, r));
                            if p == IDENTITY || self.partial {
                                return;
                            }
                        }
                    }
                }
            }
        }
    }

    pub(crate) fn has_identity(&self) -> bool {
        self.origin[IDENTITY].is_some()
    }

    pub(crate) fn contains(&self, x: usize) -> bool {
        self.origin[x].is_some()
    }

    pub(crate) fn is_partial(&self) -> bool {
        self.partial
    }

    pub(crate) fn members(&self) -> &[usize] {
        &self.order
    }

    /// Generator slots whose product is `x`, left to right.
    pub(crate) fn derivation(&self, x: usize) -> Option<Vec<usize>> {
        self.origin[x]?;
        let mut out = Vec::new();
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            match self.origin[y].expect("members have origins") {
                Origin::Generator(s) => out.push(s),
                Origin::Product(l, r) => {
                    stack.push(r);
                    stack.push(l);
                }
            }
        }
        Some(out)
    }
}

/// A seed together with its partial-product closure inside a ball.
#[derive(Clone, Debug)]
pub struct Cone<E> {
    pub seed: Vec<E>,
    pub radius: usize,
    /// Members in discovery order with their derivations over seed indices.
    pub members: IndexMap<E, Vec<usize>>,
    /// The closure budget stopped saturation early.
    pub partial: bool,
}

impl<E: Clone + Eq + std::hash::Hash> Cone<E> {
    pub fn contains(&self, g: &E) -> bool {
        self.members.contains_key(g)
    }

    pub fn derivation(&self, g: &E) -> Option<&[usize]> {
        self.members.get(g).map(Vec::as_slice)
    }
}

fn seed_indices<G: GroupOracle>(arith: &BallArith<'_, G>, seed: &[G::Elem]) -> Result<Vec<usize>> {
    seed.iter()
        .map(|g| {
            let i = arith.locate(g)?;
            if i == IDENTITY {
                return Err(Error::InvalidArgument("the identity cannot be a cone generator".into()));
            }
            Ok(i)
        })
        .collect()
}

pub(crate) fn seeded_closure<G: GroupOracle>(
    arith: &BallArith<'_, G>,
    seed: &[G::Elem],
    budget: usize,
) -> Result<Closure> {
    let idx = seed_indices(arith, seed)?;
    let mut c = Closure::new(arith.len(), budget);
    for i in idx {
        c.add_generator(arith, i);
    }
    Ok(c)
}

/// Closure of `seed` under products that stay inside `ball`, with derivations.
///
/// Saturation stops early if the identity is derived; check
/// [`purity_check`] for that case.
pub fn sgr_closure<G: GroupOracle>(
    group: &G,
    seed: &[G::Elem],
    ball: &Ball<G::Elem>,
    budget: usize,
) -> Result<Cone<G::Elem>> {
    let arith = BallArith::new(group, ball);
    let c = seeded_closure(&arith, seed, budget)?;
    let members = c.members().iter().map(|&x| (ball.get(x).clone(), c.derivation(x).expect("member"))).collect();
    Ok(Cone { seed: seed.to_vec(), radius: ball.radius(), members, partial: c.is_partial() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Purity<E> {
    /// No member is the identity and no member has its inverse in the cone.
    Pure,
    ContainsIdentity {
        derivation: Vec<usize>,
    },
    Impure {
        g: E,
        inverse: E,
    },
}

/// Purity of the closure relative to its ball.
pub fn purity_check<G: GroupOracle>(group: &G, cone: &Cone<G::Elem>) -> Purity<G::Elem> {
    let e = group.identity();
    if let Some(d) = cone.derivation(&e) {
        return Purity::ContainsIdentity { derivation: d.to_vec() };
    }
    for g in cone.members.keys() {
        let inv = group.inv(g);
        if cone.contains(&inv) {
            return Purity::Impure { g: g.clone(), inverse: inv };
        }
    }
    Purity::Pure
}

/// Evaluates a factor list exactly.
pub fn evaluate<G: GroupOracle>(group: &G, seed: &[G::Elem], witnesses: &[G::Elem], word: &[Factor]) -> G::Elem {
    word.iter().fold(group.identity(), |acc, f| {
        let x = match *f {
            Factor::Seed(i) => seed[i].clone(),
            Factor::Witness(j, sign) => sign.apply(group, &witnesses[j]),
        };
        group.mul(&acc, &x)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{Cyclic, Klein};

    #[test]
    fn klein_identity_from_b_powers() {
        let ball = Ball::new(&Klein, 3).unwrap();
        let cone = sgr_closure(&Klein, &[(0, -1), (0, 2)], &ball, DEFAULT_CLOSURE_BUDGET).unwrap();
        let d = cone.derivation(&(0, 0)).expect("identity derived");
        let seed = [(0, -1), (0, 2)];
        let word: Vec<Factor> = d.iter().map(|&i| Factor::Seed(i)).collect();
        assert_eq!(evaluate(&Klein, &seed, &[], &word), (0, 0));
        assert!(matches!(purity_check(&Klein, &cone), Purity::ContainsIdentity { .. }));
    }

    #[test]
    fn klein_seed_closure_shape() {
        let ball = Ball::new(&Klein, 4).unwrap();
        let seed = [(0, 2), (1, 0), (1, -2)];
        let cone = sgr_closure(&Klein, &seed, &ball, DEFAULT_CLOSURE_BUDGET).unwrap();
        assert!(!cone.contains(&(0, 0)));
        for (g, d) in &cone.members {
            let word: Vec<Factor> = d.iter().map(|&i| Factor::Seed(i)).collect();
            assert_eq!(&evaluate(&Klein, &seed, &[], &word), g);
            // a-exponent is a homomorphism to ℤ and every seed has it ≥ 0
            assert!(g.0 >= 0);
            if g.0 == 0 {
                assert!(g.1 > 0 && g.1 % 2 == 0, "{g:?}");
            }
        }
        assert_eq!(purity_check(&Klein, &cone), Purity::Pure);
    }

    #[test]
    fn impure_and_torsion_seeds() {
        let ball = Ball::new(&Klein, 2).unwrap();
        let cone = sgr_closure(&Klein, &[(0, 1), (0, -1)], &ball, DEFAULT_CLOSURE_BUDGET).unwrap();
        assert!(!matches!(purity_check(&Klein, &cone), Purity::Pure));
        let c2 = Cyclic::new(2).unwrap();
        let ball = Ball::new(&c2, 1).unwrap();
        let cone = sgr_closure(&c2, &[1], &ball, DEFAULT_CLOSURE_BUDGET).unwrap();
        assert!(matches!(purity_check(&c2, &cone), Purity::ContainsIdentity { .. }));
        assert!(sgr_closure(&c2, &[0], &ball, DEFAULT_CLOSURE_BUDGET).is_err());
    }

    #[test]
    fn budget_marks_partial() {
        let ball = Ball::new(&Klein, 4).unwrap();
        let cone = sgr_closure(&Klein, &[(1, 0), (0, 1)], &ball, 5).unwrap();
        assert!(cone.partial);
        assert_eq!(cone.members.len(), 5);
    }

    #[test]
    fn radius_monotone() {
        let seed = [(0, 2), (1, 0), (1, -2)];
        let small = sgr_closure(&Klein, &seed, &Ball::new(&Klein, 3).unwrap(), DEFAULT_CLOSURE_BUDGET).unwrap();
        let big = sgr_closure(&Klein, &seed, &Ball::new(&Klein, 4).unwrap(), DEFAULT_CLOSURE_BUDGET).unwrap();
        assert!(small.members.keys().all(|g| big.contains(g)));
    }
}
