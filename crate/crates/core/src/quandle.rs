//! Quandles and racks on finite carriers, their group constructions, and the
//! table-level obstructions to invariant orders.
//!
//! The quandle operation `a ∗ b` is stored as the magma product `a · b`, so
//! `∗_b : a ↦ a ∗ b` is column `b` of the table.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::magma::{FiniteGroup, Magma};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quandle {
    magma: Magma,
    /// `inverse_op[a * n + b] = a ∗̄ b`, the preimage of `a` under `∗_b`.
    inverse_op: Vec<usize>,
}

impl Quandle {
    /// Validates all three quandle axioms.
    pub fn new(magma: Magma) -> Result<Self> {
        let report = check_quandle(&magma);
        if !report.is_quandle() {
            return Err(Error::NotAQuandle(report.describe_failure()));
        }
        let n = magma.size();
        let mut inverse_op = vec![0; n * n];
        for b in 0..n {
            for a in 0..n {
                inverse_op[magma.op(a, b) * n + b] = a;
            }
        }
        Ok(Quandle { magma, inverse_op })
    }

    pub fn magma(&self) -> &Magma {
        &self.magma
    }

    pub fn into_magma(self) -> Magma {
        self.magma
    }

    pub fn size(&self) -> usize {
        self.magma.size()
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.magma.op(a, b)
    }

    #[inline]
    pub fn inverse_op(&self, a: usize, b: usize) -> usize {
        self.inverse_op[a * self.size() + b]
    }

    pub fn is_trivial(&self) -> bool {
        is_trivial_quandle_table(&self.magma)
    }

    /// `true` when `(b ∗ a) ∗ a = b` for all `a, b`.
    pub fn is_involutory(&self) -> bool {
        let n = self.size();
        (0..n).cartesian_product(0..n).all(|(a, b)| iterate_op(&self.magma, b, a, 2) == b)
    }
}

pub fn is_trivial_quandle_table(m: &Magma) -> bool {
    (0..m.size()).all(|a| m.row(a).iter().all(|&x| x == a))
}

/// `a ∗ b = a`.
pub fn trivial_quandle(n: usize) -> Result<Quandle> {
    if n == 0 {
        return Err(Error::InvalidArgument("trivial quandle needs n >= 1".into()));
    }
    Quandle::new(Magma::from_fn(n, |a, _| a)?)
}

/// `Conj(G)`: `a ∗ b = b⁻¹ a b`.
pub fn conj_quandle(g: &FiniteGroup) -> Result<Quandle> {
    Quandle::new(Magma::from_fn(g.size(), |a, b| g.op(g.op(g.inverse(b), a), b))?)
}

/// The kei (involutory) quandle of a group: `b ∗ a = a b⁻¹ a`.
pub fn kei_quandle(g: &FiniteGroup) -> Result<Quandle> {
    Quandle::new(Magma::from_fn(g.size(), |b, a| g.op(g.op(a, g.inverse(b)), a))?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    /// `None` when the axiom holds (or was not checked); otherwise the first counterexample.
    pub idempotent: AxiomOutcome<usize>,
    /// Counterexample `(b, a1, a2)`: `a1 ∗ b = a2 ∗ b` with `a1 < a2`.
    pub columns_bijective: AxiomOutcome<(usize, usize, usize)>,
    /// Counterexample `(a, b, c)` with `(a∗b)∗c != (a∗c)∗(b∗c)`.
    pub right_distributive: AxiomOutcome<(usize, usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomOutcome<W> {
    Holds,
    Fails(W),
    NotChecked,
}

impl<W> AxiomOutcome<W> {
    pub fn holds(&self) -> bool {
        !matches!(self, AxiomOutcome::Fails(_))
    }

    fn from_witness(w: Option<W>) -> Self {
        match w {
            Some(w) => AxiomOutcome::Fails(w),
            None => AxiomOutcome::Holds,
        }
    }
}

impl AxiomReport {
    pub fn is_quandle(&self) -> bool {
        matches!(self.idempotent, AxiomOutcome::Holds) && self.is_rack()
    }

    pub fn is_rack(&self) -> bool {
        self.columns_bijective.holds() && self.right_distributive.holds()
    }

    pub fn describe_failure(&self) -> String {
        let mut parts = Vec::new();
        if let AxiomOutcome::Fails(a) = self.idempotent {
            parts.push(format!("idempotence fails at {a}"));
        }
        if let AxiomOutcome::Fails((b, a1, a2)) = self.columns_bijective {
            parts.push(format!("column {b} is not a bijection ({a1} and {a2} collide)"));
        }
        if let AxiomOutcome::Fails((a, b, c)) = self.right_distributive {
            parts.push(format!("right distributivity fails at ({a}, {b}, {c})"));
        }
        if parts.is_empty() {
            "all axioms hold".into()
        } else {
            parts.join("; ")
        }
    }
}

fn column_collision(m: &Magma) -> Option<(usize, usize, usize)> {
    let n = m.size();
    for b in 0..n {
        let mut seen = vec![usize::MAX; n];
        for a in 0..n {
            let x = m.op(a, b);
            if seen[x] != usize::MAX {
                return Some((b, seen[x], a));
            }
            seen[x] = a;
        }
    }
    None
}

fn distributivity_failure(m: &Magma) -> Option<(usize, usize, usize)> {
    let n = m.size();
    (0..n)
        .cartesian_product(0..n)
        .cartesian_product(0..n)
        .map(|((a, b), c)| (a, b, c))
        .find(|&(a, b, c)| m.op(m.op(a, b), c) != m.op(m.op(a, c), m.op(b, c)))
}

/// Exhaustive scan of the three quandle axioms.
pub fn check_quandle(m: &Magma) -> AxiomReport {
    AxiomReport { idempotent: AxiomOutcome::from_witness((0..m.size()).find(|&a| m.op(a, a) != a)), ..check_rack(m) }
}

/// Rack axioms: bijective right translations and right self-distributivity.
pub fn check_rack(m: &Magma) -> AxiomReport {
    AxiomReport {
        idempotent: AxiomOutcome::NotChecked,
        columns_bijective: AxiomOutcome::from_witness(column_collision(m)),
        right_distributive: AxiomOutcome::from_witness(distributivity_failure(m)),
    }
}

/// `b ∗ a^{∗n}`: apply `∗ a` to `b` n times (`n = 0` returns `b`).
pub fn iterate_op(m: &Magma, b: usize, a: usize, n: usize) -> usize {
    (0..n).fold(b, |x, _| m.op(x, a))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitWitness {
    pub a: usize,
    pub b: usize,
    pub n: usize,
}

/// A triple with `b ∗ a^{∗n} = b` but `b ∗ a != b`, which rules out every
/// right-invariant order. Pairs are scanned with `b` major, then `a`; `n` is
/// the first return time of `b` under `∗ a`.
pub fn quandle_order_obstruction(m: &Magma) -> Option<OrbitWitness> {
    let size = m.size();
    for b in 0..size {
        for a in 0..size {
            let first = m.op(b, a);
            if first == b {
                continue;
            }
            let mut x = first;
            for n in 2..=size {
                x = m.op(x, a);
                if x == b {
                    return Some(OrbitWitness { a, b, n });
                }
            }
        }
    }
    None
}

/// Witness `(c, a, b)`, `a < b`, with `c·a = c·b`: no left order exists.
pub fn left_cancellative(m: &Magma) -> Option<(usize, usize, usize)> {
    let n = m.size();
    (0..n).find_map(|c| {
        let row = m.row(c);
        (0..n).tuple_combinations().find(|&(a, b)| row[a] == row[b]).map(|(a, b)| (c, a, b))
    })
}

/// Witness `(c, a, b)`, `a < b`, with `a·c = b·c`: no right order exists.
pub fn right_cancellative(m: &Magma) -> Option<(usize, usize, usize)> {
    let n = m.size();
    (0..n).find_map(|c| (0..n).tuple_combinations().find(|&(a, b)| m.op(a, c) == m.op(b, c)).map(|(a, b)| (c, a, b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3_kei() -> Quandle {
        kei_quandle(&FiniteGroup::cyclic(3)).unwrap()
    }

    #[test]
    fn trivial_quandle_tables() {
        let q = trivial_quandle(3).unwrap();
        assert_eq!(q.magma().rows(), vec![vec![0, 0, 0], vec![1, 1, 1], vec![2, 2, 2]]);
        assert_eq!(trivial_quandle(1).unwrap().magma().rows(), vec![vec![0]]);
        assert!(check_quandle(&trivial_quandle(4).unwrap().into_magma()).is_quandle());
        assert!(trivial_quandle(0).is_err());
    }

    #[test]
    fn conj_of_s3() {
        let s3 = FiniteGroup::symmetric(3);
        let q = conj_quandle(&s3).unwrap();
        // indices of one-line permutations [1,0,2], [2,1,0], [0,2,1]
        let (t01, t02, t12) = (2, 5, 1);
        assert_eq!(q.op(t01, t02), t12);
        assert!(check_quandle(q.magma()).is_quandle());
        assert!((0..6).all(|a| q.op(a, a) == a));
    }

    #[test]
    fn conj_of_abelian_group_is_trivial() {
        let g = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(3));
        assert!(conj_quandle(&g).unwrap().is_trivial());
    }

    #[test]
    fn kei_of_z3() {
        let q = z3_kei();
        for b in 0..3 {
            for a in 0..3 {
                assert_eq!(q.op(b, a), (2 * a + 3 - b) % 3);
            }
        }
        assert!(q.is_involutory());
        assert_eq!(kei_quandle(&FiniteGroup::cyclic(1)).unwrap().magma().rows(), vec![vec![0]]);
    }

    #[test]
    fn inverse_op_undoes_op() {
        let q = conj_quandle(&FiniteGroup::dihedral(4)).unwrap();
        for a in 0..q.size() {
            for b in 0..q.size() {
                assert_eq!(q.inverse_op(q.op(a, b), b), a);
            }
        }
    }

    #[test]
    fn right_projection_and_permutation_rack() {
        let proj = Magma::from_fn(2, |_, b| b).unwrap();
        let report = check_quandle(&proj);
        assert_eq!(report.idempotent, AxiomOutcome::Holds);
        assert_eq!(report.columns_bijective, AxiomOutcome::Fails((0, 0, 1)));
        assert_eq!(report.right_distributive, AxiomOutcome::Holds);

        let swap = Magma::from_fn(2, |a, _| 1 - a).unwrap();
        assert!(check_rack(&swap).is_rack());
        let report = check_quandle(&swap);
        assert_eq!(report.idempotent, AxiomOutcome::Fails(0));
        assert!(!report.is_quandle());
        assert!(matches!(Quandle::new(swap), Err(Error::NotAQuandle(_))));
    }

    #[test]
    fn iterate_op_on_kei() {
        let q = z3_kei();
        assert_eq!(iterate_op(q.magma(), 0, 1, 1), 2);
        assert_eq!(iterate_op(q.magma(), 0, 1, 2), 0);
        let t = trivial_quandle(4).unwrap();
        assert!((1..6).all(|n| iterate_op(t.magma(), 2, 3, n) == 2));
    }

    #[test]
    fn obstruction_witnesses() {
        assert_eq!(quandle_order_obstruction(z3_kei().magma()), Some(OrbitWitness { a: 1, b: 0, n: 2 }));
        assert_eq!(quandle_order_obstruction(trivial_quandle(5).unwrap().magma()), None);

        let s3 = FiniteGroup::symmetric(3);
        let q = conj_quandle(&s3).unwrap();
        let w = quandle_order_obstruction(q.magma()).unwrap();
        assert_eq!(w.n, 2);
        assert_ne!(q.op(w.b, w.a), w.b);
        assert_eq!(iterate_op(q.magma(), w.b, w.a, w.n), w.b);
        // the first witness is b = (0 2 1) acting by the transposition (1 2)
        assert_eq!((w.b, w.a), (1, 2));
    }

    #[test]
    fn cancellation_witnesses() {
        // lexicographically first collapse in row 0
        assert_eq!(left_cancellative(trivial_quandle(3).unwrap().magma()), Some((0, 0, 1)));
        let t = trivial_quandle(3).unwrap();
        assert_eq!(t.op(0, 1), t.op(0, 2));
        assert_eq!(right_cancellative(t.magma()), None);
        assert_eq!(left_cancellative(FiniteGroup::symmetric(3).magma()), None);
        assert_eq!(left_cancellative(&Magma::new(1, vec![0]).unwrap()), None);
    }
}
