//! Invariant strict total orders on finite magmas.
//!
//! An [`OrderRelation`] records, for every off-diagonal ordered pair, whether
//! the pair is in the relation, out of it, or not yet decided. Search states
//! keep `(a, b)` and `(b, a)` complementary; relations read from bit strings
//! may not, and [`verify_order`] reports the first broken condition.

mod enumerate;
mod fip;
mod lex;
mod propagate;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::magma::Magma;

pub use enumerate::{
    brute_force_orders, brute_force_orders_bounded, count, count_constrained, count_par, enumerate, enumerate_par,
    orders, Enumeration, OrderStream, PrunedBranch, BRUTE_FORCE_BOUND,
};
pub use fip::{fip_check, parse_families, FipReport, MAX_FAMILIES};
pub use lex::lex_order;
pub use propagate::{propagate, Contradiction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
    Bi,
}

impl Side {
    pub fn includes_left(self) -> bool {
        matches!(self, Side::Left | Side::Bi)
    }

    pub fn includes_right(self) -> bool {
        matches!(self, Side::Right | Side::Bi)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::Bi => "bi",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            "bi" => Ok(Side::Bi),
            other => Err(Error::InvalidArgument(format!("unknown side `{other}` (expected left, right or bi)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum PairState {
    Undecided,
    Holds,
    Fails,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderRelation {
    size: usize,
    states: Vec<PairState>,
}

impl OrderRelation {
    /// Nothing decided.
    pub fn empty(size: usize) -> Self {
        OrderRelation { size, states: vec![PairState::Undecided; size * size] }
    }

    /// Relation whose pair `(a, b)` holds iff `holds(a, b)`; no validation.
    pub fn from_fn(size: usize, holds: impl Fn(usize, usize) -> bool) -> Self {
        let mut r = Self::empty(size);
        for a in 0..size {
            for b in 0..size {
                if a != b {
                    r.states[a * size + b] = if holds(a, b) { PairState::Holds } else { PairState::Fails };
                }
            }
        }
        r
    }

    /// Total order listing the elements from smallest to largest.
    pub fn from_ranking(ranking: &[usize]) -> Result<Self> {
        let n = ranking.len();
        let mut rank = vec![usize::MAX; n];
        for (i, &x) in ranking.iter().enumerate() {
            if x >= n || rank[x] != usize::MAX {
                return Err(Error::InvalidArgument(format!("{ranking:?} is not a permutation of 0..{n}")));
            }
            rank[x] = i;
        }
        Ok(Self::from_fn(n, |a, b| rank[a] < rank[b]))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn state(&self, a: usize, b: usize) -> PairState {
        self.states[a * self.size + b]
    }

    #[inline]
    pub fn holds(&self, a: usize, b: usize) -> bool {
        a != b && self.state(a, b) == PairState::Holds
    }

    pub(crate) fn set(&mut self, a: usize, b: usize, s: PairState) {
        self.states[a * self.size + b] = s;
    }

    pub fn first_undecided(&self) -> Option<(usize, usize)> {
        let n = self.size;
        (0..n * n).find(|&i| i / n != i % n && self.states[i] == PairState::Undecided).map(|i| (i / n, i % n))
    }

    pub fn is_completed(&self) -> bool {
        self.first_undecided().is_none()
    }

    /// Pairs in the relation, row-major.
    pub fn holding_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.size;
        (0..n * n).filter(|&i| self.states[i] == PairState::Holds && i / n != i % n).map(|i| (i / n, i % n)).collect()
    }

    /// Elements listed from smallest to largest, when the relation is a strict total order.
    pub fn ranking(&self) -> Option<Vec<usize>> {
        let n = self.size;
        let mut by_below: Vec<(usize, usize)> =
            (0..n).map(|x| ((0..n).filter(|&y| self.holds(y, x)).count(), x)).collect();
        by_below.sort_unstable();
        let ranking: Vec<usize> = by_below.iter().map(|&(_, x)| x).collect();
        let ok = by_below.iter().enumerate().all(|(i, &(below, _))| below == i)
            && Self::from_ranking(&ranking).ok().as_ref() == Some(self);
        ok.then_some(ranking)
    }
}

/// Pairs required to be in the order, i.e. an intersection of subbasis sets `S_(a,b)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstraintSet {
    pairs: Vec<(usize, usize)>,
}

impl ConstraintSet {
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self> {
        for &(a, b) in &pairs {
            if a == b {
                return Err(Error::DiagonalPair(a));
            }
            if pairs.contains(&(b, a)) {
                return Err(Error::ReversedConstraint(a, b));
            }
        }
        Ok(ConstraintSet { pairs })
    }

    pub fn single(a: usize, b: usize) -> Result<Self> {
        Self::new(vec![(a, b)])
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn satisfied_by(&self, r: &OrderRelation) -> bool {
        self.pairs.iter().all(|&(a, b)| r.holds(a, b))
    }

    /// Parses lines `a b`; `#` starts a comment.
    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            pairs.push(parse_pair(line, source, i + 1)?);
        }
        Self::new(pairs).map_err(|e| Error::parse(source, 0, "", e.to_string()))
    }
}

pub(crate) fn parse_pair(text: &str, source: &str, line: usize) -> Result<(usize, usize)> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(Error::parse(source, line, text, "expected a pair `a b`"));
    }
    let a = crate::magma::parse_index(source, line, toks[0])?;
    let b = crate::magma::parse_index(source, line, toks[1])?;
    Ok((a, b))
}

/// The first condition a candidate relation breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `(a, b)` and `(b, a)` are both in the relation (`both`) or both out of it.
    Asymmetry { a: usize, b: usize, both: bool },
    /// `(a, b)` and `(b, c)` hold but `(a, c)` does not.
    Transitivity { a: usize, b: usize, c: usize },
    /// `(a, b)` holds but its translate by `c` on `side` does not; `collapse`
    /// means the translate lands on the diagonal.
    Invariance { side: Side, c: usize, a: usize, b: usize, collapse: bool },
}

impl Violation {
    pub fn condition(&self) -> &'static str {
        match self {
            Violation::Invariance { .. } => "(i) invariance",
            Violation::Transitivity { .. } => "(ii) transitivity",
            Violation::Asymmetry { .. } => "(iii) asymmetry",
        }
    }

    /// Re-checks the witness against a magma and a relation.
    pub fn is_genuine(&self, m: &Magma, r: &OrderRelation) -> bool {
        match *self {
            Violation::Asymmetry { a, b, both } => a != b && r.holds(a, b) == both && r.holds(b, a) == both,
            Violation::Transitivity { a, b, c } => r.holds(a, b) && r.holds(b, c) && !r.holds(a, c),
            Violation::Invariance { side, c, a, b, collapse } => {
                let (x, y) = match side {
                    Side::Left => (m.op(c, a), m.op(c, b)),
                    Side::Right => (m.op(a, c), m.op(b, c)),
                    Side::Bi => return false,
                };
                r.holds(a, b) && !r.holds(x, y) && collapse == (x == y)
            }
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Asymmetry { a, b, both: true } => write!(f, "(iii) both ({a},{b}) and ({b},{a}) hold"),
            Violation::Asymmetry { a, b, both: false } => write!(f, "(iii) neither ({a},{b}) nor ({b},{a}) holds"),
            Violation::Transitivity { a, b, c } => {
                write!(f, "(ii) ({a},{b}) and ({b},{c}) hold but ({a},{c}) does not")
            }
            Violation::Invariance { side, c, a, b, collapse } => {
                let what = if collapse { "collapses" } else { "is not preserved" };
                write!(f, "(i) {side} translate of ({a},{b}) by {c} {what}")
            }
        }
    }
}

/// Checks asymmetry, transitivity and invariance, in that order, and returns
/// the first violation found (`None` when `r` is an invariant strict total order).
pub fn verify_order(m: &Magma, r: &OrderRelation, side: Side) -> Result<Option<Violation>> {
    let n = m.size();
    if r.size() != n {
        return Err(Error::InvalidArgument(format!("relation has size {}, magma has size {n}", r.size())));
    }
    if let Some((a, b)) = r.first_undecided() {
        return Err(Error::Incomplete(a, b));
    }
    for a in 0..n {
        for b in a + 1..n {
            if r.holds(a, b) == r.holds(b, a) {
                return Ok(Some(Violation::Asymmetry { a, b, both: r.holds(a, b) }));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if !r.holds(a, b) {
                continue;
            }
            if let Some(c) = (0..n).find(|&c| r.holds(b, c) && !r.holds(a, c)) {
                return Ok(Some(Violation::Transitivity { a, b, c }));
            }
        }
    }
    let pairs = r.holding_pairs();
    for (s, translate) in [
        (Side::Left, (|m: &Magma, c, x| m.op(c, x)) as fn(&Magma, usize, usize) -> usize),
        (Side::Right, |m: &Magma, c, x| m.op(x, c)),
    ] {
        let wanted = if s == Side::Left { side.includes_left() } else { side.includes_right() };
        if !wanted {
            continue;
        }
        for c in 0..n {
            for &(a, b) in &pairs {
                let (x, y) = (translate(m, c, a), translate(m, c, b));
                if !r.holds(x, y) {
                    return Ok(Some(Violation::Invariance { side: s, c, a, b, collapse: x == y }));
                }
            }
        }
    }
    Ok(None)
}
