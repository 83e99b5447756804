//! Exact arithmetic for infinite (and small cyclic) groups given by normal forms.
//!
//! Every family implements [`GroupOracle`]: elements are canonical forms, so
//! equality and hashing of elements is equality in the group. Words use one
//! lowercase letter per generator and the uppercase letter for its inverse;
//! a letter may carry an integer exponent, as in `a^3B` or `x^-2`.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};

mod any;
mod ball;
mod conj;
mod families;
mod torus;

pub use any::{AnyElement, AnyGroup};
pub use ball::{Ball, DEFAULT_BALL_BUDGET};
pub use conj::{
    biorder_violations, commutator, conj_obstruction_oracle, induce_conj_order, induced_violations_exhaustive,
    induced_violations_sampled, neumann_scan, sample_triples, ConjWitness, InducedConjOrder, InductionReport,
    LexBiOrder, NeumannViolation,
};
pub use families::{Cyclic, FreeAbelian, FreeGroup, Heisenberg, Klein};
pub use torus::{Letter, Syllable, TorusElement, TorusKnot};

/// How strongly `g` is known to commute with every element of the group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Centrality {
    /// Checked against every element of a finite group.
    Exhaustive,
    /// Central by the shape of its normal form.
    Structural,
    /// Commutes with every element of the searched ball; not a proof.
    BallEvidence,
    /// Fails to commute with some element.
    NotCentral,
}

impl Centrality {
    pub fn as_str(self) -> &'static str {
        match self {
            Centrality::Exhaustive => "exhaustive",
            Centrality::Structural => "structural",
            Centrality::BallEvidence => "ball-evidence",
            Centrality::NotCentral => "not-central",
        }
    }

    /// Whether the level is a proof of centrality.
    pub fn is_certified(self) -> bool {
        matches!(self, Centrality::Exhaustive | Centrality::Structural)
    }
}

pub trait GroupOracle: Send + Sync {
    type Elem: Clone + Eq + Hash + Ord + Debug + Send + Sync;

    fn name(&self) -> String;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    /// Generator letters and elements, in the order balls expand them.
    fn generators(&self) -> Vec<(char, Self::Elem)>;

    /// Canonical text form; [`GroupOracle::parse_element`] reads it back.
    fn render(&self, a: &Self::Elem) -> String;

    /// Names of integer coordinates on normal forms, empty if there are none.
    fn coordinate_names(&self) -> Vec<String> {
        Vec::new()
    }

    fn coordinates(&self, _a: &Self::Elem) -> Option<Vec<i64>> {
        None
    }

    fn element_at(&self, _coords: &[i64]) -> Option<Self::Elem> {
        None
    }

    /// All elements, for finite groups.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    /// `true` when the normal form alone shows `a` is central.
    fn structurally_central(&self, _a: &Self::Elem) -> bool {
        false
    }

    /// Whether lexicographic comparison of coordinates is a bi-order.
    fn lex_biorderable(&self) -> bool {
        false
    }

    fn is_identity(&self, a: &Self::Elem) -> bool {
        *a == self.identity()
    }

    fn pow(&self, a: &Self::Elem, n: i64) -> Self::Elem {
        let base = if n < 0 { self.inv(a) } else { a.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = self.identity();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            k >>= 1;
            if k > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }

    fn commutes(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Conjugate quandle operation `a ∗ b = b⁻¹ a b`.
    fn conj(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(&self.inv(b), a), b)
    }

    fn product(&self, factors: &[Self::Elem]) -> Self::Elem {
        factors.iter().fold(self.identity(), |acc, x| self.mul(&acc, x))
    }

    fn generator(&self, letter: char) -> Option<Self::Elem> {
        let lower = letter.to_ascii_lowercase();
        let g = self.generators().into_iter().find(|(c, _)| *c == lower)?.1;
        Some(if letter.is_ascii_uppercase() { self.inv(&g) } else { g })
    }

    /// Evaluates a word, or a coordinate tuple `(c1,c2,...)` for families with coordinates.
    fn parse_element(&self, text: &str) -> Result<Self::Elem> {
        let text = text.trim();
        if text.starts_with('(') {
            return self.parse_tuple(text);
        }
        let factors = parse_word(text, |c| self.generator(c).is_some())?;
        let mut acc = self.identity();
        for (letter, exp) in factors {
            let g = self.generator(letter).expect("letter checked");
            acc = self.mul(&acc, &self.pow(&g, exp));
        }
        Ok(acc)
    }

    fn parse_tuple(&self, text: &str) -> Result<Self::Elem> {
        let bad = |m: &str| Error::InvalidArgument(format!("`{text}`: {m}"));
        let inner =
            text.strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(|| bad("unbalanced parentheses"))?;
        let coords = inner
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| bad("coordinates must be integers")))
            .collect::<Result<Vec<_>>>()?;
        if coords.len() != self.coordinate_names().len() {
            return Err(bad(&format!("expected {} coordinates", self.coordinate_names().len())));
        }
        self.element_at(&coords).ok_or_else(|| bad("not a valid normal form"))
    }
}

/// Splits a word into `(letter, exponent)` factors. `e` and `1` alone denote
/// the empty word.
pub fn parse_word(text: &str, known: impl Fn(char) -> bool) -> Result<Vec<(char, i64)>> {
    let text = text.trim();
    if text.is_empty() || text == "e" || text == "1" {
        return Ok(Vec::new());
    }
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if !c.is_ascii_alphabetic() || !known(c) {
            return Err(Error::InvalidArgument(format!("`{c}` is not a generator letter in `{text}`")));
        }
        i += 1;
        let mut exp = 1i64;
        if chars.get(i) == Some(&'^') {
            let start = i + 1;
            let mut end = start;
            if chars.get(end) == Some(&'-') {
                end += 1;
            }
            while chars.get(end).is_some_and(|d| d.is_ascii_digit()) {
                end += 1;
            }
            let digits: String = chars[start..end].iter().collect();
            exp =
                digits.parse().map_err(|_| Error::InvalidArgument(format!("bad exponent after `{c}` in `{text}`")))?;
            i = end;
        }
        out.push((c, exp));
    }
    Ok(out)
}

/// Writes `letter^exp` with the inverse letter for negative exponents; short
/// powers are spelled out.
pub(crate) fn render_power(out: &mut String, letter: char, exp: i64) {
    let shown = if exp < 0 { letter.to_ascii_uppercase() } else { letter };
    match exp.unsigned_abs() {
        0 => {}
        k @ 1..=3 => out.extend(std::iter::repeat_n(shown, k as usize)),
        _ => {
            out.push(letter);
            out.push('^');
            out.push_str(&exp.to_string());
        }
    }
}

/// Letters for families with a numbered generator list (`e` is skipped).
pub(crate) const NUMBERED_LETTERS: &str = "abcdfghijklmnopqrstuvw";

pub(crate) fn numbered_letter(i: usize) -> char {
    NUMBERED_LETTERS.as_bytes()[i] as char
}

/// Comparison oracle for a strict total order on a group.
pub trait BiOrder<G: GroupOracle> {
    fn cmp(&self, g: &G::Elem, h: &G::Elem) -> Ordering;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_tokens() {
        let known = |c: char| "abAB".contains(c);
        assert_eq!(parse_word("aBB", known).unwrap(), vec![('a', 1), ('B', 1), ('B', 1)]);
        assert_eq!(parse_word("a^3b^-2", known).unwrap(), vec![('a', 3), ('b', -2)]);
        assert_eq!(parse_word("e", known).unwrap(), vec![]);
        assert!(parse_word("ac", known).is_err());
        assert!(parse_word("a^", known).is_err());
    }

    #[test]
    fn short_powers_are_spelled_out() {
        let mut s = String::new();
        render_power(&mut s, 'a', -2);
        render_power(&mut s, 'b', 5);
        assert_eq!(s, "AAb^5");
    }
}
