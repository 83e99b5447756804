//! Positive cones on balls: partial-product closures with derivations, the
//! sign-vector test for extending a cone to a total left order, certificates
//! that no extension exists, and verification of candidate total cones.
//!
//! Everything is computed inside a finite ball, keeping a product only when it
//! lands in the ball. Finding the identity is therefore exact (its derivation
//! multiplies out in the group), while not finding it only holds at the radius
//! searched.

use std::fmt;

use crate::groups::GroupOracle;

mod adjudicate;
mod closure;
mod conrad;
mod extend;
mod predicate;
mod spec;

pub use adjudicate::{adjudicate, Adjudication, AdjudicationConfig, RadiusRecord, Verdict};
pub use closure::{evaluate, purity_check, sgr_closure, Cone, Purity, DEFAULT_CLOSURE_BUDGET};
pub use conrad::{
    conrad_test, find_nonextend_witness, sign_vector, Certificate, CertifiedVector, ConradReport, SearchReport,
    VectorOutcome, VectorResult,
};
pub use extend::{greedy_extend, GreedyOutcome, DEFAULT_NODE_BUDGET};
pub use predicate::{lex_cone, lex_cone_catalog, verify_cone_total, Atom, CmpOp, ConePredicate, TotalityReport};
pub use spec::{parse_radii, parse_seed_word, ConeSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn apply<G: GroupOracle>(self, group: &G, x: &G::Elem) -> G::Elem {
        match self {
            Sign::Plus => x.clone(),
            Sign::Minus => group.inv(x),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Minus => "-",
            Sign::Plus => "+",
        })
    }
}

/// One factor of a derivation: a seed element, or a witness element raised to a sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    Seed(usize),
    Witness(usize, Sign),
}

/// Renders a derivation as `s0·x1⁻·...` using the seed and witness texts.
pub fn render_word(word: &[Factor], seed_names: &[String], witness_names: &[String]) -> String {
    if word.is_empty() {
        return "e".into();
    }
    word.iter()
        .map(|f| match *f {
            Factor::Seed(i) => format!("[{}]", seed_names[i]),
            Factor::Witness(j, Sign::Plus) => format!("[{}]", witness_names[j]),
            Factor::Witness(j, Sign::Minus) => format!("[{}]^-1", witness_names[j]),
        })
        .collect::<Vec<_>>()
        .join("·")
}
