use std::fmt;

use super::closure::{BallArith, IDENTITY};
use super::conrad::sign_vector;
use super::Sign;
use crate::error::{Error, Result};
use crate::groups::{Ball, GroupOracle};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmpOp {
    Ge,
    Le,
    Gt,
    Lt,
    Eq,
    Ne,
}

impl CmpOp {
    const ALL: [(&'static str, CmpOp); 6] = [
        (">=", CmpOp::Ge),
        ("<=", CmpOp::Le),
        ("==", CmpOp::Eq),
        ("!=", CmpOp::Ne),
        (">", CmpOp::Gt),
        ("<", CmpOp::Lt),
    ];

    fn holds(self, x: i64, v: i64) -> bool {
        match self {
            CmpOp::Ge => x >= v,
            CmpOp::Le => x <= v,
            CmpOp::Gt => x > v,
            CmpOp::Lt => x < v,
            CmpOp::Eq => x == v,
            CmpOp::Ne => x != v,
        }
    }

    fn symbol(self) -> &'static str {
        Self::ALL.iter().find(|(_, op)| *op == self).expect("listed").0
    }
}

/// `coordinate OP value`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Atom {
    pub coord: usize,
    pub op: CmpOp,
    pub value: i64,
}

/// A set of normal forms given as a union of clauses, each a conjunction of
/// coordinate comparisons.
///
/// Text form, one clause per line, atoms separated by commas:
///
/// ```text
/// # a^p b^q with p ≥ 1, or p = 0 and q ≥ 1
/// clause p >= 1
/// clause p == 0, q >= 1
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConePredicate {
    names: Vec<String>,
    clauses: Vec<Vec<Atom>>,
}

impl ConePredicate {
    pub fn new(names: Vec<String>, clauses: Vec<Vec<Atom>>) -> Result<Self> {
        if let Some(a) = clauses.iter().flatten().find(|a| a.coord >= names.len()) {
            return Err(Error::InvalidArgument(format!("coordinate {} does not exist", a.coord)));
        }
        Ok(ConePredicate { names, clauses })
    }

    pub fn clauses(&self) -> &[Vec<Atom>] {
        &self.clauses
    }

    pub fn parse(text: &str, source: &str, names: &[String]) -> Result<Self> {
        let mut clauses = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lno = i + 1;
            let body =
                line.strip_prefix("clause").filter(|b| b.is_empty() || b.starts_with(char::is_whitespace)).ok_or_else(
                    || Error::parse(source, lno, line.split_whitespace().next().unwrap_or(""), "expected `clause`"),
                )?;
            let atoms = body
                .split(',')
                .map(|t| parse_atom(t.trim(), names).map_err(|m| Error::parse(source, lno, t.trim(), m)))
                .collect::<Result<Vec<_>>>()?;
            clauses.push(atoms);
        }
        if clauses.is_empty() {
            return Err(Error::parse(source, 1, "", "no clauses"));
        }
        Ok(ConePredicate { names: names.to_vec(), clauses })
    }

    pub fn contains_coords(&self, coords: &[i64]) -> bool {
        self.clauses.iter().any(|clause| clause.iter().all(|a| a.op.holds(coords[a.coord], a.value)))
    }

    /// Membership of a group element; elements without coordinates are outside.
    pub fn contains<G: GroupOracle>(&self, group: &G, g: &G::Elem) -> bool {
        group.coordinates(g).is_some_and(|c| c.len() == self.names.len() && self.contains_coords(&c))
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

fn parse_atom(text: &str, names: &[String]) -> std::result::Result<Atom, String> {
    let (pos, sym, op) = CmpOp::ALL
        .iter()
        .filter_map(|&(sym, op)| text.find(sym).map(|p| (p, sym, op)))
        .min_by_key(|&(p, sym, _)| (p, std::cmp::Reverse(sym.len())))
        .ok_or_else(|| "expected `<coordinate> <op> <integer>`".to_string())?;
    let name = text[..pos].trim();
    let coord = names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| format!("unknown coordinate `{name}`; expected one of {}", names.join(", ")))?;
    let value = text[pos + sym.len()..].trim().parse().map_err(|_| "bound must be an integer".to_string())?;
    Ok(Atom { coord, op, value })
}

impl fmt::Display for ConePredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for clause in &self.clauses {
            let atoms: Vec<String> =
                clause.iter().map(|a| format!("{} {} {}", self.names[a.coord], a.op.symbol(), a.value)).collect();
            writeln!(f, "clause {}", atoms.join(", "))?;
        }
        Ok(())
    }
}

/// Lexicographic cone: the first nonzero coordinate `c_i` has `ε_i c_i ≥ 1`.
pub fn lex_cone(names: &[String], signs: &[Sign]) -> ConePredicate {
    let clauses = signs
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let mut clause: Vec<Atom> = (0..i).map(|j| Atom { coord: j, op: CmpOp::Eq, value: 0 }).collect();
            clause.push(match s {
                Sign::Plus => Atom { coord: i, op: CmpOp::Ge, value: 1 },
                Sign::Minus => Atom { coord: i, op: CmpOp::Le, value: -1 },
            });
            clause
        })
        .collect();
    ConePredicate { names: names.to_vec(), clauses }
}

/// Every sign variant of the lexicographic cone on the group's coordinates,
/// all-plus first. Empty for families without coordinates.
pub fn lex_cone_catalog<G: GroupOracle>(group: &G) -> Vec<(String, ConePredicate)> {
    let names = group.coordinate_names();
    let k = names.len();
    if k == 0 {
        return Vec::new();
    }
    (0..1usize << k)
        .rev()
        .map(|v| {
            let signs = sign_vector(k, v);
            let label = format!("lex({})", signs.iter().map(Sign::to_string).collect::<Vec<_>>().join(","));
            (label, lex_cone(&names, &signs))
        })
        .collect()
}

/// Checks of a candidate total cone inside one ball, each with its first counterexample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalityReport<E> {
    pub radius: usize,
    pub contains_identity: bool,
    /// `g, h` in the cone with `g·h` in the ball but not in the cone.
    pub semigroup_failure: Option<(E, E)>,
    /// `g` with `g` and `g⁻¹` both in the cone.
    pub purity_failure: Option<E>,
    /// `g ≠ e` with neither `g` nor `g⁻¹` in the cone.
    pub totality_failure: Option<E>,
}

impl<E> TotalityReport<E> {
    pub fn is_semigroup(&self) -> bool {
        self.semigroup_failure.is_none()
    }

    pub fn is_pure(&self) -> bool {
        !self.contains_identity && self.purity_failure.is_none()
    }

    pub fn is_total(&self) -> bool {
        self.totality_failure.is_none()
    }

    pub fn passes(&self) -> bool {
        self.is_semigroup() && self.is_pure() && self.is_total()
    }
}

/// Checks closure under products landing in the ball, purity and totality of
/// the set `member` restricted to the ball.
pub fn verify_cone_total<G: GroupOracle>(
    group: &G,
    ball: &Ball<G::Elem>,
    member: impl Fn(&G::Elem) -> bool,
) -> TotalityReport<G::Elem> {
    let arith = BallArith::new(group, ball);
    let inside: Vec<bool> = ball.iter().map(&member).collect();
    let n = ball.len();
    let elem = |i: usize| ball.get(i).clone();
    let members: Vec<usize> = (0..n).filter(|&i| inside[i]).collect();
    let semigroup_failure = members.iter().find_map(|&i| {
        members.iter().find_map(|&j| match arith.mul(i, j) {
            Some(p) if !inside[p] => Some((elem(i), elem(j))),
            _ => None,
        })
    });
    let purity_failure = members.iter().find(|&&i| i != IDENTITY && inside[arith.inv(i)]).map(|&i| elem(i));
    let totality_failure = (1..n).find(|&i| !inside[i] && !inside[arith.inv(i)]).map(elem);
    TotalityReport {
        radius: ball.radius(),
        contains_identity: inside[IDENTITY],
        semigroup_failure,
        purity_failure,
        totality_failure,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{FreeAbelian, Klein};

    fn klein_names() -> Vec<String> {
        Klein.coordinate_names()
    }

    #[test]
    fn parse_and_render() {
        let text = "# comment\nclause p >= 1\nclause p==0, q >= 1\n";
        let p = ConePredicate::parse(text, "cone.pred", &klein_names()).unwrap();
        assert_eq!(p.to_text(), "clause p >= 1\nclause p == 0, q >= 1\n");
        assert_eq!(p, lex_cone(&klein_names(), &[Sign::Plus, Sign::Plus]));
        assert!(p.contains_coords(&[0, 3]) && p.contains_coords(&[2, -7]));
        assert!(!p.contains_coords(&[0, 0]) && !p.contains_coords(&[-1, 5]));
        let err = ConePredicate::parse("clause r >= 1\n", "bad.pred", &klein_names()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        assert!(ConePredicate::parse("cone p >= 1\n", "bad.pred", &klein_names()).is_err());
        assert!(ConePredicate::parse("clause p >= x\n", "bad.pred", &klein_names()).is_err());
    }

    #[test]
    fn klein_lex_cone_is_total() {
        let ball = Ball::new(&Klein, 6).unwrap();
        for (label, cone) in lex_cone_catalog(&Klein) {
            let r = verify_cone_total(&Klein, &ball, |g| cone.contains(&Klein, g));
            assert!(r.passes(), "{label}: {r:?}");
        }
    }

    #[test]
    fn half_plane_alone_is_not_total() {
        let ball = Ball::new(&Klein, 2).unwrap();
        let half = ConePredicate::parse("clause p >= 1", "h", &klein_names()).unwrap();
        let r = verify_cone_total(&Klein, &ball, |g| half.contains(&Klein, g));
        assert!(r.is_semigroup() && r.is_pure());
        assert_eq!(r.totality_failure, Some((0, 1)));
    }

    #[test]
    fn swapped_coordinates_break_klein_semigroup() {
        // q-first ordering is not invariant under the twist
        let ball = Ball::new(&Klein, 3).unwrap();
        let q_first = ConePredicate::parse("clause q >= 1\nclause q == 0, p >= 1", "s", &klein_names()).unwrap();
        let r = verify_cone_total(&Klein, &ball, |g| q_first.contains(&Klein, g));
        assert!(!r.is_semigroup());
    }

    #[test]
    fn catalog_size() {
        assert_eq!(lex_cone_catalog(&FreeAbelian::new(3).unwrap()).len(), 8);
        assert_eq!(lex_cone_catalog(&Klein)[0].0, "lex(+,+)");
    }
}
