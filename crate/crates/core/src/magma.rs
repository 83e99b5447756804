//! Finite magmas and finite groups stored as operation tables.
//!
//! Elements are `0..n`. Tables are row-major with the left operand selecting
//! the row, so `table[a * n + b] = a · b`.

use std::fmt::Write as _;

use itertools::Itertools;

use crate::error::{Error, Result};

/// A finite set with a total binary operation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Magma {
    size: usize,
    table: Vec<usize>,
}

impl Magma {
    pub fn new(size: usize, table: Vec<usize>) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidTable("magma must have at least one element".into()));
        }
        if table.len() != size * size {
            return Err(Error::InvalidTable(format!("expected {} entries, found {}", size * size, table.len())));
        }
        if let Some((i, &v)) = table.iter().enumerate().find(|(_, &v)| v >= size) {
            return Err(Error::InvalidTable(format!(
                "entry {} at row {} column {} is out of range",
                v,
                i / size,
                i % size
            )));
        }
        Ok(Magma { size, table })
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let size = rows.len();
        if let Some(r) = rows.iter().position(|row| row.len() != size) {
            return Err(Error::InvalidTable(format!("row {r} does not have {size} entries")));
        }
        Magma::new(size, rows.concat())
    }

    pub fn from_fn(size: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let table = (0..size).cartesian_product(0..size).map(|(a, b)| op(a, b)).collect();
        Magma::new(size, table)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.table[a * self.size..(a + 1) * self.size]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.size).map(|a| self.row(a).to_vec()).collect()
    }

    pub fn check_element(&self, x: usize) -> Result<()> {
        if x < self.size {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange { element: x, size: self.size })
        }
    }

    /// First triple `(a, b, c)` with `(ab)c != a(bc)`, if any.
    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.size;
        (0..n)
            .cartesian_product(0..n)
            .cartesian_product(0..n)
            .map(|((a, b), c)| (a, b, c))
            .find(|&(a, b, c)| self.op(self.op(a, b), c) != self.op(a, self.op(b, c)))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("magma {}\n", self.size);
        for a in 0..self.size {
            let _ = writeln!(out, "{}", self.row(a).iter().join(" "));
        }
        out
    }
}

/// A finite group given by its table, identity and inverse map.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    magma: Magma,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates associativity, the identity and the inverse map.
    pub fn new(magma: Magma, identity: usize, inverse: Vec<usize>) -> Result<Self> {
        let n = magma.size();
        magma.check_element(identity)?;
        if inverse.len() != n {
            return Err(Error::NotAGroup(format!("inverse list has {} entries, expected {n}", inverse.len())));
        }
        for (a, &ia) in inverse.iter().enumerate() {
            if magma.op(identity, a) != a || magma.op(a, identity) != a {
                return Err(Error::NotAGroup(format!("{identity} is not a two-sided identity for {a}")));
            }
            magma.check_element(ia)?;
            if magma.op(a, ia) != identity || magma.op(ia, a) != identity {
                return Err(Error::NotAGroup(format!("{ia} is not an inverse of {a}")));
            }
        }
        if let Some((a, b, c)) = magma.associativity_failure() {
            return Err(Error::NotAGroup(format!("associativity fails at ({a}, {b}, {c})")));
        }
        Ok(FiniteGroup { magma, identity, inverse })
    }

    /// Derives identity and inverses from the table.
    pub fn from_magma(magma: Magma) -> Result<Self> {
        let n = magma.size();
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| magma.op(e, a) == a && magma.op(a, e) == a))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        let inverse = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| magma.op(a, b) == identity)
                    .ok_or_else(|| Error::NotAGroup(format!("{a} has no right inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteGroup::new(magma, identity, inverse)
    }

    /// Cyclic group `Z/n` written additively.
    pub fn cyclic(n: usize) -> Self {
        let magma = Magma::from_fn(n, |a, b| (a + b) % n).expect("cyclic table");
        let inverse = (0..n).map(|a| (n - a) % n).collect();
        FiniteGroup { magma, identity: 0, inverse }
    }

    /// Closure of a set of permutations of `0..degree` under composition.
    ///
    /// Elements are numbered in lexicographic order of their images, so the
    /// identity is always 0. The product `s·t` applies `t` first, then `s`.
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>]) -> Result<Self> {
        for g in generators {
            let mut sorted = g.clone();
            sorted.sort_unstable();
            if g.len() != degree || sorted != (0..degree).collect::<Vec<_>>() {
                return Err(Error::InvalidArgument(format!("{g:?} is not a permutation of 0..{degree}")));
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = std::collections::BTreeSet::from([identity.clone()]);
        let mut frontier = vec![identity];
        while let Some(p) = frontier.pop() {
            for g in generators {
                let q: Vec<usize> = (0..degree).map(|i| g[p[i]]).collect();
                if elements.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        let elements: Vec<Vec<usize>> = elements.into_iter().collect();
        let index: std::collections::HashMap<&Vec<usize>, usize> =
            elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let compose = |s: &Vec<usize>, t: &Vec<usize>| -> Vec<usize> { (0..degree).map(|i| s[t[i]]).collect() };
        let magma = Magma::from_fn(elements.len(), |a, b| index[&compose(&elements[a], &elements[b])])?;
        FiniteGroup::from_magma(magma)
    }

    /// Symmetric group on `degree` points, elements in lexicographic order of
    /// their one-line notation.
    pub fn symmetric(degree: usize) -> Self {
        let gens: Vec<Vec<usize>> = if degree < 2 {
            vec![]
        } else {
            let transposition = {
                let mut p: Vec<usize> = (0..degree).collect();
                p.swap(0, 1);
                p
            };
            let cycle = (0..degree).map(|i| (i + 1) % degree).collect();
            vec![transposition, cycle]
        };
        FiniteGroup::from_permutations(degree.max(1), &gens).expect("symmetric group")
    }

    /// Dihedral group of order `2 * k` acting on a `k`-gon (`k >= 3`).
    pub fn dihedral(k: usize) -> Self {
        let rotation = (0..k).map(|i| (i + 1) % k).collect();
        let reflection = (0..k).map(|i| (k - i) % k).collect();
        FiniteGroup::from_permutations(k, &[rotation, reflection]).expect("dihedral group")
    }

    /// Quaternion group `{±1, ±i, ±j, ±k}`; element `2u + s` is `(-1)^s` times unit `u`.
    pub fn quaternion() -> Self {
        // unit products: (unit, sign flip)
        const UNIT: [[(usize, usize); 4]; 4] = [
            [(0, 0), (1, 0), (2, 0), (3, 0)],
            [(1, 0), (0, 1), (3, 0), (2, 1)],
            [(2, 0), (3, 1), (0, 1), (1, 0)],
            [(3, 0), (2, 0), (1, 1), (0, 1)],
        ];
        let magma = Magma::from_fn(8, |a, b| {
            let (u, s) = UNIT[a / 2][b / 2];
            2 * u + ((a % 2) ^ (b % 2) ^ s)
        })
        .expect("quaternion table");
        FiniteGroup::from_magma(magma).expect("quaternion group")
    }

    /// Direct product with mixed-radix encoding `a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Self {
        let m = other.size();
        let magma = Magma::from_fn(self.size() * m, |x, y| self.op(x / m, y / m) * m + other.op(x % m, y % m))
            .expect("product table");
        let inverse = (0..self.size() * m).map(|x| self.inverse(x / m) * m + other.inverse(x % m)).collect();
        FiniteGroup { magma, identity: self.identity * m + other.identity, inverse }
    }

    pub fn magma(&self) -> &Magma {
        &self.magma
    }

    pub fn size(&self) -> usize {
        self.magma.size()
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.magma.op(a, b)
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverse
    }

    pub fn pow(&self, a: usize, n: i64) -> usize {
        let base = if n < 0 { self.inverse(a) } else { a };
        (0..n.unsigned_abs()).fold(self.identity, |acc, _| self.op(acc, base))
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.op(a, b) == self.op(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.size()).all(|a| (a + 1..self.size()).all(|b| self.commutes(a, b)))
    }

    /// Elements commuting with everything, by exhaustive scan.
    pub fn center(&self) -> Vec<usize> {
        (0..self.size()).filter(|&z| (0..self.size()).all(|g| self.commutes(z, g))).collect()
    }

    pub fn centralizer(&self, b: usize) -> Vec<usize> {
        (0..self.size()).filter(|&a| self.commutes(a, b)).collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = self.magma.to_text();
        let _ = writeln!(out, "identity {}", self.identity);
        let _ = writeln!(out, "inverse {}", self.inverse.iter().join(" "));
        out
    }
}

/// Contents of a magma or group text file.
#[derive(Clone, Debug)]
pub enum TableFile {
    Magma(Magma),
    Group(FiniteGroup),
}

impl TableFile {
    pub fn magma(&self) -> &Magma {
        match self {
            TableFile::Magma(m) => m,
            TableFile::Group(g) => g.magma(),
        }
    }
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

pub(crate) fn parse_index(source: &str, line: usize, token: &str) -> Result<usize> {
    token.parse::<usize>().map_err(|_| Error::parse(source, line, token, "expected a non-negative integer"))
}

/// Parses the `magma <n>` format, with optional `identity` and `inverse`
/// lines turning it into a group. `#` starts a comment.
pub fn parse_table_file(text: &str, source: &str) -> Result<TableFile> {
    let mut lines = data_lines(text);
    let (hline, header) =
        lines.next().ok_or_else(|| Error::parse(source, 1, "", "empty file, expected `magma <n>`"))?;
    let mut words = header.split_whitespace();
    match words.next() {
        Some("magma") => {}
        Some(other) => return Err(Error::parse(source, hline, other, "expected `magma`")),
        None => unreachable!("data lines are non-empty"),
    }
    let size_tok = words.next().ok_or_else(|| Error::parse(source, hline, header, "missing size"))?;
    let n = parse_index(source, hline, size_tok)?;
    if n == 0 {
        return Err(Error::parse(source, hline, size_tok, "size must be positive"));
    }
    if let Some(extra) = words.next() {
        return Err(Error::parse(source, hline, extra, "unexpected token after size"));
    }
    let mut table = Vec::with_capacity(n * n);
    for row in 0..n {
        let (lno, line) =
            lines.next().ok_or_else(|| Error::parse(source, hline + row + 1, "", format!("missing row {row}")))?;
        let entries = line.split_whitespace().collect::<Vec<_>>();
        if entries.len() != n {
            return Err(Error::parse(source, lno, line, format!("row {row} must have {n} entries")));
        }
        for tok in entries {
            let v = parse_index(source, lno, tok)?;
            if v >= n {
                return Err(Error::parse(source, lno, tok, format!("entry out of range 0..{n}")));
            }
            table.push(v);
        }
    }
    let magma = Magma::new(n, table)?;
    let mut identity = None;
    let mut inverse = None;
    for (lno, line) in lines {
        let mut words = line.split_whitespace();
        match words.next() {
            Some("identity") => {
                let tok = words.next().ok_or_else(|| Error::parse(source, lno, line, "missing identity"))?;
                let e = parse_index(source, lno, tok)?;
                if e >= n {
                    return Err(Error::parse(source, lno, tok, "identity out of range"));
                }
                identity = Some(e);
            }
            Some("inverse") => {
                let inv = words.map(|t| parse_index(source, lno, t)).collect::<Result<Vec<_>>>()?;
                if inv.len() != n {
                    return Err(Error::parse(source, lno, line, format!("inverse must list {n} entries")));
                }
                inverse = Some(inv);
            }
            Some(other) => return Err(Error::parse(source, lno, other, "unexpected line")),
            None => {}
        }
    }
    match (identity, inverse) {
        (None, None) => Ok(TableFile::Magma(magma)),
        (Some(e), Some(inv)) => FiniteGroup::new(magma, e, inv).map(TableFile::Group),
        _ => Err(Error::parse(source, hline, "magma", "group files need both `identity` and `inverse`")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range_entries() {
        assert!(matches!(Magma::new(2, vec![0, 1, 2, 0]), Err(Error::InvalidTable(_))));
        assert!(Magma::new(0, vec![]).is_err());
    }

    #[test]
    fn small_groups_validate() {
        for g in [
            FiniteGroup::cyclic(1),
            FiniteGroup::cyclic(5),
            FiniteGroup::symmetric(3),
            FiniteGroup::dihedral(4),
            FiniteGroup::quaternion(),
            FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(4)),
        ] {
            FiniteGroup::new(g.magma().clone(), g.identity(), g.inverses().to_vec()).unwrap();
        }
        assert_eq!(FiniteGroup::symmetric(3).size(), 6);
        assert_eq!(FiniteGroup::dihedral(4).size(), 8);
        assert!(!FiniteGroup::quaternion().is_abelian());
        assert_eq!(FiniteGroup::quaternion().center().len(), 2);
    }

    #[test]
    fn s3_center_and_centralizers() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.center(), vec![s3.identity()]);
        // one-line notation, lexicographic: 0=[0,1,2] 1=[0,2,1] 2=[1,0,2] 3=[1,2,0] 4=[2,0,1] 5=[2,1,0]
        let t01 = 2;
        let c3 = 3;
        let c3_inv = 4;
        assert_eq!(s3.op(c3, c3), c3_inv);
        assert!(s3.commutes(c3, c3_inv));
        assert!(!s3.commutes(c3, t01));
    }

    #[test]
    fn text_round_trip() {
        let g = FiniteGroup::cyclic(3);
        match parse_table_file(&g.to_text(), "z3").unwrap() {
            TableFile::Group(h) => assert_eq!(h, g),
            TableFile::Magma(_) => panic!("expected group"),
        }
        let m = Magma::from_fn(2, |a, _| a).unwrap();
        match parse_table_file(&m.to_text(), "t2").unwrap() {
            TableFile::Magma(h) => assert_eq!(h, m),
            TableFile::Group(_) => panic!("expected magma"),
        }
    }

    #[test]
    fn parse_errors_name_line_and_token() {
        let err = parse_table_file("magma 2\n0 1\n1 x\n", "bad.magma").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                source_name: "bad.magma".into(),
                line: 3,
                token: "x".into(),
                message: "expected a non-negative integer".into()
            }
        );
        let err = parse_table_file("magma 2\n0 1\n1 2\n", "bad.magma").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, ref token, .. } if token == "2"));
        assert!(parse_table_file("magma 2\n0 1\n1 0\nidentity 0\n", "g").is_err());
        assert!(matches!(
            parse_table_file("magma 2\n0 0\n0 0\nidentity 0\ninverse 0 1\n", "g"),
            Err(Error::NotAGroup(_))
        ));
    }
}
