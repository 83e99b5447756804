//! Exhaustive families of small magmas, quandles and groups.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::magma::{FiniteGroup, Magma};

/// Every operation table on `n` elements (`n^(n²)` of them), in
/// lexicographic order of the row-major table.
pub fn all_magmas(n: usize) -> impl Iterator<Item = Magma> {
    let cells = n * n;
    let total = (n as u64).pow(cells as u32);
    (0..total).map(move |mut code| {
        let mut table = vec![0; cells];
        for cell in table.iter_mut().rev() {
            *cell = (code % n as u64) as usize;
            code /= n as u64;
        }
        Magma::new(n, table).expect("digits are in range")
    })
}

/// Every quandle table on `0..n` (labelled, not up to isomorphism).
///
/// Columns `∗_b` are chosen one at a time as permutations fixing `b`;
/// self-distributivity is checked as soon as all columns it mentions exist.
pub fn all_quandles(n: usize) -> Vec<Magma> {
    let perms: Vec<Vec<Vec<usize>>> = (0..n).map(|b| (0..n).permutations(n).filter(|p| p[b] == b).collect()).collect();
    let mut columns: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut out = Vec::new();
    search_columns(n, &perms, &mut columns, &mut out);
    out
}

fn search_columns(n: usize, perms: &[Vec<Vec<usize>>], columns: &mut Vec<Vec<usize>>, out: &mut Vec<Magma>) {
    let k = columns.len();
    if k == n {
        out.push(Magma::from_fn(n, |a, b| columns[b][a]).expect("valid columns"));
        return;
    }
    for p in &perms[k] {
        columns.push(p.clone());
        if distributive_so_far(n, columns) {
            search_columns(n, perms, columns, out);
        }
        columns.pop();
    }
}

/// `(a∗b)∗c = (a∗c)∗(b∗c)` for every triple whose columns are known, where
/// the newest column appears among `b`, `c` or `b∗c`.
fn distributive_so_far(n: usize, columns: &[Vec<usize>]) -> bool {
    let k = columns.len();
    let last = k - 1;
    let op = |a: usize, b: usize| columns[b][a];
    for b in 0..k {
        for c in 0..k {
            let bc = op(b, c);
            if bc >= k || (b != last && c != last && bc != last) {
                continue;
            }
            if (0..n).any(|a| op(op(a, b), c) != op(op(a, c), bc)) {
                return false;
            }
        }
    }
    true
}

/// Canonical relabelling: the lexicographically smallest table over all
/// permutations of the carrier.
pub fn canonical_form(m: &Magma) -> Vec<usize> {
    let n = m.size();
    (0..n)
        .permutations(n)
        .map(|p| {
            let mut inv = vec![0; n];
            for (i, &x) in p.iter().enumerate() {
                inv[x] = i;
            }
            (0..n * n).map(|i| p[m.op(inv[i / n], inv[i % n])]).collect::<Vec<_>>()
        })
        .min()
        .unwrap_or_default()
}

/// One representative per isomorphism class, the first met in input order.
pub fn isomorphism_representatives(magmas: impl IntoIterator<Item = Magma>) -> Vec<Magma> {
    let mut seen = BTreeSet::new();
    magmas.into_iter().filter(|m| seen.insert(canonical_form(m))).collect()
}

/// Groups of order at most 8 covering every isomorphism type.
pub fn small_groups() -> Vec<(&'static str, FiniteGroup)> {
    let c = FiniteGroup::cyclic;
    vec![
        ("C1", c(1)),
        ("C2", c(2)),
        ("C3", c(3)),
        ("C4", c(4)),
        ("C2xC2", c(2).direct_product(&c(2))),
        ("C5", c(5)),
        ("C6", c(6)),
        ("S3", FiniteGroup::symmetric(3)),
        ("C7", c(7)),
        ("C8", c(8)),
        ("C2xC4", c(2).direct_product(&c(4))),
        ("C2xC2xC2", c(2).direct_product(&c(2)).direct_product(&c(2))),
        ("D4", FiniteGroup::dihedral(4)),
        ("Q8", FiniteGroup::quaternion()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::check_quandle;

    #[test]
    fn magma_counts() {
        assert_eq!(all_magmas(1).count(), 1);
        assert_eq!(all_magmas(2).count(), 16);
        assert_eq!(all_magmas(3).count(), 19683);
    }

    #[test]
    fn quandle_enumeration_matches_filter() {
        for n in 1..=3 {
            let filtered: BTreeSet<Vec<usize>> =
                all_magmas(n).filter(|m| check_quandle(m).is_quandle()).map(|m| m.table().to_vec()).collect();
            let searched: BTreeSet<Vec<usize>> = all_quandles(n).iter().map(|m| m.table().to_vec()).collect();
            assert_eq!(searched.len(), all_quandles(n).len());
            assert_eq!(searched, filtered, "n = {n}");
        }
    }

    #[test]
    fn quandle_isomorphism_class_counts() {
        // known numbers of quandles up to isomorphism for orders 1..=5
        let expected = [1, 1, 3, 7, 22];
        for (n, &want) in (1..=5).zip(&expected) {
            assert_eq!(isomorphism_representatives(all_quandles(n)).len(), want, "order {n}");
        }
    }

    #[test]
    fn group_corpus_validates() {
        for (name, g) in small_groups() {
            FiniteGroup::new(g.magma().clone(), g.identity(), g.inverses().to_vec())
                .unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }
}
