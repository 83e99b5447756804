use super::{enumerate, parse_pair, ConstraintSet, OrderRelation, PairState, Side};
use crate::error::{Error, Result};
use crate::magma::Magma;

pub const MAX_FAMILIES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FipReport {
    /// Every subfamily (including the empty one) has a common order.
    pub all_finite_nonempty: bool,
    /// The whole family has a common order.
    pub whole_nonempty: bool,
    pub witness: Option<OrderRelation>,
    /// Smallest subfamily (by size, then index order) with empty intersection.
    pub empty_subfamily: Option<Vec<usize>>,
}

/// Finite-intersection query over basic open sets of the order space.
///
/// Each family is a set of pairs; its members are the orders containing all
/// of them. Subfamilies are checked against the full order list, while the
/// whole intersection is computed by a separate constrained search.
pub fn fip_check(m: &Magma, side: Side, families: &[ConstraintSet], max_orders: usize) -> Result<FipReport> {
    if families.len() > MAX_FAMILIES {
        return Err(Error::BoundExceeded { size: families.len(), bound: MAX_FAMILIES });
    }
    let all = enumerate(m, side, &ConstraintSet::default(), Some(max_orders))?;
    if !all.complete {
        return Err(Error::BoundExceeded { size: max_orders + 1, bound: max_orders });
    }
    let k = families.len();
    let full = (1u32 << k) - 1;
    let masks: Vec<u32> = all
        .orders
        .iter()
        .map(|r| (0..k).filter(|&i| families[i].satisfied_by(r)).fold(0, |acc, i| acc | (1 << i)))
        .collect();

    let mut subsets: Vec<u32> = (0..=full).collect();
    subsets.sort_by_key(|s| (s.count_ones(), std::cmp::Reverse(s.reverse_bits())));
    let empty_subfamily = subsets
        .into_iter()
        .find(|&s| !masks.iter().any(|&mk| mk & s == s))
        .map(|s| (0..k).filter(|&i| s & (1 << i) != 0).collect::<Vec<_>>());

    let mut union = OrderRelation::empty(m.size());
    let mut consistent = true;
    for f in families {
        for &(a, b) in f.pairs() {
            m.check_element(a)?;
            m.check_element(b)?;
            if union.state(b, a) == PairState::Holds {
                consistent = false;
            }
            union.set(a, b, PairState::Holds);
        }
    }
    let witness = if consistent {
        let pairs = union.holding_pairs();
        enumerate(m, side, &ConstraintSet::new(pairs)?, Some(1))?.orders.into_iter().next()
    } else {
        None
    };
    Ok(FipReport {
        all_finite_nonempty: empty_subfamily.is_none(),
        whole_nonempty: witness.is_some(),
        witness,
        empty_subfamily,
    })
}

/// Parses one family per line, its pairs separated by `;`, e.g. `0 1; 1 2`.
/// `#` starts a comment.
pub fn parse_families(text: &str, source: &str) -> Result<Vec<ConstraintSet>> {
    let mut families = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let pairs = line
            .split(';')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(|p| parse_pair(p, source, i + 1))
            .collect::<Result<Vec<_>>>()?;
        families.push(ConstraintSet::new(pairs).map_err(|e| Error::parse(source, i + 1, line, e.to_string()))?);
    }
    if families.len() > MAX_FAMILIES {
        return Err(Error::BoundExceeded { size: families.len(), bound: MAX_FAMILIES });
    }
    Ok(families)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::trivial_quandle;

    fn t3() -> Magma {
        trivial_quandle(3).unwrap().into_magma()
    }

    #[test]
    fn compatible_subbasis_sets() {
        let fams = [(0, 1), (1, 2), (0, 2)].map(|(a, b)| ConstraintSet::single(a, b).unwrap());
        let r = fip_check(&t3(), Side::Right, &fams, 1000).unwrap();
        assert!(r.all_finite_nonempty && r.whole_nonempty);
        assert_eq!(r.witness.unwrap().ranking(), Some(vec![0, 1, 2]));
    }

    #[test]
    fn opposite_subbasis_sets() {
        let fams = [ConstraintSet::single(0, 1).unwrap(), ConstraintSet::single(1, 0).unwrap()];
        let r = fip_check(&t3(), Side::Right, &fams, 1000).unwrap();
        assert!(!r.all_finite_nonempty && !r.whole_nonempty);
        assert_eq!(r.empty_subfamily, Some(vec![0, 1]));
    }

    #[test]
    fn empty_family_is_the_whole_space() {
        let r = fip_check(&t3(), Side::Right, &[], 1000).unwrap();
        assert!(r.all_finite_nonempty && r.whole_nonempty);
        assert!(r.witness.is_some());
        let r = fip_check(&t3(), Side::Left, &[], 1000).unwrap();
        assert!(!r.all_finite_nonempty && !r.whole_nonempty);
        assert_eq!(r.empty_subfamily, Some(vec![]));
    }

    #[test]
    fn cyclic_triple_has_empty_whole_but_nonempty_pairs() {
        // 0<1, 1<2, 2<0: any two are compatible, all three are not
        let fams = [(0, 1), (1, 2), (2, 0)].map(|(a, b)| ConstraintSet::single(a, b).unwrap());
        let r = fip_check(&t3(), Side::Right, &fams, 1000).unwrap();
        assert!(!r.all_finite_nonempty && !r.whole_nonempty);
        assert_eq!(r.empty_subfamily, Some(vec![0, 1, 2]));
    }

    #[test]
    fn enumeration_bound() {
        assert!(matches!(fip_check(&t3(), Side::Right, &[], 3), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn families_file() {
        let fams = parse_families("# three singletons\n0 1\n1 2;\n\n0 2 ; 1 2\n", "f.fam").unwrap();
        assert_eq!(fams.len(), 3);
        assert_eq!(fams[2].pairs(), &[(0, 2), (1, 2)]);
        let err = parse_families("0 1\n0 x\n", "f.fam").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        assert!(parse_families("0 1; 1 0\n", "f.fam").is_err());
    }
}
