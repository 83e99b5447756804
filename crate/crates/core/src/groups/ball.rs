use indexmap::IndexMap;

use super::GroupOracle;
use crate::error::{Error, Result};

pub const DEFAULT_BALL_BUDGET: usize = 50_000;

/// Elements of word length at most `radius`, in breadth-first discovery order.
///
/// Expansion right-multiplies by the generators and then their inverses, each
/// in generator order, so the order of elements is canonical.
#[derive(Clone, Debug)]
pub struct Ball<E> {
    radius: usize,
    index: IndexMap<E, usize>,
}

impl<E: Clone + Eq + std::hash::Hash> Ball<E> {
    pub fn new<G: GroupOracle<Elem = E>>(group: &G, radius: usize) -> Result<Self> {
        Self::with_budget(group, radius, DEFAULT_BALL_BUDGET)
    }

    pub fn with_budget<G: GroupOracle<Elem = E>>(group: &G, radius: usize, budget: usize) -> Result<Self> {
        let gens: Vec<E> = group.generators().into_iter().map(|(_, g)| g).collect();
        let steps: Vec<E> = gens.iter().cloned().chain(gens.iter().map(|g| group.inv(g))).collect();
        let mut index = IndexMap::new();
        index.insert(group.identity(), 0);
        let mut layer_start = 0;
        for length in 1..=radius {
            let layer_end = index.len();
            for i in layer_start..layer_end {
                let (g, _) = index.get_index(i).expect("in range");
                let g = g.clone();
                for s in &steps {
                    let h = group.mul(&g, s);
                    if !index.contains_key(&h) {
                        if index.len() >= budget {
                            return Err(Error::BudgetExceeded(format!(
                                "ball of radius {radius} in {} has more than {budget} elements",
                                group.name()
                            )));
                        }
                        index.insert(h, length);
                    }
                }
            }
            if index.len() == layer_end {
                break;
            }
            layer_start = layer_end;
        }
        Ok(Ball { radius, index })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn get(&self, i: usize) -> &E {
        self.index.get_index(i).expect("ball index in range").0
    }

    pub fn position(&self, g: &E) -> Option<usize> {
        self.index.get_index_of(g)
    }

    pub fn contains(&self, g: &E) -> bool {
        self.index.contains_key(g)
    }

    /// Word length of a member.
    pub fn length(&self, g: &E) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &E> {
        self.index.keys()
    }

    pub fn elements(&self) -> Vec<E> {
        self.index.keys().cloned().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{AnyGroup, Cyclic, FreeAbelian, Klein};

    #[test]
    fn small_balls() {
        let z2 = FreeAbelian::new(2).unwrap();
        assert_eq!(Ball::new(&z2, 1).unwrap().len(), 5);
        assert_eq!(Ball::new(&Klein, 1).unwrap().len(), 5);
        let r0 = Ball::new(&Klein, 0).unwrap();
        assert_eq!(r0.elements(), vec![(0, 0)]);
        let c3 = Cyclic::new(3).unwrap();
        assert_eq!(Ball::new(&c3, 10).unwrap().len(), 3);
    }

    #[test]
    fn discovery_order_and_lengths() {
        let b = Ball::new(&Klein, 2).unwrap();
        assert_eq!(&b.elements()[..5], &[(0, 0), (1, 0), (0, 1), (-1, 0), (0, -1)]);
        assert_eq!(b.length(&(1, 1)), Some(2));
        assert_eq!(b.length(&(3, 0)), None);
    }

    #[test]
    fn budget_is_enforced() {
        let g: AnyGroup = "free:2".parse().unwrap();
        assert!(matches!(Ball::with_budget(&g, 5, 100), Err(Error::BudgetExceeded(_))));
    }
}
