//! Finite direct products of magmas with chosen basepoints.
//!
//! For finitely many factors the direct sum generated around the basepoints
//! coincides with the full direct product, so the basepoints are carried only
//! to build the pair embeddings used by lexicographic orders.

use crate::error::{Error, Result};
use crate::magma::Magma;

pub const DEFAULT_PRODUCT_CAP: usize = 1_000_000;
/// Largest product whose full operation table is materialized.
pub const TABLE_BOUND: usize = 4096;

#[derive(Clone, Debug)]
pub struct ProductMagma {
    factors: Vec<Magma>,
    basepoints: Vec<usize>,
    /// Mixed-radix strides; factor 0 is the most significant digit.
    strides: Vec<usize>,
    size: usize,
}

impl ProductMagma {
    pub fn new(factors: Vec<Magma>, basepoints: Vec<usize>) -> Result<Self> {
        Self::with_cap(factors, basepoints, DEFAULT_PRODUCT_CAP)
    }

    pub fn with_cap(factors: Vec<Magma>, basepoints: Vec<usize>, cap: usize) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument("product needs at least one factor".into()));
        }
        if factors.len() != basepoints.len() {
            return Err(Error::InvalidArgument(format!(
                "{} factors but {} basepoints",
                factors.len(),
                basepoints.len()
            )));
        }
        for (f, &b) in factors.iter().zip(&basepoints) {
            f.check_element(b)?;
        }
        let size = factors
            .iter()
            .try_fold(1usize, |acc, f| acc.checked_mul(f.size()).filter(|&s| s <= cap))
            .ok_or(Error::SizeOverflow { factors: factors.len(), cap })?;
        let mut strides = vec![1; factors.len()];
        for i in (0..factors.len() - 1).rev() {
            strides[i] = strides[i + 1] * factors[i + 1].size();
        }
        Ok(ProductMagma { factors, basepoints, strides, size })
    }

    /// Componentwise product, computed from the factors.
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.factors.iter().zip(&self.strides).map(|(f, &s)| f.op((x / s) % f.size(), (y / s) % f.size()) * s).sum()
    }

    /// Full operation table; only for products of at most [`TABLE_BOUND`] elements.
    pub fn to_magma(&self) -> Result<Magma> {
        if self.size > TABLE_BOUND {
            return Err(Error::BoundExceeded { size: self.size, bound: TABLE_BOUND });
        }
        Magma::from_fn(self.size, |x, y| self.op(x, y))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn factors(&self) -> &[Magma] {
        &self.factors
    }

    pub fn basepoints(&self) -> &[usize] {
        &self.basepoints
    }

    pub fn basepoint_element(&self) -> usize {
        self.encode(&self.basepoints)
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.strides).map(|(c, s)| c * s).sum()
    }

    pub fn decode(&self, x: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        decode_into(&self.factors, &self.strides, x, &mut out);
        out
    }

    pub fn project(&self, x: usize, factor: usize) -> usize {
        (x / self.strides[factor]) % self.factors[factor].size()
    }

    /// Embeds a factor element `a` at position `factor`, basepoints elsewhere.
    pub fn embed(&self, factor: usize, a: usize) -> usize {
        let mut coords = self.basepoints.clone();
        coords[factor] = a;
        self.encode(&coords)
    }
}

fn decode_into(factors: &[Magma], strides: &[usize], x: usize, out: &mut [usize]) {
    for (i, f) in factors.iter().enumerate() {
        out[i] = (x / strides[i]) % f.size();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magma::FiniteGroup;
    use crate::quandle::{check_quandle, kei_quandle, trivial_quandle};

    #[test]
    fn two_trivial_quandles() {
        let t2 = trivial_quandle(2).unwrap().into_magma();
        let p = ProductMagma::new(vec![t2.clone(), t2], vec![0, 0]).unwrap();
        assert_eq!(p.size(), 4);
        assert_eq!(p.decode(2), vec![1, 0]);
        assert!(check_quandle(&p.to_magma().unwrap()).is_quandle());
        assert_eq!(p.op(1, 2), 1);
    }

    #[test]
    fn single_factor_is_a_copy() {
        let k = kei_quandle(&FiniteGroup::cyclic(3)).unwrap().into_magma();
        let p = ProductMagma::new(vec![k.clone()], vec![1]).unwrap();
        assert_eq!(p.to_magma().unwrap(), k);
        assert_eq!(p.basepoint_element(), 1);
    }

    #[test]
    fn mixed_product_is_a_quandle_and_projects() {
        let t2 = trivial_quandle(2).unwrap().into_magma();
        let k = kei_quandle(&FiniteGroup::cyclic(3)).unwrap().into_magma();
        let p = ProductMagma::new(vec![t2, k], vec![0, 2]).unwrap();
        assert_eq!(p.size(), 6);
        assert!(check_quandle(&p.to_magma().unwrap()).is_quandle());
        let base = p.basepoint_element();
        assert_eq!(p.op(base, base), base);
        for x in 0..6 {
            for y in 0..6 {
                let xy = p.op(x, y);
                for f in 0..2 {
                    assert_eq!(p.project(xy, f), p.factors()[f].op(p.project(x, f), p.project(y, f)));
                }
            }
        }
        assert_eq!(p.embed(1, 0), p.encode(&[0, 0]));
    }

    #[test]
    fn cap_is_enforced() {
        let t = trivial_quandle(10).unwrap().into_magma();
        let err = ProductMagma::with_cap(vec![t.clone(), t.clone(), t.clone()], vec![0; 3], 999).unwrap_err();
        assert_eq!(err, Error::SizeOverflow { factors: 3, cap: 999 });
        assert!(ProductMagma::new(vec![], vec![]).is_err());
        let big = ProductMagma::new(vec![t.clone(), t.clone(), t.clone(), t.clone()], vec![0; 4]).unwrap();
        assert_eq!(big.size(), 10_000);
        assert_eq!(big.op(1234, 9876), 1234);
        assert!(matches!(big.to_magma(), Err(Error::BoundExceeded { .. })));
        let t2 = trivial_quandle(2).unwrap().into_magma();
        assert!(ProductMagma::new(vec![t2], vec![2]).is_err());
    }
}
