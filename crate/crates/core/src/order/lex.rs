use super::{verify_order, OrderRelation, Side};
use crate::error::{Error, Result};
use crate::product::ProductMagma;

/// Lexicographic order on a product: `x < y` iff at the first factor where
/// they differ, `x_i < y_i` in that factor's order.
///
/// Each factor order is verified for `side` first; the result is then an
/// order of the same side on the product.
pub fn lex_order(p: &ProductMagma, factor_orders: &[OrderRelation], side: Side) -> Result<OrderRelation> {
    if factor_orders.len() != p.factors().len() {
        return Err(Error::InvalidArgument(format!(
            "{} factor orders for {} factors",
            factor_orders.len(),
            p.factors().len()
        )));
    }
    for (index, (f, r)) in p.factors().iter().zip(factor_orders).enumerate() {
        let invalid = |reason: String| Error::InvalidFactorOrder { index, reason };
        match verify_order(f, r, side) {
            Ok(None) => {}
            Ok(Some(v)) => return Err(invalid(v.to_string())),
            Err(e) => return Err(invalid(e.to_string())),
        }
    }
    let coords: Vec<Vec<usize>> = (0..p.size()).map(|x| p.decode(x)).collect();
    Ok(OrderRelation::from_fn(p.size(), |x, y| {
        let (cx, cy) = (&coords[x], &coords[y]);
        let i = (0..cx.len()).find(|&i| cx[i] != cy[i]).expect("distinct elements differ somewhere");
        factor_orders[i].holds(cx[i], cy[i])
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::trivial_quandle;

    #[test]
    fn two_trivial_factors() {
        let t2 = trivial_quandle(2).unwrap().into_magma();
        let p = ProductMagma::new(vec![t2.clone(), t2], vec![0, 0]).unwrap();
        let up = OrderRelation::from_ranking(&[0, 1]).unwrap();
        let r = lex_order(&p, &[up.clone(), up], Side::Right).unwrap();
        assert_eq!(r.ranking(), Some(vec![0, 1, 2, 3]));
        assert_eq!(verify_order(&p.to_magma().unwrap(), &r, Side::Right).unwrap(), None);
    }

    #[test]
    fn single_factor_returns_its_order() {
        let t3 = trivial_quandle(3).unwrap().into_magma();
        let p = ProductMagma::new(vec![t3], vec![0]).unwrap();
        let r = OrderRelation::from_ranking(&[2, 0, 1]).unwrap();
        assert_eq!(lex_order(&p, std::slice::from_ref(&r), Side::Right).unwrap(), r);
    }

    #[test]
    fn invalid_factor_order_is_rejected() {
        let t2 = trivial_quandle(2).unwrap().into_magma();
        let p = ProductMagma::new(vec![t2.clone(), t2], vec![0, 0]).unwrap();
        let up = OrderRelation::from_ranking(&[0, 1]).unwrap();
        let err = lex_order(&p, &[up.clone(), up.clone()], Side::Left).unwrap_err();
        assert!(matches!(err, Error::InvalidFactorOrder { index: 0, .. }));
        assert!(lex_order(&p, &[up], Side::Right).is_err());
    }
}
