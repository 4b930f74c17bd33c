use crate::basefield::{Field, UPoly};
use crate::combinat::{binomial, falling_ratio};
use crate::error::{Error, Result};
use crate::logdiff::Case;

/// `g / gcd(g, g')`, monic.
pub fn squarefree_part<K: Field>(g: &UPoly<K>) -> Result<UPoly<K>> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if g.is_constant() {
        return Ok(UPoly::one(g.ctx()));
    }
    let dg = g.derivative();
    if dg.is_zero() {
        return Err(Error::Inseparable(K::characteristic(g.ctx())));
    }
    let h = g.gcd(&dg)?;
    Ok(g.exact_div(&h)?.monic())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DegreeBounds {
    /// Product-of-degrees bound on the eliminant degree.
    pub bezout: Option<u128>,
    /// Bound on the number of distinct solutions; `None` in positive
    /// characteristic unless the field is declared infinite and perfect.
    pub binomial: Option<u128>,
}

/// Bounds for `N_1 = n`, `N_2 = m`.
pub fn degree_bounds(case: Case, n: usize, m: usize, characteristic: u64, infinite_perfect: bool) -> DegreeBounds {
    let (n, m) = (n as u64, m as u64);
    if n < 2 || m < 1 {
        return DegreeBounds { bezout: None, binomial: None };
    }
    // Weights of the equations run from `top - (n - 2)` to `top`.
    let top = match case {
        Case::Reciprocal | Case::Nonlinear => m + n - 2,
        Case::Power { q } => q as u64 * (n - 1) + n - 2,
    };
    let bezout = falling_ratio(top, top - (n - 1));
    let binomial = if characteristic == 0 || infinite_perfect { binomial(top, n - 1) } else { None };
    DegreeBounds { bezout, binomial }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basefield::{Fp, Rat, RatFunc};

    #[test]
    fn bound_examples() {
        let b = degree_bounds(Case::Reciprocal, 3, 2, 0, false);
        assert_eq!((b.bezout, b.binomial), (Some(6), Some(3)));
        let b = degree_bounds(Case::Reciprocal, 2, 2, 0, false);
        assert_eq!((b.bezout, b.binomial), (Some(2), Some(2)));
        let b = degree_bounds(Case::Power { q: 2 }, 2, 2, 0, false);
        assert_eq!((b.bezout, b.binomial), (Some(2), Some(2)));
        let b = degree_bounds(Case::Reciprocal, 4, 4, 0, false);
        assert_eq!((b.bezout, b.binomial), (Some(120), Some(20)));
        let b = degree_bounds(Case::Reciprocal, 3, 2, 5, false);
        assert_eq!(b.binomial, None);
        assert_eq!(degree_bounds(Case::Reciprocal, 3, 2, 5, true).binomial, Some(3));
    }

    #[test]
    fn bezout_is_product_of_equation_weights() {
        for n in 2..=5usize {
            for m in 2..=5usize {
                let prod: u128 = (m..=m + n - 2).map(|w| w as u128).product();
                assert_eq!(degree_bounds(Case::Reciprocal, n, m, 0, false).bezout, Some(prod));
            }
        }
    }

    #[test]
    fn squarefree_examples() {
        type K = RatFunc<Rat>;
        let p = |c: &[i64]| UPoly::<K>::from_ints(c, &());
        // (y - 1)^2 (y + 2) = y^3 - 3y + 2
        assert_eq!(squarefree_part(&p(&[2, -3, 0, 1])).unwrap(), p(&[-2, 1, 1]));
        assert_eq!(squarefree_part(&p(&[-2, 1, 1])).unwrap(), p(&[-2, 1, 1]));
        let x = K::x(&());
        let f = UPoly::new(vec![-x, K::zero(&()), K::one(&())], ());
        assert_eq!(squarefree_part(&f).unwrap(), f);
        let g = UPoly::<RatFunc<Fp>>::new(
            vec![-RatFunc::x(&5), RatFunc::zero(&5), RatFunc::zero(&5), RatFunc::zero(&5), RatFunc::zero(&5), RatFunc::one(&5)],
            5,
        );
        assert_eq!(squarefree_part(&g), Err(Error::Inseparable(5)));
    }
}
