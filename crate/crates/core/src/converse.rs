//! From the minimal polynomial `f` of `u = y'/y` back to linear equations
//! for `y` and `1/y`.
//!
//! Everything happens in `K(u) = K[T]/(f)`. The derivatives of `y` and of
//! `1/y` are `K(u)`-multiples of the function itself, so `m + 1` of them are
//! `K`-linearly dependent and the first dependence is an operator.

use std::fmt;
use std::sync::Arc;

use crate::basefield::{DiffField, UPoly};
use crate::error::{Error, Result};
use crate::logdiff::OdeSpec;

/// `K[T]/(f)` together with the derivative of the class of `T`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgExt<K: DiffField> {
    f: UPoly<K>,
    u_prime: UPoly<K>,
}

/// An element of `K[T]/(f)`, reduced below `deg f`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgExtElement<K: DiffField> {
    rep: UPoly<K>,
    ext: Arc<AlgExt<K>>,
}

impl<K: DiffField> AlgExt<K> {
    /// Checks that `f` is monic and squarefree and solves `0 = f(u)'` for `u'`.
    pub fn new(f: UPoly<K>) -> Result<Arc<Self>> {
        if f.degree().unwrap_or(0) == 0 || !f.is_monic() {
            return Err(Error::BadModulus);
        }
        let df = f.derivative();
        if df.is_zero() || !f.gcd(&df)?.is_one() {
            return Err(Error::NotSquarefree);
        }
        // f_T(u) u' = -(sum a_i' u^i)
        let inv = invert(&df, &f)?;
        let rhs = -&f.derive_coeffs();
        let u_prime = (&rhs * &inv).div_rem(&f)?.1;
        Ok(Arc::new(AlgExt { f, u_prime }))
    }

    pub fn modulus(&self) -> &UPoly<K> {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.f.degree().unwrap()
    }

    pub fn ctx(&self) -> &K::Ctx {
        self.f.ctx()
    }
}

fn invert<K: DiffField>(a: &UPoly<K>, f: &UPoly<K>) -> Result<UPoly<K>> {
    let (g, s, _) = a.ext_gcd(f)?;
    if !g.is_one() {
        return Err(Error::NotInvertible(g.render("T")));
    }
    Ok(s.div_rem(f)?.1)
}

impl<K: DiffField> AlgExtElement<K> {
    pub fn new(rep: UPoly<K>, ext: &Arc<AlgExt<K>>) -> Self {
        let rep = rep.div_rem(&ext.f).expect("nonzero modulus").1;
        AlgExtElement { rep, ext: ext.clone() }
    }

    pub fn constant(c: K, ext: &Arc<AlgExt<K>>) -> Self {
        Self::new(UPoly::constant(c), ext)
    }

    /// The class of `T`, that is `u`.
    pub fn generator(ext: &Arc<AlgExt<K>>) -> Self {
        Self::new(UPoly::x(ext.ctx()), ext)
    }

    pub fn rep(&self) -> &UPoly<K> {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    /// Coordinates on `1, u, ..., u^{m-1}`.
    pub fn coords(&self) -> Vec<K> {
        (0..self.ext.degree()).map(|i| self.rep.coeff(i)).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        AlgExtElement { rep: &self.rep + &other.rep, ext: self.ext.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        AlgExtElement { rep: &self.rep - &other.rep, ext: self.ext.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.rep * &other.rep, &self.ext)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.rep.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(AlgExtElement { rep: invert(&self.rep, &self.ext.f)?, ext: self.ext.clone() })
    }

    /// `sum c_i' u^i + (sum i c_i u^{i-1}) u'`.
    pub fn derive(&self) -> Self {
        let along = &self.rep.derivative() * &self.ext.u_prime;
        Self::new(&self.rep.derive_coeffs() + &along, &self.ext)
    }
}

impl<K: DiffField> fmt::Display for AlgExtElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.rep.render("u"))
    }
}

/// `u'` for `u` a root of `f`.
pub fn u_derivative<K: DiffField>(f: &UPoly<K>) -> Result<AlgExtElement<K>> {
    let ext = AlgExt::new(f.clone())?;
    Ok(AlgExtElement { rep: ext.u_prime.clone(), ext })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConverseResult<K: DiffField> {
    /// Annihilates `y`.
    pub l1: OdeSpec<K>,
    /// Annihilates `1/y`.
    pub l2: OdeSpec<K>,
}

/// `(1/y)^(k) = p_k / y` with `p_{k+1} = p_k' - u p_k`.
pub fn reciprocal_annihilator<K: DiffField>(f: &UPoly<K>) -> Result<OdeSpec<K>> {
    annihilator(f, -1)
}

/// `y^(k) = q_k y` with `q_{k+1} = q_k' + u q_k`.
pub fn forward_annihilator<K: DiffField>(f: &UPoly<K>) -> Result<OdeSpec<K>> {
    annihilator(f, 1)
}

pub fn converse<K: DiffField>(f: &UPoly<K>) -> Result<ConverseResult<K>> {
    Ok(ConverseResult { l1: forward_annihilator(f)?, l2: reciprocal_annihilator(f)? })
}

fn annihilator<K: DiffField>(f: &UPoly<K>, sign: i64) -> Result<OdeSpec<K>> {
    let ext = AlgExt::new(f.clone())?;
    let ctx = ext.ctx().clone();
    let m = ext.degree();
    let su = AlgExtElement::generator(&ext).mul(&AlgExtElement::constant(K::from_i64(&ctx, sign), &ext));
    // Rows reduced so far: (pivot, row with 1 at the pivot, combination of p_0..p_k).
    let mut rows: Vec<(usize, Vec<K>, Vec<K>)> = Vec::new();
    let mut p = AlgExtElement::constant(K::one(&ctx), &ext);
    for k in 0..=m {
        let mut v = p.coords();
        let mut combo = vec![K::zero(&ctx); k + 1];
        combo[k] = K::one(&ctx);
        for (pivot, row, rc) in &rows {
            let c = v[*pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                *x = x.clone() - c.clone() * r.clone();
            }
            for (x, r) in combo.iter_mut().zip(rc) {
                *x = x.clone() - c.clone() * r.clone();
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => {
                combo.pop();
                return OdeSpec::monic(combo, &ctx);
            }
            Some(pivot) => {
                let inv = v[pivot].inv().unwrap();
                let v = v.into_iter().map(|x| x * inv.clone()).collect();
                let combo = combo.into_iter().map(|x| x * inv.clone()).collect();
                rows.push((pivot, v, combo));
            }
        }
        p = p.derive().add(&su.mul(&p));
    }
    unreachable!("m + 1 vectors in an m-dimensional space are dependent")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basefield::{Field, Fp, Rat, RatFunc};

    type K = RatFunc<Rat>;

    fn c(n: i64) -> K {
        K::from_i64(&(), n)
    }

    fn x() -> K {
        K::x(&())
    }

    fn poly(coeffs: Vec<K>) -> UPoly<K> {
        UPoly::new(coeffs, ())
    }

    #[test]
    fn u_derivative_examples() {
        let f = poly(vec![-x(), c(0), c(1)]);
        let du = u_derivative(&f).unwrap();
        assert_eq!(du.rep(), &poly(vec![c(0), c(1) / (c(2) * x())]));
        assert_eq!(du.to_string(), "(1/(2*x))*u");
        let f = poly(vec![-(x() * x()), c(1)]);
        assert_eq!(u_derivative(&f).unwrap().rep(), &poly(vec![c(2) * x()]));
        let f = poly(vec![c(-3), c(0), c(1)]);
        assert!(u_derivative(&f).unwrap().is_zero());
    }

    #[test]
    fn bad_inputs() {
        let f = poly(vec![c(1), c(-2), c(1)]);
        assert_eq!(u_derivative(&f).unwrap_err(), Error::NotSquarefree);
        assert_eq!(u_derivative(&poly(vec![c(2), c(2)])).unwrap_err(), Error::BadModulus);
        assert_eq!(u_derivative(&poly(vec![c(2)])).unwrap_err(), Error::BadModulus);
    }

    #[test]
    fn sqrt_x_pair() {
        let f = poly(vec![-x(), c(0), c(1)]);
        let expected = OdeSpec::monic(vec![-x(), -(c(1) / (c(2) * x()))], &()).unwrap();
        let r = converse(&f).unwrap();
        assert_eq!(r.l1, expected);
        assert_eq!(r.l2, expected);
        assert_eq!(r.l2.render(), "D^2 - (1/(2*x))*D - x");
    }

    #[test]
    fn linear_and_constant_roots() {
        let f = poly(vec![c(-5), c(1)]);
        assert_eq!(forward_annihilator(&f).unwrap().lower_coeffs(), &[c(-5)]);
        assert_eq!(reciprocal_annihilator(&f).unwrap().lower_coeffs(), &[c(5)]);
        let f = poly(vec![-(x() * x()), c(1)]);
        assert_eq!(forward_annihilator(&f).unwrap().lower_coeffs(), &[-(x() * x())]);
        let f = poly(vec![c(-1), c(0), c(1)]);
        let minus_one = OdeSpec::monic(vec![c(-1), c(0)], &()).unwrap();
        assert_eq!(forward_annihilator(&f).unwrap(), minus_one);
        assert_eq!(reciprocal_annihilator(&f).unwrap(), minus_one);
    }

    #[test]
    fn order_never_exceeds_degree() {
        // u^3 - x u - 1
        let f = poly(vec![c(-1), -x(), c(0), c(1)]);
        let r = converse(&f).unwrap();
        assert!(r.l1.order() <= 3 && r.l2.order() <= 3);
        assert_eq!(r.l1.order(), 3);
    }

    #[test]
    fn arithmetic_in_the_extension() {
        let f = poly(vec![-x(), c(0), c(1)]);
        let ext = AlgExt::new(f).unwrap();
        let u = AlgExtElement::generator(&ext);
        assert_eq!(u.mul(&u), AlgExtElement::constant(x(), &ext));
        let w = u.add(&AlgExtElement::constant(c(1), &ext));
        assert!(w.mul(&w.inv().unwrap()).sub(&AlgExtElement::constant(c(1), &ext)).is_zero());
        // (u^2)' = 2 u u' = 1
        assert_eq!(u.mul(&u).derive(), AlgExtElement::constant(c(1), &ext));
        assert_eq!(u.coords(), vec![c(0), c(1)]);
    }

    #[test]
    fn positive_characteristic() {
        type P = RatFunc<Fp>;
        let f = UPoly::new(vec![-P::x(&7), P::zero(&7), P::one(&7)], 7);
        let r = converse(&f).unwrap();
        assert_eq!(r.l1, r.l2);
        assert_eq!(r.l1.order(), 2);
        // T^5 - x over GF(5)(x) has vanishing T-derivative
        let mut coeffs = vec![P::zero(&5); 6];
        coeffs[0] = -P::x(&5);
        coeffs[5] = P::one(&5);
        assert_eq!(converse(&UPoly::new(coeffs, 5)).unwrap_err(), Error::NotSquarefree);
    }
}
