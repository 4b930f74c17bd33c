//! The rational function field k(x) with d/dx.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::field::{DiffField, Field};
use super::upoly::{euclid_gcd, wrap_sum, UPoly};
use crate::error::{Error, Result};

/// Reduced fraction `num / den` of polynomials over `F`. The denominator is
/// monic and coprime to the numerator; zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc<F: Field> {
    num: UPoly<F>,
    den: UPoly<F>,
}

impl<F: Field> RatFunc<F> {
    /// Canonical form of `num / den`.
    pub fn new(num: UPoly<F>, den: UPoly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: UPoly<F>, den: UPoly<F>) -> Self {
        let ctx = den.ctx().clone();
        if num.is_zero() {
            return RatFunc { num, den: UPoly::one(&ctx) };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den).expect("nonzero");
            if g.is_one() {
                (num, den)
            } else {
                (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
            }
        };
        let lc = den.leading().unwrap().clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.inv().unwrap();
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn from_poly(num: UPoly<F>) -> Self {
        let den = UPoly::one(num.ctx());
        RatFunc { num, den }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(UPoly::constant(c))
    }

    /// The generator `x` of the field.
    pub fn x(ctx: &F::Ctx) -> Self {
        Self::from_poly(UPoly::x(ctx))
    }

    pub fn num(&self) -> &UPoly<F> {
        &self.num
    }

    pub fn den(&self) -> &UPoly<F> {
        &self.den
    }

    /// `Some(c)` when the element lies in the constant subfield.
    pub fn as_constant(&self) -> Option<F> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Value at a point, or `None` at a pole.
    pub fn eval(&self, at: &F) -> Option<F> {
        let d = self.den.eval(at);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(at) / d)
        }
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        if self.num.is_zero() {
            return rhs.clone();
        }
        if rhs.num.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return Self::from_poly(&self.num + &rhs.num);
            }
            return Self::normalize(&self.num + &rhs.num, self.den.clone());
        }
        if self.den.is_one() {
            // den(rhs) is already coprime to num(rhs) and so to the sum's
            // numerator; nothing cancels.
            let num = &(&self.num * &rhs.den) + &rhs.num;
            return RatFunc { num, den: rhs.den.clone() };
        }
        if rhs.den.is_one() {
            let num = &self.num + &(&rhs.num * &self.den);
            return RatFunc { num, den: self.den.clone() };
        }
        let g = self.den.gcd(&rhs.den).unwrap();
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RatFunc { num, den: &self.den * &rhs.den };
        }
        let b1 = self.den.exact_div(&g).unwrap();
        let d1 = rhs.den.exact_div(&g).unwrap();
        let num = &(&self.num * &d1) + &(&rhs.num * &b1);
        let den = &b1 * &rhs.den;
        if num.is_zero() {
            return Self::from_poly(num);
        }
        let g2 = num.gcd(&g).unwrap();
        if g2.is_one() {
            RatFunc { num, den }
        } else {
            RatFunc { num: num.exact_div(&g2).unwrap(), den: den.exact_div(&g2).unwrap() }
        }
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.num.is_zero() || rhs.num.is_zero() {
            return Self::from_poly(UPoly::zero(self.num.ctx()));
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(&self.num * &rhs.num);
        }
        let cancel = |n: &UPoly<F>, d: &UPoly<F>| -> (UPoly<F>, UPoly<F>) {
            if d.is_one() || n.is_constant() {
                return (n.clone(), d.clone());
            }
            let g = n.gcd(d).unwrap();
            if g.is_one() {
                (n.clone(), d.clone())
            } else {
                (n.exact_div(&g).unwrap(), d.exact_div(&g).unwrap())
            }
        };
        let (a, d) = cancel(&self.num, &rhs.den);
        let (c, b) = cancel(&rhs.num, &self.den);
        // b and d are monic, so the product is too.
        RatFunc { num: &a * &c, den: &b * &d }
    }
}

impl<F: Field> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return f.write_str(&self.num.to_string());
        }
        let ctx = self.num.ctx();
        let mut all: Vec<F> = self.num.coeffs().to_vec();
        all.extend_from_slice(self.den.coeffs());
        let s = F::integral_scale(&all, ctx);
        let num = self.num.scale(&s).to_string();
        let den = self.den.scale(&s).to_string();
        let den_atomic = !den.contains([' ', '*', '/', '-']);
        let den = if den_atomic { den } else { format!("({den})") };
        write!(f, "{}/{}", wrap_sum(&num), den)
    }
}

impl<F: Field> Add for RatFunc<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl<F: Field> Sub for RatFunc<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.add_ref(&-rhs)
    }
}

impl<F: Field> Neg for RatFunc<F> {
    type Output = Self;
    fn neg(self) -> Self {
        RatFunc { num: -self.num, den: self.den }
    }
}

impl<F: Field> Mul for RatFunc<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<F: Field> Div for RatFunc<F> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self.mul_ref(&rhs.inv().expect("division by zero rational function"))
    }
}

impl<F: Field> Field for RatFunc<F> {
    type Ctx = F::Ctx;

    fn ctx(&self) -> F::Ctx {
        self.num.ctx().clone()
    }

    fn zero(ctx: &F::Ctx) -> Self {
        Self::from_poly(UPoly::zero(ctx))
    }

    fn one(ctx: &F::Ctx) -> Self {
        Self::from_poly(UPoly::one(ctx))
    }

    fn from_bigint(ctx: &F::Ctx, n: &BigInt) -> Self {
        Self::constant(F::from_bigint(ctx, n))
    }

    fn from_i64(ctx: &F::Ctx, n: i64) -> Self {
        Self::constant(F::from_i64(ctx, n))
    }

    fn characteristic(ctx: &F::Ctx) -> u64 {
        F::characteristic(ctx)
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Some(Self::normalize(self.den.clone(), self.num.clone()))
    }

    fn is_negative(&self) -> bool {
        self.num.leading().is_some_and(|c| c.is_negative())
    }

    /// Euclid over `F(x)`, preceded by a cheap coprimality test: if the
    /// images at some `x = t` that keeps both degrees are coprime, so are
    /// the inputs (their resultant specializes to a nonzero value).
    fn poly_gcd(a: &[Self], b: &[Self], ctx: &F::Ctx) -> Vec<Self> {
        if coprime_by_evaluation(a, b, ctx) {
            return vec![Self::one(ctx)];
        }
        euclid_gcd(a, b, ctx)
    }

    fn certainly_coprime(a: &[Self], b: &[Self], ctx: &F::Ctx) -> bool {
        coprime_by_evaluation(a, b, ctx)
    }

    /// `det(X*I - A)` by evaluating `x` at sample points.
    ///
    /// Evaluates at integer points and interpolates. Scaling each row (or
    /// column) by the lcm of its denominators bounds the coefficients: each
    /// is `P / S` with `S` the product of the scales and `deg P <= bound`.
    fn charpoly(a: &[Vec<Self>], ctx: &F::Ctx) -> Vec<Self> {
        let n = a.len();
        let transposed: Vec<Vec<Self>> = (0..n).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect();
        let (rows, cols) = (degree_scale(a, ctx), degree_scale(&transposed, ctx));
        let (bound, scales) = if rows.0 <= cols.0 { rows } else { cols };
        let basis = coprime_basis(&scales);
        let factors: Vec<(UPoly<F>, usize)> = basis
            .into_iter()
            .map(|q| {
                let mut e = 0;
                for d in &scales {
                    let mut d = d.clone();
                    while let Ok((quo, rem)) = d.div_rem(&q) {
                        if !rem.is_zero() || d.is_constant() {
                            break;
                        }
                        d = quo;
                        e += 1;
                    }
                }
                (q, e)
            })
            .collect();
        let scale = scales.iter().fold(UPoly::one(ctx), |acc, d| &acc * d);
        // A window of consecutive points avoiding the roots of `scale`.
        let p = F::characteristic(ctx);
        let mut start: i64 = 0;
        loop {
            if p > 0 && (start + bound as i64) as u64 >= p {
                return super::linalg::charpoly_hessenberg(a, ctx);
            }
            match (start..=start + bound as i64).find(|&t| scale.eval(&F::from_i64(ctx, t)).is_zero()) {
                Some(t) => start = t + 1,
                None => break,
            }
        }
        let mut values: Vec<Vec<F>> = vec![Vec::with_capacity(bound + 1); n];
        for t in start..=start + bound as i64 {
            let at = F::from_i64(ctx, t);
            let image: Vec<Vec<F>> =
                a.iter().map(|row| row.iter().map(|c| c.eval(&at).expect("no pole")).collect()).collect();
            let s = scale.eval(&at);
            for (k, c) in F::charpoly(&image, ctx).into_iter().take(n).enumerate() {
                values[k].push(c * s.clone());
            }
        }
        let mut out: Vec<Self> = Vec::with_capacity(n + 1);
        for ys in &values {
            let num = UPoly::new(F::interpolate_consecutive(start, ys, ctx), ctx.clone());
            out.push(cancel(num, &factors, ctx));
        }
        out.push(Self::one(ctx));
        out
    }
}

/// `(bound, scales)`: `scales[i]` is the lcm of the denominators in row
/// `i`, `bound` the sum over rows of the degree of the scaled row.
fn degree_scale<F: Field>(a: &[Vec<RatFunc<F>>], ctx: &F::Ctx) -> (usize, Vec<UPoly<F>>) {
    let mut scales = Vec::with_capacity(a.len());
    let mut bound = 0usize;
    for row in a {
        let mut d = UPoly::one(ctx);
        for c in row {
            if !c.den.is_one() {
                let g = d.gcd(&c.den).expect("nonzero");
                d = &d * &c.den.exact_div(&g).expect("divisor");
            }
        }
        let dd = d.degree().unwrap_or(0);
        bound += row
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| c.num.degree().unwrap_or(0) + dd - c.den.degree().unwrap_or(0))
            .fold(dd, usize::max);
        scales.push(d);
    }
    (bound, scales)
}

/// Pairwise coprime monic polynomials whose products give each input.
fn coprime_basis<F: Field>(polys: &[UPoly<F>]) -> Vec<UPoly<F>> {
    let mut basis: Vec<UPoly<F>> = Vec::new();
    let mut work: Vec<UPoly<F>> = polys.iter().filter(|p| !p.is_constant()).map(|p| p.monic()).collect();
    while let Some(f) = work.pop() {
        if f.is_constant() || basis.contains(&f) {
            continue;
        }
        let hit = basis.iter().enumerate().find_map(|(i, b)| {
            let g = f.gcd(b).expect("nonzero");
            (!g.is_constant()).then_some((i, g))
        });
        match hit {
            None => basis.push(f),
            Some((i, g)) => {
                let b = basis.swap_remove(i);
                work.push(b.exact_div(&g).unwrap().monic());
                work.push(f.exact_div(&g).unwrap().monic());
                work.push(g.monic());
            }
        }
    }
    basis
}

/// `num / prod(factors)` in lowest terms, where the factors are small and
/// `num` may be large.
fn cancel<F: Field>(mut num: UPoly<F>, factors: &[(UPoly<F>, usize)], ctx: &F::Ctx) -> RatFunc<F> {
    if num.is_zero() {
        return RatFunc::zero(ctx);
    }
    let mut den = UPoly::one(ctx);
    for (q, e) in factors {
        for copy in 0..*e {
            let (quo, rem) = num.div_rem(q).expect("nonzero");
            let h = if rem.is_zero() { q.clone() } else { q.gcd(&rem).expect("nonzero") };
            if h.is_constant() {
                // coprime to every remaining copy
                den = &den * &q.pow((e - copy) as u32);
                break;
            }
            if rem.is_zero() {
                num = quo;
            } else {
                num = num.exact_div(&h).unwrap();
                den = &den * &q.exact_div(&h).unwrap().monic();
            }
        }
    }
    RatFunc { num, den }
}

fn coprime_by_evaluation<F: Field>(a: &[RatFunc<F>], b: &[RatFunc<F>], ctx: &F::Ctx) -> bool {
    let trim = |v: &[RatFunc<F>]| {
        let mut n = v.len();
        while n > 0 && v[n - 1].is_zero() {
            n -= 1;
        }
        n
    };
    let (la, lb) = (trim(a), trim(b));
    if la == 0 || lb == 0 {
        return false;
    }
    let mut tried = 0;
    for t in 2i64..40 {
        let at = F::from_i64(ctx, 3 * t - 1);
        let image = |v: &[RatFunc<F>]| v.iter().map(|c| c.eval(&at)).collect::<Option<Vec<F>>>();
        let (Some(ia), Some(ib)) = (image(&a[..la]), image(&b[..lb])) else { continue };
        if ia[la - 1].is_zero() || ib[lb - 1].is_zero() {
            continue;
        }
        if F::poly_gcd(&ia, &ib, ctx).len() == 1 {
            return true;
        }
        tried += 1;
        if tried == 3 {
            break;
        }
    }
    false
}

impl<F: Field> DiffField for RatFunc<F> {
    /// Quotient rule, with the derivative of `x` equal to 1.
    fn derive(&self) -> Self {
        if self.den.is_one() {
            return Self::from_poly(self.num.derivative());
        }
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::normalize(num, &self.den * &self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basefield::{rat, Fp, Rat};
    use proptest::prelude::*;

    type Q = RatFunc<Rat>;

    fn p(ints: &[i64]) -> UPoly<Rat> {
        UPoly::from_ints(ints, &())
    }

    fn rf(n: &[i64], d: &[i64]) -> Q {
        Q::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn normalize_examples() {
        // 2x / 4x^2 -> 1 / 2x, stored as (1/2) / x with a monic denominator
        let r = rf(&[0, 2], &[0, 0, 4]);
        assert_eq!(r.num(), &UPoly::constant(rat(1, 2)));
        assert_eq!(r.den(), &p(&[0, 1]));
        assert_eq!(r.to_string(), "1/(2*x)");
        // (x^2 - 1) / (x - 1) -> x + 1
        let r = rf(&[-1, 0, 1], &[-1, 1]);
        assert_eq!(r, Q::from_poly(p(&[1, 1])));
        // 0 / (5x + 3) -> 0 / 1
        let r = rf(&[], &[3, 5]);
        assert!(r.is_zero());
        assert!(r.den().is_one());
        assert_eq!(Q::new(p(&[1]), p(&[])), Err(Error::ZeroDenominator));
    }

    #[test]
    fn derive_examples() {
        assert_eq!(rf(&[0, 0, 1], &[1]).derive(), rf(&[0, 2], &[1]));
        assert_eq!(rf(&[1], &[0, 1]).derive(), rf(&[-1], &[0, 0, 1]));
        let five = 5u64;
        let x5 = RatFunc::<Fp>::from_poly(UPoly::monomial(Fp::one(&five), 5));
        assert!(x5.derive().is_zero());
    }

    #[test]
    fn display_forms() {
        assert_eq!(rf(&[3, 0, 0, -2], &[0, 2]).to_string(), "(-2*x^3 + 3)/(2*x)");
        assert_eq!(rf(&[1], &[1, 0, 1]).to_string(), "1/(x^2 + 1)");
        assert_eq!(rf(&[1], &[0, 0, 1]).to_string(), "1/x^2");
        assert_eq!(rf(&[-1, 2], &[1]).to_string(), "2*x - 1");
    }

    #[test]
    fn coprime_basis_splits_shared_factors() {
        // x(x+1), (x+1)^2 (x+2), x^3
        let polys = vec![p(&[0, 1, 1]), p(&[2, 5, 4, 1]), p(&[0, 0, 0, 1])];
        let mut basis = coprime_basis(&polys);
        basis.sort_by_key(|b| b.to_string());
        assert_eq!(basis, vec![p(&[0, 1]), p(&[1, 1]), p(&[2, 1])]);
        let r = cancel(p(&[0, 0, 3, 3]), &[(p(&[0, 1]), 3), (p(&[1, 1]), 1)], &());
        assert_eq!(r, rf(&[3], &[0, 1]));
        let r = cancel(p(&[0, 1, 1]), &[(p(&[0, 0, 1]), 1)], &());
        assert_eq!(r, rf(&[1, 1], &[0, 1]));
    }

    #[test]
    fn small_characteristic_falls_back() {
        let k = |n: &[i64], d: &[i64]| RatFunc::<Fp>::new(UPoly::from_ints(n, &3), UPoly::from_ints(d, &3)).unwrap();
        let a = vec![vec![k(&[0, 1], &[1]), k(&[1], &[1, 1])], vec![k(&[2], &[0, 1]), k(&[1, 0, 1], &[1])]];
        assert_eq!(RatFunc::charpoly(&a, &3), crate::basefield::linalg::charpoly_hessenberg(&a, &3));
    }

    fn arb_poly() -> impl Strategy<Value = UPoly<Rat>> {
        prop::collection::vec(-4i64..=4, 0..4).prop_map(|v| p(&v))
    }

    fn arb_rf() -> impl Strategy<Value = Q> {
        (arb_poly(), arb_poly()).prop_map(|(n, d)| {
            if d.is_zero() {
                Q::from_poly(n)
            } else {
                Q::new(n, d).unwrap()
            }
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(a in arb_rf(), b in arb_rf(), c in arb_rf()) {
            prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
            prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
            if !a.is_zero() {
                prop_assert!((a.clone() * a.inv().unwrap()).is_one());
            }
            if !b.is_zero() {
                prop_assert_eq!((a.clone() / b.clone()) * b.clone(), a.clone());
            }
        }

        #[test]
        fn derivation_axioms(a in arb_rf(), b in arb_rf(), k in -5i64..5) {
            prop_assert_eq!((a.clone() * b.clone()).derive(), a.derive() * b.clone() + a.clone() * b.derive());
            prop_assert_eq!((a.clone() + b.clone()).derive(), a.derive() + b.derive());
            prop_assert!(Q::from_i64(&(), k).derive().is_zero());
        }

        #[test]
        fn charpoly_by_evaluation_is_exact(entries in prop::collection::vec(arb_rf(), 9)) {
            let a: Vec<Vec<Q>> = entries.chunks(3).map(|r| r.to_vec()).collect();
            prop_assert_eq!(Q::charpoly(&a, &()), crate::basefield::linalg::charpoly_hessenberg(&a, &()));
            let b: Vec<Vec<Q>> = entries.chunks(3).take(2).map(|r| r[..2].to_vec()).collect();
            prop_assert_eq!(Q::charpoly(&b, &()), crate::basefield::linalg::charpoly_hessenberg(&b, &()));
        }

        #[test]
        fn normalization_is_idempotent(a in arb_rf()) {
            let again = Q::new(a.num().clone(), a.den().clone()).unwrap();
            prop_assert_eq!(again, a);
        }
    }
}
