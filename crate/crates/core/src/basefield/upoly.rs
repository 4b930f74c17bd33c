//! Dense univariate polynomials over a field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{DiffField, Field};
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficients indexed by degree. The
/// coefficient vector is trimmed, so the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UPoly<F: Field> {
    coeffs: Vec<F>,
    ctx: F::Ctx,
}

fn trim<F: Field>(v: &mut Vec<F>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

impl<F: Field> UPoly<F> {
    pub fn new(mut coeffs: Vec<F>, ctx: F::Ctx) -> Self {
        trim(&mut coeffs);
        UPoly { coeffs, ctx }
    }

    pub fn zero(ctx: &F::Ctx) -> Self {
        UPoly { coeffs: Vec::new(), ctx: ctx.clone() }
    }

    pub fn one(ctx: &F::Ctx) -> Self {
        Self::constant(F::one(ctx))
    }

    pub fn constant(c: F) -> Self {
        let ctx = c.ctx();
        Self::new(vec![c], ctx)
    }

    /// The polynomial `c * x^deg`.
    pub fn monomial(c: F, deg: usize) -> Self {
        let ctx = c.ctx();
        let mut coeffs = vec![F::zero(&ctx); deg];
        coeffs.push(c);
        Self::new(coeffs, ctx)
    }

    /// The indeterminate itself.
    pub fn x(ctx: &F::Ctx) -> Self {
        Self::monomial(F::one(ctx), 1)
    }

    pub fn from_ints(ints: &[i64], ctx: &F::Ctx) -> Self {
        Self::new(ints.iter().map(|&n| F::from_i64(ctx, n)).collect(), ctx.clone())
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(|| F::zero(&self.ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        UPoly { coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(), ctx: self.ctx.clone() }
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) if !lc.is_one() => self.scale(&lc.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    pub fn eval(&self, at: &F) -> F {
        let mut acc = F::zero(&self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = acc * at.clone() + c.clone();
        }
        acc
    }

    /// Formal derivative with respect to the indeterminate.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| F::from_i64(&self.ctx, i as i64) * c.clone())
            .collect();
        Self::new(coeffs, self.ctx.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = divisor.coeffs[dd].inv().expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(&self.ctx), self.clone()));
        }
        let mut q = vec![F::zero(&self.ctx); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].clone() * lc_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                r[k + i] = r[k + i].clone() - c.clone() * dc.clone();
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Self::new(q, self.ctx.clone()), Self::new(r, self.ctx.clone())))
    }

    /// Quotient of a division known to be exact.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        debug_assert!(r.is_zero(), "inexact polynomial division");
        Ok(q)
    }

    pub fn divides(&self, other: &Self) -> Result<bool> {
        Ok(other.div_rem(self)?.1.is_zero())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        if self.is_zero() {
            return Ok(other.monic());
        }
        if other.is_zero() {
            return Ok(self.monic());
        }
        if self.is_constant() || other.is_constant() {
            return Ok(Self::one(&self.ctx));
        }
        Ok(Self::new(F::poly_gcd(&self.coeffs, &other.coeffs, &self.ctx), self.ctx.clone()))
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> Result<(Self, Self, Self)> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let ctx = &self.ctx;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(ctx), Self::zero(ctx));
        let (mut t0, mut t1) = (Self::zero(ctx), Self::one(ctx));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let lc_inv = r0.leading().expect("nonzero gcd").inv().expect("nonzero");
        Ok((r0.scale(&lc_inv), s0.scale(&lc_inv), t0.scale(&lc_inv)))
    }

    pub fn map_coeffs<G: Field>(&self, ctx: &G::Ctx, f: impl Fn(&F) -> G) -> UPoly<G> {
        UPoly::new(self.coeffs.iter().map(f).collect(), ctx.clone())
    }

    /// Renders with the given name for the indeterminate, highest degree first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            push_term(&mut out, c, &mono);
        }
        out
    }
}

impl<F: DiffField> UPoly<F> {
    /// Applies the coefficient derivation termwise.
    pub fn derive_coeffs(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.derive()).collect(), self.ctx.clone())
    }
}

/// Appends `c * mono` to a rendered sum; `mono` is empty for the unit.
pub(crate) fn push_term<F: Field>(out: &mut String, c: &F, mono: &str) {
    let neg = c.is_negative();
    let abs = if neg { -c.clone() } else { c.clone() };
    match (out.is_empty(), neg) {
        (true, true) => out.push('-'),
        (true, false) => {}
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
    }
    let abs_s = abs.to_string();
    if mono.is_empty() {
        out.push_str(&wrap_sum(&abs_s));
    } else if abs.is_one() {
        out.push_str(mono);
    } else if is_plain_number(&abs_s) || !(has_top_level_sum(&abs_s) || abs_s.contains('/')) {
        out.push_str(&abs_s);
        out.push('*');
        out.push_str(mono);
    } else {
        out.push('(');
        out.push_str(&abs_s);
        out.push_str(")*");
        out.push_str(mono);
    }
}

/// `true` for text such as `-3`, `7/2`: a single signed rational literal.
pub(crate) fn is_plain_number(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    !body.is_empty() && body.chars().all(|c| c.is_ascii_digit() || c == '/')
}

/// Whether `s` has a `+` or `-` operator outside parentheses.
pub(crate) fn has_top_level_sum(s: &str) -> bool {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && i > 0 => return true,
            _ => {}
        }
    }
    false
}

pub(crate) fn wrap_sum(s: &str) -> String {
    if has_top_level_sum(s) {
        format!("({s})")
    } else {
        s.to_string()
    }
}

impl<F: Field> fmt::Display for UPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

/// Plain Euclid on trimmed coefficient slices; returns the monic gcd.
pub(crate) fn euclid_gcd<F: Field>(a: &[F], b: &[F], ctx: &F::Ctx) -> Vec<F> {
    let mut r0 = UPoly::new(a.to_vec(), ctx.clone());
    let mut r1 = UPoly::new(b.to_vec(), ctx.clone());
    while !r1.is_zero() {
        let r = r0.div_rem(&r1).expect("nonzero divisor").1.monic();
        r0 = std::mem::replace(&mut r1, r);
    }
    r0.monic().coeffs
}

impl<F: Field> Add for &UPoly<F> {
    type Output = UPoly<F>;
    fn add(self, rhs: &UPoly<F>) -> UPoly<F> {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (i, c) in short.coeffs.iter().enumerate() {
            coeffs[i] = coeffs[i].clone() + c.clone();
        }
        UPoly::new(coeffs, self.ctx.clone())
    }
}

impl<F: Field> Neg for &UPoly<F> {
    type Output = UPoly<F>;
    fn neg(self) -> UPoly<F> {
        UPoly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(), ctx: self.ctx.clone() }
    }
}

impl<F: Field> Sub for &UPoly<F> {
    type Output = UPoly<F>;
    fn sub(self, rhs: &UPoly<F>) -> UPoly<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Mul for &UPoly<F> {
    type Output = UPoly<F>;
    fn mul(self, rhs: &UPoly<F>) -> UPoly<F> {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero(&self.ctx);
        }
        let mut coeffs = vec![F::zero(&self.ctx); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        UPoly::new(coeffs, self.ctx.clone())
    }
}

macro_rules! forward_owned {
    ($ty:ident, $($tr:ident $m:ident),*) => {$(
        impl<F: Field> $tr for $ty<F> {
            type Output = $ty<F>;
            fn $m(self, rhs: $ty<F>) -> $ty<F> { (&self).$m(&rhs) }
        }
        impl<F: Field> $tr<&$ty<F>> for $ty<F> {
            type Output = $ty<F>;
            fn $m(self, rhs: &$ty<F>) -> $ty<F> { (&self).$m(rhs) }
        }
    )*
        impl<F: Field> Neg for $ty<F> {
            type Output = $ty<F>;
            fn neg(self) -> $ty<F> { -(&self) }
        }
    };
}
pub(crate) use forward_owned;

forward_owned!(UPoly, Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basefield::{rat, Fp, Rat};

    fn q(ints: &[i64]) -> UPoly<Rat> {
        UPoly::from_ints(ints, &())
    }

    #[test]
    fn gcd_examples() {
        // (x^2 - 1, x^2 - 2x + 1) -> x - 1
        assert_eq!(q(&[-1, 0, 1]).gcd(&q(&[1, -2, 1])).unwrap(), q(&[-1, 1]));
        // (f, 0) -> f monic
        let f = q(&[2, 4]);
        assert_eq!(f.gcd(&UPoly::zero(&())).unwrap(), UPoly::new(vec![rat(1, 2), rat(1, 1)], ()));
        // coprime
        assert_eq!(q(&[1, 0, 1]).gcd(&q(&[2, 0, 1])).unwrap(), q(&[1]));
        assert_eq!(UPoly::<Rat>::zero(&()).gcd(&UPoly::zero(&())), Err(Error::GcdOfZeros));
    }

    #[test]
    fn gcd_over_gf5_matches_euclid() {
        let p = 5u64;
        let a = UPoly::<Fp>::from_ints(&[-1, 0, 1], &p);
        let b = UPoly::<Fp>::from_ints(&[1, 2, 1], &p);
        assert_eq!(a.gcd(&b).unwrap(), UPoly::from_ints(&[1, 1], &p));
    }

    #[test]
    fn division_and_extended_gcd() {
        let a = q(&[-1, 0, 0, 1]);
        let b = q(&[1, 1]);
        let (quo, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&quo * &b) + &r, a);
        assert_eq!(r, q(&[-2]));
        let (g, s, t) = a.ext_gcd(&b).unwrap();
        assert!(g.is_one());
        assert_eq!(&(&s * &a) + &(&t * &b), g);
        assert!(a.div_rem(&UPoly::zero(&())).is_err());
    }

    #[test]
    fn rendering() {
        assert_eq!(q(&[1, -1, 3]).to_string(), "3*x^2 - x + 1");
        assert_eq!(UPoly::new(vec![rat(-1, 2), rat(3, 2)], ()).to_string(), "3/2*x - 1/2");
        assert_eq!(q(&[]).to_string(), "0");
        assert_eq!(q(&[0, 0, -1]).render("y1"), "-y1^2");
    }
}
