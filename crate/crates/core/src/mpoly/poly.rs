use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Monomial, WeightGrading};
use crate::basefield::{forward_owned, push_term, DiffField, Field, UPoly};
use crate::error::{Error, Result};

/// Sparse polynomial in `y_1, y_2, ...` with coefficients in `K`.
///
/// Terms are kept in a map ordered by [`Monomial`]'s graded reverse
/// lexicographic order; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MPoly<K: Field> {
    terms: BTreeMap<Monomial, K>,
    ctx: K::Ctx,
}

impl<K: Field> MPoly<K> {
    pub fn zero(ctx: &K::Ctx) -> Self {
        MPoly { terms: BTreeMap::new(), ctx: ctx.clone() }
    }

    pub fn one(ctx: &K::Ctx) -> Self {
        Self::constant(K::one(ctx))
    }

    pub fn constant(c: K) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn from_i64(ctx: &K::Ctx, n: i64) -> Self {
        Self::constant(K::from_i64(ctx, n))
    }

    pub fn term(c: K, m: Monomial) -> Self {
        let ctx = c.ctx();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms, ctx }
    }

    /// The variable `y_index`.
    pub fn var(index: usize, ctx: &K::Ctx) -> Self {
        Self::term(K::one(ctx), Monomial::var(index))
    }

    pub fn from_terms(ctx: &K::Ctx, terms: impl IntoIterator<Item = (Monomial, K)>) -> Self {
        let mut out = Self::zero(ctx);
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn ctx(&self) -> &K::Ctx {
        &self.ctx
    }

    fn add_term(&mut self, m: Monomial, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Terms from the largest monomial down.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &K)> {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// The coefficient of the unit monomial when the polynomial is constant.
    pub fn as_constant(&self) -> Option<K> {
        if self.is_constant() {
            Some(self.coeff(&Monomial::one()))
        } else {
            None
        }
    }

    pub fn coeff(&self, m: &Monomial) -> K {
        self.terms.get(m).cloned().unwrap_or_else(|| K::zero(&self.ctx))
    }

    /// Largest monomial for the canonical (grevlex) order.
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    /// Highest variable index occurring, 0 for constants.
    pub fn max_var(&self) -> usize {
        self.terms.keys().map(|m| m.max_var()).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        MPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())).collect(),
            ctx: self.ctx.clone(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        MPoly { terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(), ctx: self.ctx.clone() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn map_coeffs(&self, f: impl Fn(&K) -> K) -> Self {
        Self::from_terms(&self.ctx, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Replaces `y_index` by `value`.
    pub fn substitute(&self, index: usize, value: &MPoly<K>) -> Self {
        if self.terms.keys().all(|m| m.exp(index) == 0) {
            return self.clone();
        }
        let mut powers: Vec<MPoly<K>> = vec![Self::one(&self.ctx)];
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.exp(index) as usize;
            if e == 0 {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut rest = m.clone();
            for _ in 0..e {
                rest = rest.without_one(index);
            }
            let piece = powers[e].mul_monomial(&rest).scale(c);
            out = &out + &piece;
        }
        out
    }

    /// Keeps the terms built from `y_1..y_{n-1}` only, i.e. sends every `y_j`
    /// with `j >= n` to zero.
    pub fn truncate_vars(&self, n: usize) -> Self {
        MPoly {
            terms: self.terms.iter().filter(|(m, _)| m.max_var() < n).map(|(m, c)| (m.clone(), c.clone())).collect(),
            ctx: self.ctx.clone(),
        }
    }

    /// Sum of the terms of maximal weight.
    pub fn leading_form(&self, grading: &WeightGrading) -> Result<Self> {
        let top = self.terms.keys().map(|m| grading.weight(m)).max().ok_or(Error::ZeroPolynomial)?;
        Ok(MPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| grading.weight(m) == top)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            ctx: self.ctx.clone(),
        })
    }

    pub fn max_weight(&self, grading: &WeightGrading) -> Option<u64> {
        self.terms.keys().map(|m| grading.weight(m)).max()
    }

    pub fn is_weighted_homogeneous(&self, grading: &WeightGrading) -> bool {
        let mut weights = self.terms.keys().map(|m| grading.weight(m));
        match weights.next() {
            None => true,
            Some(w) => weights.all(|v| v == w),
        }
    }

    /// `Some(p)` when only `y_index` occurs; `p` is the polynomial in that variable.
    pub fn to_univariate(&self, index: usize) -> Option<UPoly<K>> {
        let mut coeffs: Vec<K> = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(index) as usize;
            if m.degree() as usize != e {
                return None;
            }
            if coeffs.len() <= e {
                coeffs.resize(e + 1, K::zero(&self.ctx));
            }
            coeffs[e] = c.clone();
        }
        Some(UPoly::new(coeffs, self.ctx.clone()))
    }

    pub fn from_univariate(p: &UPoly<K>, index: usize) -> Self {
        let var = Monomial::var(index);
        let mut out = Self::zero(p.ctx());
        let mut m = Monomial::one();
        for c in p.coeffs() {
            out.add_term(m.clone(), c.clone());
            m = m.mul(&var);
        }
        out
    }
}

impl<K: DiffField> MPoly<K> {
    /// Derivation on the quotient variables `y_j = D^j y / y`:
    /// `y_j -> y_{j+1} - y_1 y_j`, extended by Leibniz and by the field
    /// derivation on coefficients.
    pub fn delta_derive(&self) -> Self {
        let mut out = Self::zero(&self.ctx);
        let y1 = Monomial::var(1);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.derive());
            let degree = m.degree();
            if degree > 0 {
                out.add_term(m.mul(&y1), -(K::from_i64(&self.ctx, degree as i64) * c.clone()));
            }
            for (i, e) in m.support() {
                let raised = m.without_one(i).mul(&Monomial::var(i + 1));
                out.add_term(raised, K::from_i64(&self.ctx, e as i64) * c.clone());
            }
        }
        out
    }
}

impl<K: Field> fmt::Display for MPoly<K> {
    /// Canonical rendering: terms in descending grevlex order, variables
    /// written `y1`, `y2`, ...
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (m, c) in self.terms() {
            let mono = if m.is_one() { String::new() } else { m.to_string() };
            push_term(&mut out, c, &mono);
        }
        f.write_str(&out)
    }
}

impl<K: Field> Add for &MPoly<K> {
    type Output = MPoly<K>;
    fn add(self, rhs: &MPoly<K>) -> MPoly<K> {
        let (long, short) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = long.clone();
        for (m, c) in &short.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<K: Field> Neg for &MPoly<K> {
    type Output = MPoly<K>;
    fn neg(self) -> MPoly<K> {
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(), ctx: self.ctx.clone() }
    }
}

impl<K: Field> Sub for &MPoly<K> {
    type Output = MPoly<K>;
    fn sub(self, rhs: &MPoly<K>) -> MPoly<K> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<K: Field> Mul for &MPoly<K> {
    type Output = MPoly<K>;
    fn mul(self, rhs: &MPoly<K>) -> MPoly<K> {
        let mut out = MPoly::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

forward_owned!(MPoly, Add add, Sub sub, Mul mul);
