use std::collections::HashMap;

use super::buchberger::{reduce, GroebnerBasis, Sparse};
use crate::basefield::{Field, UPoly};
use crate::error::{Error, Result};
use crate::mpoly::Monomial;

/// Evidence that `K[y_1..y_n] / I` is finite-dimensional.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZeroDimCertificate {
    /// `witnesses[j - 1]` is a leading monomial `y_j^d`; the unit monomial
    /// for the unit ideal.
    pub witnesses: Vec<Monomial>,
    /// Monomials outside the leading ideal, ascending in the basis order.
    pub standard_monomials: Vec<Monomial>,
}

impl ZeroDimCertificate {
    pub fn dimension(&self) -> usize {
        self.standard_monomials.len()
    }
}

/// `Some(certificate)` when every `y_1..y_nvars` has a pure power among the
/// leading monomials.
pub fn is_zero_dimensional<K: Field>(gb: &GroebnerBasis<K>, nvars: usize) -> Option<ZeroDimCertificate> {
    let lms = gb.leading_monomials();
    if gb.is_unit() {
        return Some(ZeroDimCertificate { witnesses: vec![Monomial::one(); nvars], standard_monomials: Vec::new() });
    }
    if lms.iter().any(|m| m.max_var() > nvars) {
        return None;
    }
    let mut witnesses = Vec::with_capacity(nvars);
    for j in 1..=nvars {
        let w = lms.iter().filter(|m| m.pure_power_var() == Some(j)).min_by_key(|m| m.exp(j))?;
        witnesses.push(w.clone());
    }
    // Standard monomials live in the box below the witnesses.
    let mut standard = vec![Monomial::one()];
    for j in 1..=nvars {
        let d = witnesses[j - 1].exp(j);
        let mut next = Vec::new();
        for m in &standard {
            let mut cur = m.clone();
            for _ in 0..d {
                next.push(cur.clone());
                cur = cur.mul(&Monomial::var(j));
            }
        }
        standard = next;
    }
    standard.retain(|m| !lms.iter().any(|l| l.divides(m)));
    standard.sort_by(|a, b| gb.order().cmp(a, b));
    Some(ZeroDimCertificate { witnesses, standard_monomials: standard })
}

/// The finite-dimensional algebra `K[y] / I` with a monomial basis.
pub struct Quotient<'a, K: Field> {
    gb: &'a GroebnerBasis<K>,
    cert: ZeroDimCertificate,
    index: HashMap<Monomial, usize>,
}

impl<'a, K: Field> Quotient<'a, K> {
    pub fn new(gb: &'a GroebnerBasis<K>, nvars: usize) -> Result<Self> {
        if gb.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let cert = is_zero_dimensional(gb, nvars).ok_or(Error::NotZeroDimensional)?;
        let index = cert.standard_monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Ok(Quotient { gb, cert, index })
    }

    pub fn certificate(&self) -> &ZeroDimCertificate {
        &self.cert
    }

    pub fn dimension(&self) -> usize {
        self.cert.dimension()
    }

    /// Coordinates of the normal form of `m`.
    fn coords_of(&self, m: &Monomial) -> Vec<K> {
        let ctx = self.gb.ctx();
        let mut v = vec![K::zero(ctx); self.dimension()];
        if let Some(&i) = self.index.get(m) {
            v[i] = K::one(ctx);
            return v;
        }
        let f = Sparse { terms: vec![(m.clone(), K::one(ctx))] };
        for (t, c) in reduce(f, &self.gb.gens, self.gb.order(), true).terms {
            v[self.index[&t]] = c;
        }
        v
    }

    /// Columns of multiplication by `y_j`: `table[s]` is the normal form of
    /// `y_j * basis[s]`.
    pub fn multiplication_table(&self, j: usize) -> Vec<Vec<K>> {
        let y = Monomial::var(j);
        self.cert.standard_monomials.iter().map(|s| self.coords_of(&s.mul(&y))).collect()
    }

    /// Monic minimal polynomial of `y_j` acting on the quotient; it
    /// generates `I ∩ K[y_j]`.
    ///
    /// A squarefree characteristic polynomial is already minimal; otherwise
    /// the powers of `y_j` are reduced until they become dependent.
    pub fn eliminant(&self, j: usize) -> UPoly<K> {
        let ctx = self.gb.ctx();
        let table = self.multiplication_table(j);
        let chi = UPoly::new(K::charpoly(&table, ctx), ctx.clone());
        if K::certainly_coprime(chi.coeffs(), chi.derivative().coeffs(), ctx) {
            return chi;
        }
        self.krylov_eliminant(&table)
    }

    /// Minimal polynomial by incremental elimination on `1, y_j, y_j^2, ...`.
    pub fn krylov_eliminant(&self, table: &[Vec<K>]) -> UPoly<K> {
        let ctx = self.gb.ctx();
        let dim = self.dimension();
        // Reduced rows: (pivot, vector with 1 at pivot, combination of powers).
        let mut rows: Vec<(usize, Vec<K>, Vec<K>)> = Vec::new();
        let mut v = self.coords_of(&Monomial::one());
        for k in 0..=dim {
            let mut combo = vec![K::zero(ctx); k + 1];
            combo[k] = K::one(ctx);
            let mut w = v.clone();
            for (p, row, rc) in &rows {
                if w[*p].is_zero() {
                    continue;
                }
                let f = w[*p].clone();
                for (x, r) in w.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x = x.clone() - f.clone() * r.clone();
                    }
                }
                for (x, r) in combo.iter_mut().zip(rc) {
                    if !r.is_zero() {
                        *x = x.clone() - f.clone() * r.clone();
                    }
                }
            }
            match w.iter().position(|x| !x.is_zero()) {
                None => return UPoly::new(combo, ctx.clone()).monic(),
                Some(p) => {
                    let inv = w[p].inv().unwrap();
                    let w: Vec<K> = w.into_iter().map(|x| x * inv.clone()).collect();
                    let combo: Vec<K> = combo.into_iter().map(|x| x * inv.clone()).collect();
                    rows.push((p, w, combo));
                }
            }
            v = mat_vec(table, &v, ctx);
        }
        unreachable!("dim + 1 vectors in a space of dimension dim are dependent")
    }
}

fn mat_vec<K: Field>(columns: &[Vec<K>], v: &[K], ctx: &K::Ctx) -> Vec<K> {
    let mut out = vec![K::zero(ctx); v.len()];
    for (col, c) in columns.iter().zip(v) {
        if c.is_zero() {
            continue;
        }
        for (o, a) in out.iter_mut().zip(col) {
            if !a.is_zero() {
                *o = o.clone() + c.clone() * a.clone();
            }
        }
    }
    out
}

/// Monic generator of `I ∩ K[y_j]` for a zero-dimensional ideal.
pub fn eliminant<K: Field>(gb: &GroebnerBasis<K>, nvars: usize, j: usize) -> Result<UPoly<K>> {
    if j == 0 || j > nvars {
        return Err(Error::VariableOutOfRange { index: j, max: nvars });
    }
    Ok(Quotient::new(gb, nvars)?.eliminant(j))
}
