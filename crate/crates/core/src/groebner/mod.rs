//! Gröbner bases over a coefficient field, zero-dimensionality
//! certificates and eliminants.

mod bounds;
mod buchberger;
mod quotient;

pub use bounds::{degree_bounds, squarefree_part, DegreeBounds};
pub use buchberger::{buchberger, buchberger_with, GroebnerBasis, GroebnerOptions, GroebnerStats};
pub use quotient::{eliminant, is_zero_dimensional, Quotient, ZeroDimCertificate};

use crate::basefield::{Field, UPoly};
use crate::error::{Error, Result};
use crate::mpoly::{MPoly, TermOrder};

/// Eliminant of `y_j` read off a lex basis in which `y_j` is the smallest
/// variable. Slower than [`eliminant`] but shares nothing with it beyond
/// Buchberger itself.
pub fn eliminant_by_lex<K: Field>(gens: &[MPoly<K>], nvars: usize, j: usize, ctx: &K::Ctx) -> Result<UPoly<K>> {
    if j == 0 || j > nvars {
        return Err(Error::VariableOutOfRange { index: j, max: nvars });
    }
    let gb = buchberger(gens, &TermOrder::elimination(j, nvars), ctx);
    if gb.is_unit() {
        return Err(Error::UnitIdeal);
    }
    gb.generators()
        .iter()
        .filter(|g| !g.is_constant())
        .find_map(|g| g.to_univariate(j))
        .map(|u| u.monic())
        .ok_or(Error::NotZeroDimensional)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EliminantReport<K: Field> {
    pub variable: usize,
    pub eliminant: UPoly<K>,
    /// `None` when the eliminant is inseparable in positive characteristic.
    pub squarefree: Option<UPoly<K>>,
    pub bounds: DegreeBounds,
}

impl<K: Field> EliminantReport<K> {
    pub fn new(variable: usize, eliminant: UPoly<K>, bounds: DegreeBounds) -> Result<Self> {
        let squarefree = match squarefree_part(&eliminant) {
            Ok(s) => Some(s),
            Err(Error::Inseparable(_)) => None,
            Err(e) => return Err(e),
        };
        Ok(EliminantReport { variable, eliminant, squarefree, bounds })
    }

    pub fn degree(&self) -> usize {
        self.eliminant.degree().unwrap_or(0)
    }

    pub fn squarefree_degree(&self) -> Option<usize> {
        self.squarefree.as_ref().map(|s| s.degree().unwrap_or(0))
    }

    pub fn within_bezout(&self) -> Option<bool> {
        self.bounds.bezout.map(|b| self.degree() as u128 <= b)
    }

    pub fn within_binomial(&self) -> Option<bool> {
        match (self.bounds.binomial, self.squarefree_degree()) {
            (Some(b), Some(d)) => Some(d as u128 <= b),
            _ => None,
        }
    }
}
