//! Sparse multivariate polynomials in the quotient variables `y_j`.

mod monomial;
mod order;
mod poly;

pub use monomial::Monomial;
pub use order::{OrderKind, TermOrder};
pub use poly::MPoly;

use crate::error::{Error, Result};

/// Positive integer weights on the variables. The standard grading gives
/// `y_i` weight `i`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct WeightGrading {
    weights: Option<Vec<u64>>,
}

impl WeightGrading {
    pub fn standard() -> Self {
        WeightGrading { weights: None }
    }

    /// Explicit weights for `y_1, y_2, ...`; variables past the list keep
    /// their standard weight.
    pub fn new(weights: Vec<u64>) -> Result<Self> {
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::Hypothesis("weights must be positive".into()));
        }
        Ok(WeightGrading { weights: Some(weights) })
    }

    pub fn weight_of_var(&self, index: usize) -> u64 {
        self.weights.as_ref().and_then(|w| w.get(index - 1).copied()).unwrap_or(index as u64)
    }

    pub fn weight(&self, m: &Monomial) -> u64 {
        m.support().map(|(i, e)| e as u64 * self.weight_of_var(i)).sum()
    }
}
