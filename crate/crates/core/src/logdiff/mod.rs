//! Polynomial relations among the quotients `y_j = D^j y / y`.
//!
//! Given an equation satisfied by `y` (linear, or a polynomial solved form)
//! and a linear equation satisfied by `1/y` or `y^q`, this module rewrites
//! everything as polynomial equations in `y_1, ..., y_{n-1}` over the
//! coefficient field.

mod hypotheses;
mod recurrences;
mod system;

pub use hypotheses::{check_hypotheses, HypothesisReport, Violation};
pub use recurrences::{p_power, p_power_table, p_reciprocal, p_reciprocal_table, phi_truncate};
pub use system::{assemble_system, leading_form_system, reduction_forms, AssembledSystem, ReductionForm};

use crate::basefield::{DiffField, Field};
use crate::error::{Error, Result};
use crate::mpoly::{MPoly, WeightGrading};

/// Homogeneous linear operator `D^N + a_{N-1} D^{N-1} + ... + a_0`, stored
/// monic with `coeffs[i] = a_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OdeSpec<K: Field> {
    coeffs: Vec<K>,
    ctx: K::Ctx,
}

impl<K: Field> OdeSpec<K> {
    /// From the lower coefficients `a_0, ..., a_{N-1}` of a monic operator.
    pub fn monic(coeffs: Vec<K>, ctx: &K::Ctx) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyOperator);
        }
        Ok(OdeSpec { coeffs, ctx: ctx.clone() })
    }

    /// From all coefficients, highest order first; the leading one is divided out.
    pub fn from_highest_first(all: Vec<K>, ctx: &K::Ctx) -> Result<Self> {
        let mut all = all;
        while all.first().is_some_and(|c| c.is_zero()) {
            all.remove(0);
        }
        if all.len() < 2 {
            return Err(Error::EmptyOperator);
        }
        let lead_inv = all[0].inv().expect("nonzero leading coefficient");
        let coeffs = all[1..].iter().rev().map(|c| c.clone() * lead_inv.clone()).collect();
        Self::monic(coeffs, ctx)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `a_i`; `a_N` is 1.
    pub fn coeff(&self, i: usize) -> K {
        if i == self.coeffs.len() {
            K::one(&self.ctx)
        } else {
            self.coeffs[i].clone()
        }
    }

    pub fn lower_coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn ctx(&self) -> &K::Ctx {
        &self.ctx
    }

    /// Coefficients highest order first, starting with the leading 1.
    pub fn highest_first(&self) -> Vec<K> {
        (0..=self.order()).rev().map(|i| self.coeff(i)).collect()
    }

    /// Operator text such as `D^2 - (1/(2*x))*D - x`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for i in (0..=self.order()).rev() {
            let c = self.coeff(i);
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "D".to_string(),
                _ => format!("D^{i}"),
            };
            crate::basefield::push_term(&mut out, &c, &mono);
        }
        out
    }
}

/// An equation `y_n = g(y_1, ..., y_{n-1})` obtained by dividing a
/// homogeneous nonlinear equation for `y` through by a power of `y`.
///
/// Every term of `g` must have weight below `n`; violations are reported by
/// [`check_hypotheses`] and rejected by [`reduction_forms`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NonlinearSpec<K: Field> {
    n: usize,
    solved: MPoly<K>,
}

impl<K: Field> NonlinearSpec<K> {
    pub fn new(n: usize, solved: MPoly<K>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyOperator);
        }
        Ok(NonlinearSpec { n, solved })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn solved(&self) -> &MPoly<K> {
        &self.solved
    }

    /// Terms that break the weight condition, rendered.
    pub fn weight_violations(&self) -> Vec<String> {
        let g = WeightGrading::standard();
        self.solved
            .terms()
            .filter(|(m, _)| g.weight(m) >= self.n as u64 || m.max_var() >= self.n)
            .map(|(m, _)| m.to_string())
            .collect()
    }
}

/// The equation satisfied by `y` itself.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FirstEquation<K: Field> {
    Linear(OdeSpec<K>),
    Nonlinear(NonlinearSpec<K>),
}

impl<K: Field> FirstEquation<K> {
    pub fn order(&self) -> usize {
        match self {
            FirstEquation::Linear(l) => l.order(),
            FirstEquation::Nonlinear(s) => s.order(),
        }
    }
}

/// Which function the second operator annihilates.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Case {
    /// `L2(1/y) = 0`.
    Reciprocal,
    /// `L2(y^q) = 0`.
    Power { q: u32 },
    /// Like `Reciprocal`, with `y` given by a nonlinear solved form.
    Nonlinear,
}

impl Case {
    pub fn name(&self) -> &'static str {
        match self {
            Case::Reciprocal => "reciprocal",
            Case::Power { .. } => "power",
            Case::Nonlinear => "nonlinear",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OdeProblem<K: Field> {
    pub case: Case,
    pub l1: FirstEquation<K>,
    pub l2: OdeSpec<K>,
}

impl<K: DiffField> OdeProblem<K> {
    pub fn new(case: Case, l1: FirstEquation<K>, l2: OdeSpec<K>) -> Result<Self> {
        let nonlinear = matches!(l1, FirstEquation::Nonlinear(_));
        if nonlinear != (case == Case::Nonlinear) {
            return Err(Error::Hypothesis("a nonlinear first equation goes with the nonlinear case only".into()));
        }
        Ok(OdeProblem { case, l1, l2 })
    }

    pub fn reciprocal(l1: OdeSpec<K>, l2: OdeSpec<K>) -> Self {
        OdeProblem { case: Case::Reciprocal, l1: FirstEquation::Linear(l1), l2 }
    }

    pub fn power(l1: OdeSpec<K>, l2: OdeSpec<K>, q: u32) -> Self {
        OdeProblem { case: Case::Power { q }, l1: FirstEquation::Linear(l1), l2 }
    }

    pub fn nonlinear(l1: NonlinearSpec<K>, l2: OdeSpec<K>) -> Self {
        OdeProblem { case: Case::Nonlinear, l1: FirstEquation::Nonlinear(l1), l2 }
    }

    /// `N_1`, the order of the equation for `y`; the unknowns are `y_1..y_{n-1}`.
    pub fn n(&self) -> usize {
        self.l1.order()
    }

    /// `N_2`.
    pub fn m(&self) -> usize {
        self.l2.order()
    }

    pub fn characteristic(&self) -> u64 {
        K::characteristic(self.l2.ctx())
    }

    pub fn ctx(&self) -> &K::Ctx {
        self.l2.ctx()
    }
}
