//! The whole forward computation: hypotheses, assembly, Gröbner basis,
//! certificates and one eliminant per variable.

use std::time::{Duration, Instant};

use crate::basefield::{DiffField, UPoly};
use crate::error::{Error, Result};
use crate::groebner::{
    buchberger_with, degree_bounds, is_zero_dimensional, EliminantReport, GroebnerBasis, GroebnerOptions, Quotient,
    ZeroDimCertificate,
};
use crate::logdiff::{assemble_system, check_hypotheses, leading_form_system, AssembledSystem, HypothesisReport, OdeProblem};
use crate::mpoly::TermOrder;

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub order: TermOrder,
    pub groebner: GroebnerOptions,
    /// Treat a positive-characteristic coefficient field as infinite and
    /// perfect, enabling the distinct-solution bound there.
    pub infinite_perfect: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { order: TermOrder::weighted(), groebner: GroebnerOptions::default(), infinite_perfect: false }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Timings {
    pub assemble: Duration,
    pub leading_form: Duration,
    pub groebner: Duration,
    pub eliminants: Duration,
}

#[derive(Clone, Debug)]
pub struct SolveOutcome<K: DiffField> {
    pub hypotheses: HypothesisReport,
    pub system: AssembledSystem<K>,
    /// Zero-dimensionality of the ideal of leading forms, which implies it
    /// for the system itself.
    pub leading_form: Option<ZeroDimCertificate>,
    pub basis: GroebnerBasis<K>,
    pub certificate: Option<ZeroDimCertificate>,
    pub eliminants: Vec<EliminantReport<K>>,
    pub timings: Timings,
}

impl<K: DiffField> SolveOutcome<K> {
    pub fn unit_ideal(&self) -> bool {
        self.basis.is_unit()
    }

    pub fn eliminant(&self, j: usize) -> Option<&UPoly<K>> {
        self.eliminants.iter().find(|e| e.variable == j).map(|e| &e.eliminant)
    }
}

/// Runs the pipeline. Hypothesis violations are errors; an inconsistent
/// pair yields an outcome with a unit basis and no eliminants.
pub fn solve<K: DiffField>(problem: &OdeProblem<K>, opts: &SolveOptions) -> Result<SolveOutcome<K>> {
    let hypotheses = check_hypotheses(problem);
    if !hypotheses.passed() {
        return Err(Error::Hypothesis(hypotheses.message()));
    }
    let ctx = problem.ctx().clone();
    let mut timings = Timings::default();

    let clock = Instant::now();
    let system = assemble_system(problem)?;
    let equations = system.nonzero_equations();
    let nvars = system.nvars();
    timings.assemble = clock.elapsed();

    let clock = Instant::now();
    let leading_form = match leading_form_system(&equations) {
        Ok(forms) => is_zero_dimensional(&buchberger_with(&forms, &TermOrder::weighted(), &ctx, &opts.groebner), nvars),
        Err(Error::ZeroPolynomial) => None,
        Err(e) => return Err(e),
    };
    timings.leading_form = clock.elapsed();

    let clock = Instant::now();
    let basis = buchberger_with(&equations, &opts.order, &ctx, &opts.groebner);
    timings.groebner = clock.elapsed();

    let certificate = is_zero_dimensional(&basis, nvars);
    let mut eliminants = Vec::new();
    let clock = Instant::now();
    if !basis.is_unit() {
        let quotient = Quotient::new(&basis, nvars)?;
        let bounds = degree_bounds(problem.case, problem.n(), problem.m(), K::characteristic(&ctx), opts.infinite_perfect);
        for j in 1..=nvars {
            eliminants.push(EliminantReport::new(j, quotient.eliminant(j), bounds)?);
        }
    }
    timings.eliminants = clock.elapsed();

    Ok(SolveOutcome { hypotheses, system, leading_form, basis, certificate, eliminants, timings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basefield::Field;
    use crate::logdiff::OdeSpec;
    use crate::{FpFunc, QFunc};

    fn c(n: i64) -> QFunc {
        QFunc::from_i64(&(), n)
    }

    fn op(lower: &[i64]) -> OdeSpec<QFunc> {
        OdeSpec::monic(lower.iter().map(|&k| c(k)).collect(), &()).unwrap()
    }

    #[test]
    fn exponential_pair() {
        let out = solve(&OdeProblem::reciprocal(op(&[-1, 0]), op(&[-1, 0])), &SolveOptions::default()).unwrap();
        assert!(out.leading_form.is_some());
        assert_eq!(out.eliminants.len(), 1);
        let e = &out.eliminants[0];
        assert_eq!(e.eliminant, UPoly::from_ints(&[-1, 0, 1], &()));
        assert_eq!((e.degree(), e.squarefree_degree()), (2, Some(2)));
        assert_eq!((e.bounds.bezout, e.bounds.binomial), (Some(2), Some(2)));
        assert_eq!(e.within_bezout(), Some(true));
    }

    #[test]
    fn power_pair() {
        let out = solve(&OdeProblem::power(op(&[-1, 0]), op(&[-4, 0]), 2), &SolveOptions::default()).unwrap();
        assert_eq!(out.system.nonzero_equations().len(), 1);
        assert_eq!(out.eliminant(1).unwrap(), &UPoly::from_ints(&[-1, 0, 1], &()));
    }

    #[test]
    fn mismatched_exponentials() {
        let out = solve(&OdeProblem::reciprocal(op(&[-1, 0]), op(&[-9, 0])), &SolveOptions::default()).unwrap();
        // No solution of y'' = y has a reciprocal solving z'' = 9z, but with a
        // single equation the algebra cannot see that.
        assert!(!out.unit_ideal());
        assert_eq!(out.system.nonzero_equations()[0].to_string(), "2*y1^2 - 10");
        assert_eq!(out.eliminant(1).unwrap(), &UPoly::from_ints(&[-5, 0, 1], &()));
    }

    #[test]
    fn characteristic_checks() {
        let p = |modulus: u64| {
            let k = |n: i64| FpFunc::from_i64(&modulus, n);
            let l = OdeSpec::monic(vec![k(-1), k(0)], &modulus).unwrap();
            OdeProblem::reciprocal(l.clone(), l)
        };
        let out = solve(&p(5), &SolveOptions::default()).unwrap();
        let expected = UPoly::new(vec![-FpFunc::one(&5), FpFunc::zero(&5), FpFunc::one(&5)], 5);
        assert_eq!(out.eliminant(1).unwrap(), &expected);
        assert_eq!(out.eliminants[0].bounds.binomial, None);
        let err = solve(&p(2), &SolveOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Hypothesis(ref m) if m.contains("p > N1 + N2 - 2")));
    }
}
