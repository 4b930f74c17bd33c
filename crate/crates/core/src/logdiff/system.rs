use std::fmt;

use super::{check_hypotheses, p_power_table, p_reciprocal_table, Case, FirstEquation, OdeProblem};
use crate::basefield::{DiffField, Field};
use crate::combinat::pascal;
use crate::error::{Error, Result};
use crate::mpoly::{MPoly, WeightGrading};

/// `y_target = expr`, with `expr` free of `y_j` for `j >= n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReductionForm<K: Field> {
    pub target: usize,
    pub expr: MPoly<K>,
}

impl<K: Field> fmt::Display for ReductionForm<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y{} = {}", self.target, self.expr)
    }
}

/// Replaces every `y_j` with `j >= n` by its form, highest index first.
fn normalize<K: Field>(f: &MPoly<K>, n: usize, forms: &[ReductionForm<K>]) -> MPoly<K> {
    let mut out = f.clone();
    for idx in (n..=f.max_var()).rev() {
        let form = &forms[idx - n];
        debug_assert_eq!(form.target, idx);
        out = out.substitute(idx, &form.expr);
    }
    out
}

/// `R_0, ..., R_{count-1}` with `y_{n+k} = R_k`.
///
/// `R_0` comes from the first equation divided by `y`; then
/// `y_{j+1} = y_1 y_j + delta(y_j)`.
pub fn reduction_forms<K: DiffField>(l1: &FirstEquation<K>, count: usize) -> Result<Vec<ReductionForm<K>>> {
    let n = l1.order();
    if n < 2 {
        return Err(Error::Hypothesis(format!("N1 > 1: first equation has order {n}")));
    }
    let seed = match l1 {
        FirstEquation::Linear(ode) => {
            let ctx = ode.ctx();
            let mut r = MPoly::constant(-ode.coeff(0));
            for i in 1..n {
                r = &r - &MPoly::var(i, ctx).scale(&ode.coeff(i));
            }
            r
        }
        FirstEquation::Nonlinear(spec) => {
            let bad = spec.weight_violations();
            if !bad.is_empty() {
                return Err(Error::Hypothesis(format!(
                    "weight condition: terms of weight >= {n} or using y_j with j >= {n}: {}",
                    bad.join(", ")
                )));
            }
            spec.solved().clone()
        }
    };
    let y1 = MPoly::var(1, seed.ctx());
    let mut forms = vec![ReductionForm { target: n, expr: seed }];
    while forms.len() < count {
        let last = &forms.last().unwrap().expr;
        let next = &(&y1 * last) + &last.delta_derive();
        let expr = normalize(&next, n, &forms);
        forms.push(ReductionForm { target: n + forms.len(), expr });
    }
    Ok(forms)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AssembledSystem<K: Field> {
    /// Number of unknowns `y_1..y_{n-1}` is `n - 1`.
    pub n: usize,
    /// `~P_{m+k}` in `y_1..y_{n-1}`; zero polynomials are kept so that
    /// `equations[k]` lines up with `indices[k]`.
    pub equations: Vec<MPoly<K>>,
    /// `P_{m+k}` before the reduction forms were applied.
    pub raw: Vec<MPoly<K>>,
    /// `m + k` for each equation.
    pub indices: Vec<usize>,
    pub forms: Vec<ReductionForm<K>>,
}

impl<K: Field> AssembledSystem<K> {
    pub fn nvars(&self) -> usize {
        self.n - 1
    }

    pub fn nonzero_equations(&self) -> Vec<MPoly<K>> {
        self.equations.iter().filter(|e| !e.is_zero()).cloned().collect()
    }
}

/// `P_{m+k} = sum_{i=0}^{m} sum_{j=0}^{k} C(k, j) D^j(b_i) p_{k-j+i}` with
/// `b_m = 1`, i.e. `D^k(L2(f)) / f` for `f = 1/y` or `f = y^q`, followed by
/// the reduction forms.
pub fn assemble_system<K: DiffField>(problem: &OdeProblem<K>) -> Result<AssembledSystem<K>> {
    let report = check_hypotheses(problem);
    if !report.passed() {
        return Err(Error::Hypothesis(report.message()));
    }
    let (n, m) = (problem.n(), problem.m());
    let ctx = problem.ctx();
    let count = match problem.case {
        Case::Reciprocal | Case::Nonlinear => n - 1,
        Case::Power { q } => (q as usize + 1) * (n - 1) - m,
    };
    let top = m + count - 1;
    let p = match problem.case {
        Case::Power { q } => p_power_table::<K>(top, q, ctx)?,
        _ => p_reciprocal_table::<K>(top, ctx)?,
    };
    let forms = reduction_forms(&problem.l1, top.saturating_sub(n) + 1)?;
    let reduced: Vec<MPoly<K>> = p.iter().map(|f| normalize(f, n, &forms)).collect();

    // D^j(b_i) for j < count.
    let mut derivs: Vec<Vec<K>> = Vec::with_capacity(m + 1);
    for i in 0..=m {
        let mut row = vec![problem.l2.coeff(i)];
        for _ in 1..count {
            let next = row.last().unwrap().derive();
            row.push(next);
        }
        derivs.push(row);
    }
    let binom = pascal(count);

    let combine = |table: &[MPoly<K>], k: usize| {
        let mut acc = MPoly::zero(ctx);
        for (i, row) in derivs.iter().enumerate() {
            for j in 0..=k {
                if row[j].is_zero() {
                    continue;
                }
                let c = K::from_bigint(ctx, &binom[k][j]) * row[j].clone();
                acc = &acc + &table[k - j + i].scale(&c);
            }
        }
        acc
    };

    let mut system = AssembledSystem { n, equations: Vec::new(), raw: Vec::new(), indices: Vec::new(), forms };
    for k in 0..count {
        system.raw.push(combine(&p, k));
        system.equations.push(combine(&reduced, k));
        system.indices.push(m + k);
    }
    Ok(system)
}

/// Leading forms for the weights `w(y_i) = i`.
pub fn leading_form_system<K: Field>(system: &[MPoly<K>]) -> Result<Vec<MPoly<K>>> {
    let g = WeightGrading::standard();
    system.iter().map(|f| f.leading_form(&g)).collect()
}
