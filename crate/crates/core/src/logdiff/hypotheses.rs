use std::fmt;

use super::{Case, FirstEquation, OdeProblem};
use crate::basefield::DiffField;

/// One failed side condition, named the way it is usually stated.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation {
    pub condition: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.condition, self.detail)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct HypothesisReport {
    pub violations: Vec<Violation>,
}

impl HypothesisReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn message(&self) -> String {
        self.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
    }

    fn fail(&mut self, condition: &str, detail: String) {
        self.violations.push(Violation { condition: condition.to_string(), detail });
    }
}

pub fn check_hypotheses<K: DiffField>(problem: &OdeProblem<K>) -> HypothesisReport {
    let mut report = HypothesisReport::default();
    let (n, m) = (problem.n(), problem.m());
    let p = problem.characteristic();
    if n < 2 {
        report.fail("N1 > 1", format!("first equation has order {n}"));
    }
    if m < 2 {
        report.fail("N2 > 1", format!("second equation has order {m}"));
    }
    match problem.case {
        Case::Reciprocal | Case::Nonlinear => {
            let bound = (n + m) as i64 - 2;
            if p > 0 && (p as i64) <= bound {
                report.fail("p > N1 + N2 - 2", format!("requires p > {bound}, got p = {p}"));
            }
        }
        Case::Power { q } => {
            if q == 0 {
                report.fail("q >= 1", "q must be a positive integer".to_string());
            }
            if m as u64 > q as u64 {
                report.fail("N2 <= q", format!("requires N2 <= {q}, got N2 = {m}"));
            }
            let bound = (q as i64 + 1) * (n as i64 - 1) - 1;
            if p > 0 && (p as i64) <= bound {
                report.fail("p > (q+1)(N1 - 1) - 1", format!("requires p > {bound}, got p = {p}"));
            }
        }
    }
    if let FirstEquation::Nonlinear(spec) = &problem.l1 {
        let bad = spec.weight_violations();
        if !bad.is_empty() {
            report.fail(
                "weight condition",
                format!("terms of weight >= {n} or using y_j with j >= {n}: {}", bad.join(", ")),
            );
        }
    }
    report
}
