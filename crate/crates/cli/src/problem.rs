//! Problem files.
//!
//! ```json
//! {
//!   "characteristic": 0,
//!   "case": "reciprocal",
//!   "l1": "D^2 - 1",
//!   "l2": ["1", "0", "-1"],
//!   "oracle": { "x0": "0", "ics": ["1", "1"], "order": 40, "slack": 8 }
//! }
//! ```
//!
//! Operators are either text or coefficient lists, highest order first; the
//! leading coefficient is divided out. The power case adds `"q"`; the
//! nonlinear case replaces `l1` by `"solved": {"order": n, "expr": "..."}`,
//! meaning `y_n = expr(y_1, ..., y_{n-1})`.

use std::path::Path;

use logderiv::basefield::{Field, Fp, Rat, RatFunc};
use logderiv::logdiff::{Case, NonlinearSpec, OdeProblem, OdeSpec};
use logderiv::QFunc;
use serde::{Deserialize, Serialize};

use crate::parse::{parse_operator, parse_ratfunc, parse_relation};
use crate::{CliError, CliResult};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseTag {
    Reciprocal,
    Power,
    Nonlinear,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OperatorInput {
    Text(String),
    Coeffs(Vec<String>),
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolvedForm {
    pub order: usize,
    pub expr: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleBlock {
    /// Expansion point; the first ordinary nonnegative integer if absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0: Option<String>,
    /// `y(x0), y'(x0), ..., y^(n-1)(x0)`.
    pub ics: Vec<String>,
    /// Truncation order of the series.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slack: Option<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default)]
    pub characteristic: u64,
    pub case: CaseTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l1: Option<OperatorInput>,
    pub l2: OperatorInput,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solved: Option<SolvedForm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleBlock>,
}

fn operator<F: Field>(input: &OperatorInput, field: &str, ctx: &F::Ctx) -> CliResult<OdeSpec<RatFunc<F>>> {
    match input {
        OperatorInput::Text(t) => parse_operator::<F>(t, ctx).map_err(|e| CliError::parse(field, e)),
        OperatorInput::Coeffs(list) => {
            let all = list
                .iter()
                .enumerate()
                .map(|(i, t)| parse_ratfunc::<F>(t, ctx).map_err(|e| CliError::parse(format!("{field}[{i}]"), e)))
                .collect::<CliResult<Vec<_>>>()?;
            if all.first().is_none_or(|c| c.is_zero()) {
                return Err(CliError::Invalid(format!("{field}: leading coefficient must be nonzero")));
            }
            if all.len() < 2 {
                return Err(CliError::Invalid(format!("{field}: operator must have order at least 1")));
            }
            Ok(OdeSpec::from_highest_first(all, ctx)?)
        }
    }
}

impl ProblemFile {
    pub fn from_json(text: &str) -> CliResult<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    /// The problem over `GF(p)(x)` or `Q(x)`, with the structural checks a
    /// well-formed file must pass. Side conditions such as `p > N1 + N2 - 2`
    /// are left to the solver.
    pub fn build<F: Field>(&self, ctx: &F::Ctx) -> CliResult<OdeProblem<RatFunc<F>>> {
        let l2 = operator::<F>(&self.l2, "l2", ctx)?;
        let linear_l1 = || -> CliResult<OdeSpec<RatFunc<F>>> {
            let l1 = self.l1.as_ref().ok_or_else(|| CliError::Invalid("l1 is required".into()))?;
            if self.solved.is_some() {
                return Err(CliError::Invalid("\"solved\" belongs to the nonlinear case".into()));
            }
            operator::<F>(l1, "l1", ctx)
        };
        if self.q.is_some() && self.case != CaseTag::Power {
            return Err(CliError::Invalid("\"q\" belongs to the power case".into()));
        }
        match self.case {
            CaseTag::Reciprocal => Ok(OdeProblem::reciprocal(linear_l1()?, l2)),
            CaseTag::Power => {
                let q = self.q.ok_or_else(|| CliError::Invalid("the power case needs \"q\"".into()))?;
                if q == 0 {
                    return Err(CliError::Invalid("q must be a positive integer".into()));
                }
                Ok(OdeProblem::power(linear_l1()?, l2, q))
            }
            CaseTag::Nonlinear => {
                if self.l1.is_some() {
                    return Err(CliError::Invalid("the nonlinear case takes \"solved\" instead of \"l1\"".into()));
                }
                let s = self.solved.as_ref().ok_or_else(|| CliError::Invalid("the nonlinear case needs \"solved\"".into()))?;
                let g = parse_relation::<F>(&s.expr, ctx).map_err(|e| CliError::parse("solved.expr", e))?;
                if s.order < 2 {
                    return Err(CliError::Invalid("solved.order must be at least 2".into()));
                }
                let spec = NonlinearSpec::new(s.order, g)?;
                let bad = spec.weight_violations();
                if !bad.is_empty() {
                    return Err(CliError::Invalid(format!(
                        "solved.expr: terms {} have weight >= {} or involve y{} or later",
                        bad.join(", "),
                        s.order,
                        s.order
                    )));
                }
                Ok(OdeProblem::nonlinear(spec, l2))
            }
        }
    }

    pub fn case(&self) -> Case {
        match self.case {
            CaseTag::Reciprocal => Case::Reciprocal,
            CaseTag::Power => Case::Power { q: self.q.unwrap_or(0) },
            CaseTag::Nonlinear => Case::Nonlinear,
        }
    }
}

/// The coefficient field named by a characteristic.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FieldChoice {
    Rational,
    Prime(u64),
}

impl FieldChoice {
    pub fn new(characteristic: u64) -> CliResult<Self> {
        if characteristic == 0 {
            return Ok(FieldChoice::Rational);
        }
        Ok(FieldChoice::Prime(Fp::modulus_checked(characteristic)?))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldChoice::Rational => 0,
            FieldChoice::Prime(p) => *p,
        }
    }
}

/// A rational constant such as `"-3/7"`.
pub fn parse_constant(text: &str, field: &str) -> CliResult<Rat> {
    let r: QFunc = parse_ratfunc::<Rat>(text, &()).map_err(|e| CliError::parse(field, e))?;
    r.as_constant().ok_or_else(|| CliError::Invalid(format!("{field}: expected a rational number, got {r}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn file(json: &str) -> ProblemFile {
        ProblemFile::from_json(json).unwrap()
    }

    #[test]
    fn text_and_list_forms_agree() {
        let a = file(r#"{"case": "reciprocal", "l1": "D^2 - 1", "l2": "x*D^2 - x"}"#).build::<Rat>(&()).unwrap();
        let b = file(r#"{"case": "reciprocal", "l1": ["1", "0", "-1"], "l2": ["x", "0", "-x"]}"#).build::<Rat>(&()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.l2.render(), "D^2 - 1");
    }

    #[test]
    fn round_trips_through_json() {
        let f = file(
            r#"{"characteristic": 0, "case": "power", "q": 2, "l1": "D^2 - 1", "l2": ["1", "0", "-4"],
                "oracle": {"x0": "0", "ics": ["1", "1"]}}"#,
        );
        assert_eq!(file(&f.to_json()), f);
        assert_eq!(f.case(), Case::Power { q: 2 });
    }

    #[test]
    fn structural_errors() {
        let bad = [
            r#"{"case": "reciprocal", "l2": "D^2 - 1"}"#,
            r#"{"case": "power", "l1": "D^2 - 1", "l2": "D^2 - 1"}"#,
            r#"{"case": "power", "q": 0, "l1": "D^2 - 1", "l2": "D^2 - 1"}"#,
            r#"{"case": "reciprocal", "q": 2, "l1": "D^2 - 1", "l2": "D^2 - 1"}"#,
            r#"{"case": "nonlinear", "l1": "D^2 - 1", "l2": "D^2 - 1"}"#,
            r#"{"case": "nonlinear", "solved": {"order": 3, "expr": "y3"}, "l2": "D^2 + 1"}"#,
            r#"{"case": "nonlinear", "solved": {"order": 3, "expr": "y1^3"}, "l2": "D^2 + 1"}"#,
            r#"{"case": "reciprocal", "l1": ["0", "1"], "l2": "D^2 - 1"}"#,
            r#"{"case": "reciprocal", "l1": ["1"], "l2": "D^2 - 1"}"#,
        ];
        for json in bad {
            let err = file(json).build::<Rat>(&()).unwrap_err();
            assert_eq!(err.exit_code(), 4, "{json}: {err}");
        }
        let err = file(r#"{"case": "reciprocal", "l1": "D^2 - 1/(x - x)", "l2": "D^2 - 1"}"#).build::<Rat>(&()).unwrap_err();
        assert_eq!(err.to_string(), "l1: line 1, column 8: zero denominator");
        assert!(ProblemFile::from_json(r#"{"case": "other", "l2": "D"}"#).is_err());
        assert!(ProblemFile::from_json(r#"{"case": "reciprocal", "l2": "D", "extra": 1}"#).is_err());
    }

    #[test]
    fn nonlinear_and_positive_characteristic() {
        let p = file(r#"{"case": "nonlinear", "solved": {"order": 3, "expr": "-y1^2 - 1"}, "l2": "D^2 + 1"}"#)
            .build::<Rat>(&())
            .unwrap();
        assert_eq!((p.n(), p.m()), (3, 2));
        let p = file(r#"{"characteristic": 5, "case": "reciprocal", "l1": "D^2 - 6", "l2": "D^2 - 1"}"#).build::<Fp>(&5).unwrap();
        assert_eq!(p.l1, logderiv::logdiff::FirstEquation::Linear(p.l2));
        assert_eq!(FieldChoice::new(4).unwrap_err().exit_code(), 4);
        assert_eq!(FieldChoice::new(7).unwrap(), FieldChoice::Prime(7));
        assert_eq!(parse_constant("-3/6", "x0").unwrap(), logderiv::basefield::rat(-1, 2));
        assert_eq!(parse_constant("x", "x0").unwrap_err().exit_code(), 4);
    }
}
