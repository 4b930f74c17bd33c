//! Structured solve reports. Every polynomial is stored in its canonical
//! text form so that reports diff cleanly and can be read back by `verify`.

use std::fmt::Write as _;

use logderiv::basefield::{DiffField, Field, RatFunc};
use logderiv::groebner::ZeroDimCertificate;
use logderiv::logdiff::{FirstEquation, OdeProblem, OdeSpec};
use logderiv::mpoly::{MPoly, OrderKind};
use logderiv::pipeline::{SolveOutcome, Timings};
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OperatorEntry {
    pub operator: String,
    /// Highest order first, leading `1` included.
    pub coefficients: Vec<String>,
}

impl OperatorEntry {
    pub fn new<K: Field>(l: &OdeSpec<K>) -> Self {
        OperatorEntry { operator: l.render(), coefficients: l.highest_first().iter().map(|c| c.to_string()).collect() }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Inputs {
    pub characteristic: u64,
    pub case: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    /// `N1` and `N2`.
    pub n: usize,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l1: Option<OperatorEntry>,
    /// `y_n = solved` in the nonlinear case.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solved: Option<String>,
    pub l2: OperatorEntry,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Hypotheses {
    pub passed: bool,
    pub violations: Vec<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CertificateSummary {
    /// Leading monomials `y_j^d`, one per variable.
    pub witnesses: Vec<String>,
    pub dimension: usize,
}

impl CertificateSummary {
    fn new(c: &ZeroDimCertificate) -> Self {
        CertificateSummary { witnesses: c.witnesses.iter().map(|m| m.to_string()).collect(), dimension: c.dimension() }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Certificate {
    /// Zero-dimensionality of the leading-form ideal, if shown.
    pub leading_form: Option<CertificateSummary>,
    /// Zero-dimensionality of the system itself, if shown.
    pub basis: Option<CertificateSummary>,
    pub term_order: String,
    pub groebner_basis: Vec<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Bounds {
    pub bezout: Option<u128>,
    pub binomial: Option<u128>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EliminantEntry {
    pub variable: usize,
    pub eliminant: String,
    pub degree: usize,
    /// `None` when the eliminant is inseparable.
    pub squarefree: Option<String>,
    pub squarefree_degree: Option<usize>,
    pub within_bezout: Option<bool>,
    pub within_binomial: Option<bool>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Number of vanishing coefficients confirmed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checked: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OracleSection {
    pub x0: String,
    pub ics: Vec<String>,
    pub order: usize,
    pub slack: usize,
    /// The series solution satisfies the input equations.
    pub premises: Vec<Check>,
    pub eliminants: Vec<Check>,
}

impl OracleSection {
    pub fn passed(&self) -> bool {
        self.premises.iter().chain(&self.eliminants).all(|c| c.passed)
    }
}

/// Microseconds per phase.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PhaseTimings {
    pub assemble_us: u64,
    pub leading_form_us: u64,
    pub groebner_us: u64,
    pub eliminants_us: u64,
}

impl PhaseTimings {
    fn new(t: &Timings) -> Self {
        let us = |d: std::time::Duration| d.as_micros() as u64;
        PhaseTimings {
            assemble_us: us(t.assemble),
            leading_form_us: us(t.leading_form),
            groebner_us: us(t.groebner),
            eliminants_us: us(t.eliminants),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SolveReport {
    pub inputs: Inputs,
    pub hypotheses: Hypotheses,
    /// Assembled equations in `y_1..y_{n-1}`, zeros dropped.
    pub equations: Vec<String>,
    pub certificate: Certificate,
    /// No `y` satisfies both equations when the ideal is the unit ideal.
    pub unit_ideal: bool,
    pub eliminants: Vec<EliminantEntry>,
    pub bounds: Bounds,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<PhaseTimings>,
}

pub fn inputs<K: DiffField>(problem: &OdeProblem<K>) -> Inputs {
    let (l1, solved) = match &problem.l1 {
        FirstEquation::Linear(l) => (Some(OperatorEntry::new(l)), None),
        FirstEquation::Nonlinear(s) => (None, Some(s.solved().to_string())),
    };
    let q = match problem.case {
        logderiv::logdiff::Case::Power { q } => Some(q),
        _ => None,
    };
    Inputs {
        characteristic: problem.characteristic(),
        case: problem.case.name().to_string(),
        q,
        n: problem.n(),
        m: problem.m(),
        l1,
        solved,
        l2: OperatorEntry::new(&problem.l2),
    }
}

impl SolveReport {
    pub fn new<F: Field>(problem: &OdeProblem<RatFunc<F>>, outcome: &SolveOutcome<RatFunc<F>>) -> Self {
        let eliminants = outcome
            .eliminants
            .iter()
            .map(|e| EliminantEntry {
                variable: e.variable,
                eliminant: MPoly::from_univariate(&e.eliminant, e.variable).to_string(),
                degree: e.degree(),
                squarefree: e.squarefree.as_ref().map(|s| MPoly::from_univariate(s, e.variable).to_string()),
                squarefree_degree: e.squarefree_degree(),
                within_bezout: e.within_bezout(),
                within_binomial: e.within_binomial(),
            })
            .collect();
        let bounds = logderiv::groebner::degree_bounds(
            problem.case,
            problem.n(),
            problem.m(),
            problem.characteristic(),
            false,
        );
        SolveReport {
            inputs: inputs(problem),
            hypotheses: Hypotheses {
                passed: outcome.hypotheses.passed(),
                violations: outcome.hypotheses.violations.iter().map(|v| v.to_string()).collect(),
            },
            equations: outcome.system.nonzero_equations().iter().map(|e| e.to_string()).collect(),
            certificate: Certificate {
                leading_form: outcome.leading_form.as_ref().map(CertificateSummary::new),
                basis: outcome.certificate.as_ref().map(CertificateSummary::new),
                term_order: order_name(outcome.basis.order().kind()).to_string(),
                groebner_basis: outcome.basis.generators().iter().map(|g| g.to_string()).collect(),
            },
            unit_ideal: outcome.unit_ideal(),
            eliminants,
            bounds: Bounds { bezout: bounds.bezout, binomial: bounds.binomial },
            oracle: None,
            timings: Some(PhaseTimings::new(&outcome.timings)),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data") + "\n"
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// The report with timings removed; identical inputs give identical text.
    pub fn comparison_form(&self) -> String {
        SolveReport { timings: None, ..self.clone() }.to_json()
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let i = &self.inputs;
        let field = if i.characteristic == 0 { "Q(x)".to_string() } else { format!("GF({})(x)", i.characteristic) };
        let _ = writeln!(s, "field: {field}");
        match i.q {
            Some(q) => {
                let _ = writeln!(s, "case: {} (q = {q})", i.case);
            }
            None => {
                let _ = writeln!(s, "case: {}", i.case);
            }
        }
        if let Some(l1) = &i.l1 {
            let _ = writeln!(s, "L1 = {}", l1.operator);
        }
        if let Some(g) = &i.solved {
            let _ = writeln!(s, "y{} = {g}", i.n);
        }
        let _ = writeln!(s, "L2 = {}", i.l2.operator);
        let _ = writeln!(s, "N1 = {}, N2 = {}", i.n, i.m);
        let _ = writeln!(s, "equations:");
        for e in &self.equations {
            let _ = writeln!(s, "  {e} = 0");
        }
        let cert = |c: &Option<CertificateSummary>| match c {
            Some(c) => format!("zero-dimensional (witnesses {}, dimension {})", c.witnesses.join(", "), c.dimension),
            None => "not shown".to_string(),
        };
        let _ = writeln!(s, "leading forms: {}", cert(&self.certificate.leading_form));
        let _ = writeln!(s, "system: {}", cert(&self.certificate.basis));
        if self.unit_ideal {
            let _ = writeln!(s, "unit ideal: no y satisfies both equations");
        }
        let show = |b: Option<u128>| b.map_or("-".to_string(), |b| b.to_string());
        let _ = writeln!(s, "bounds: bezout {}, distinct {}", show(self.bounds.bezout), show(self.bounds.binomial));
        for e in &self.eliminants {
            let sq = e.squarefree_degree.map_or("inseparable".to_string(), |d| d.to_string());
            let _ = writeln!(s, "eliminant y{}: {}", e.variable, e.eliminant);
            let _ = writeln!(s, "  degree {}, squarefree degree {sq}", e.degree);
        }
        if let Some(o) = &self.oracle {
            let _ = writeln!(s, "oracle at x0 = {}, {} terms:", o.x0, o.order);
            for c in o.premises.iter().chain(&o.eliminants) {
                let _ = writeln!(s, "  {}", render_check(c));
            }
        }
        s
    }
}

fn order_name(kind: OrderKind) -> &'static str {
    match kind {
        OrderKind::Grevlex => "grevlex",
        OrderKind::Lex => "lex",
        OrderKind::WeightedGrevlex => "weighted grevlex",
    }
}

pub fn render_check(c: &Check) -> String {
    match (c.passed, c.checked, c.first_failure) {
        (true, Some(k), _) => format!("{}: pass ({k} coefficients)", c.name),
        (false, _, Some(i)) => format!("{}: FAIL at coefficient {i}", c.name),
        (passed, ..) => format!("{}: {}", c.name, if passed { "pass" } else { "FAIL" }),
    }
}
