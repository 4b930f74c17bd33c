//! The subcommands, as functions from arguments to text and an exit code.

use std::path::{Path, PathBuf};

use logderiv::basefield::{Field, Fp, Rat, RatFunc, UPoly};
use logderiv::converse::converse;
use logderiv::logdiff::{p_power, p_reciprocal, Case, FirstEquation, OdeProblem};
use logderiv::mpoly::MPoly;
use logderiv::oracle::{self, InitialConditions, Series, Verdict};
use logderiv::pipeline::{self, SolveOptions};
use logderiv::QFunc;

use crate::parse::{parse_relation, parse_upoly_t};
use crate::problem::{parse_constant, FieldChoice, OracleBlock, ProblemFile};
use crate::report::{inputs, render_check, Check, OracleSection, SolveReport};
use crate::{CliError, CliResult};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_UNIT_IDEAL: i32 = 3;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Output {
    pub stdout: String,
    pub exit: i32,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SolveArgs {
    pub file: PathBuf,
    pub out: Option<PathBuf>,
    pub characteristic: Option<u64>,
    pub no_oracle: bool,
}

fn solve_in<F: Field>(file: &ProblemFile, ctx: &F::Ctx) -> CliResult<(OdeProblem<RatFunc<F>>, SolveReport)> {
    let problem = file.build::<F>(ctx)?;
    let outcome = pipeline::solve(&problem, &SolveOptions::default())?;
    let report = SolveReport::new(&problem, &outcome);
    Ok((problem, report))
}

/// Runs the pipeline on a problem file. The oracle runs in characteristic 0
/// when the file has an oracle block and `with_oracle` is set.
pub fn solve_problem(file: &ProblemFile, with_oracle: bool) -> CliResult<SolveReport> {
    match FieldChoice::new(file.characteristic)? {
        FieldChoice::Prime(p) => Ok(solve_in::<Fp>(file, &p)?.1),
        FieldChoice::Rational => {
            let (problem, mut report) = solve_in::<Rat>(file, &())?;
            if let (true, Some(block)) = (with_oracle, &file.oracle) {
                let eliminants = report
                    .eliminants
                    .iter()
                    .map(|e| read_eliminant(&e.eliminant, e.variable))
                    .collect::<CliResult<Vec<_>>>()?;
                report.oracle = Some(run_oracle(&problem, block, &eliminants)?);
            }
            Ok(report)
        }
    }
}

pub fn solve(args: &SolveArgs) -> CliResult<Output> {
    let mut file = ProblemFile::load(&args.file)?;
    if let Some(p) = args.characteristic {
        file.characteristic = p;
    }
    let report = solve_problem(&file, !args.no_oracle)?;
    if let Some(out) = &args.out {
        std::fs::write(out, report.to_json())?;
    }
    Ok(Output { stdout: report.render_text(), exit: solve_exit_code(&report) })
}

/// 3 for an empty variety, 1 if the oracle disagrees, 0 otherwise.
pub fn solve_exit_code(report: &SolveReport) -> i32 {
    if report.unit_ideal {
        EXIT_UNIT_IDEAL
    } else if report.oracle.as_ref().is_some_and(|o| !o.passed()) {
        EXIT_FAILED
    } else {
        EXIT_OK
    }
}

fn read_eliminant(text: &str, variable: usize) -> CliResult<(usize, UPoly<QFunc>)> {
    let field = format!("eliminant y{variable}");
    let g = parse_relation::<Rat>(text, &()).map_err(|e| CliError::parse(&field, e))?;
    let u = g.to_univariate(variable).ok_or_else(|| CliError::Invalid(format!("{field}: involves other variables")))?;
    Ok((variable, u))
}

fn check(name: String, v: Verdict) -> Check {
    match v {
        Verdict::Pass { checked } => Check { name, passed: true, checked: Some(checked), first_failure: None },
        Verdict::Fail { index } => Check { name, passed: false, checked: None, first_failure: Some(index) },
    }
}

fn first_equation_coeffs(problem: &OdeProblem<QFunc>) -> Vec<QFunc> {
    let mut coeffs: Vec<QFunc> = problem.l2.lower_coeffs().to_vec();
    match &problem.l1 {
        FirstEquation::Linear(l) => coeffs.extend_from_slice(l.lower_coeffs()),
        FirstEquation::Nonlinear(s) => coeffs.extend(s.solved().terms().map(|(_, c)| c.clone())),
    }
    coeffs
}

/// Expands the solution with the given jet, checks it against both input
/// equations and substitutes it into each eliminant.
pub fn run_oracle(problem: &OdeProblem<QFunc>, block: &OracleBlock, eliminants: &[(usize, UPoly<QFunc>)]) -> CliResult<OracleSection> {
    let x0 = match &block.x0 {
        Some(t) => parse_constant(t, "oracle.x0")?,
        None => oracle::suggest_x0(&first_equation_coeffs(problem)),
    };
    let ics = block
        .ics
        .iter()
        .enumerate()
        .map(|(i, t)| parse_constant(t, &format!("oracle.ics[{i}]")))
        .collect::<CliResult<Vec<_>>>()?;
    let order = block.order.unwrap_or(oracle::DEFAULT_ORDER);
    let slack = block.slack.unwrap_or(oracle::DEFAULT_SLACK);
    let ics_init = InitialConditions::new(ics.clone())?;
    let n = problem.n();

    let mut premises = Vec::new();
    let y: Series = match &problem.l1 {
        FirstEquation::Linear(l1) => {
            let y = oracle::series_solve(l1, &ics_init, &x0, order)?;
            premises.push(check("L1(y)".into(), oracle::verify_annihilator(l1, &y, slack)?));
            y
        }
        FirstEquation::Nonlinear(s) => {
            let y = oracle::series_solve_solved(s, &ics_init, &x0, order)?;
            let qs = oracle::quotient_series(&y, n)?;
            let rhs = oracle::eval_at_series(s.solved(), &qs, &x0, qs[n - 1].order())?;
            let residual = qs[n - 1].sub(&rhs);
            let required = residual.order().saturating_sub(slack);
            let v = match residual.truncate(required).valuation() {
                None => Verdict::Pass { checked: required },
                Some(index) => Verdict::Fail { index },
            };
            premises.push(check(format!("y{n} = {}", s.solved()), v));
            y
        }
    };
    let (target, name) = match problem.case {
        Case::Power { q } => (y.pow(q), format!("L2(y^{q})")),
        Case::Reciprocal | Case::Nonlinear => (y.inverse()?, "L2(1/y)".to_string()),
    };
    premises.push(check(name, oracle::verify_annihilator(&problem.l2, &target, slack)?));

    let qs = oracle::quotient_series(&y, n.saturating_sub(1))?;
    let mut checks = Vec::new();
    for (j, g) in eliminants {
        let u = qs.get(j - 1).ok_or(logderiv::Error::VariableOutOfRange { index: *j, max: qs.len() })?;
        checks.push(check(format!("eliminant y{j}"), oracle::verify_eliminant(g, u, slack)?));
    }
    Ok(OracleSection {
        x0: x0.to_string(),
        ics: ics.iter().map(|c| c.to_string()).collect(),
        order,
        slack,
        premises,
        eliminants: checks,
    })
}

/// Re-checks the eliminants of a stored report against a fresh series solution.
pub fn verify(problem_path: &Path, report_path: &Path) -> CliResult<Output> {
    let file = ProblemFile::load(problem_path)?;
    let report = SolveReport::from_json(&std::fs::read_to_string(report_path)?)?;
    let block = file.oracle.as_ref().ok_or_else(|| CliError::Invalid("the problem file has no oracle block".into()))?;
    if file.characteristic != 0 {
        return Err(logderiv::Error::PositiveCharacteristic.into());
    }
    let problem = file.build::<Rat>(&())?;
    if inputs(&problem) != report.inputs {
        return Err(CliError::Invalid("the report was produced for a different problem".into()));
    }
    let eliminants = report
        .eliminants
        .iter()
        .map(|e| read_eliminant(&e.eliminant, e.variable))
        .collect::<CliResult<Vec<_>>>()?;
    let section = run_oracle(&problem, block, &eliminants)?;
    let mut stdout = String::new();
    for c in section.premises.iter().chain(&section.eliminants) {
        stdout.push_str(&render_check(c));
        stdout.push('\n');
    }
    let exit = if section.passed() { EXIT_OK } else { EXIT_FAILED };
    Ok(Output { stdout, exit })
}

fn converse_in<F: Field>(text: &str, ctx: &F::Ctx) -> CliResult<String> {
    let f = parse_upoly_t::<F>(text, ctx).map_err(|e| CliError::parse("f", e))?;
    let Some(lead) = f.leading().filter(|_| f.degree() > Some(0)) else {
        return Err(CliError::Invalid("f must have degree at least 1 in T".into()));
    };
    let f = f.scale(&lead.inv().expect("nonzero leading coefficient"));
    let pair = converse(&f)?;
    let list = |l: &logderiv::logdiff::OdeSpec<RatFunc<F>>| {
        serde_json::to_string(&l.highest_first().iter().map(|c| c.to_string()).collect::<Vec<_>>()).expect("strings")
    };
    Ok(format!(
        "f = {}\nL1 = {}\nL2 = {}\nl1: {}\nl2: {}\n",
        f.render("T"),
        pair.l1.render(),
        pair.l2.render(),
        list(&pair.l1),
        list(&pair.l2)
    ))
}

/// Operators for `y` and `1/y` when `y'/y` is a root of `f`.
pub fn converse_command(f: &str, characteristic: u64) -> CliResult<Output> {
    let stdout = match FieldChoice::new(characteristic)? {
        FieldChoice::Rational => converse_in::<Rat>(f, &())?,
        FieldChoice::Prime(p) => converse_in::<Fp>(f, &p)?,
    };
    Ok(Output { stdout, exit: EXIT_OK })
}

/// `p_n` (or `p_{n,q}`) in canonical form.
pub fn pn(n: usize, q: Option<u32>) -> CliResult<String> {
    let p: MPoly<QFunc> = match q {
        None => p_reciprocal(n, &())?,
        Some(q) => p_power(n, q, &())?,
    };
    Ok(p.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pn_examples() {
        assert_eq!(pn(3, None).unwrap(), "-6*y1^3 + 6*y1*y2 - y3");
        assert_eq!(pn(2, Some(2)).unwrap(), "2*y1^2 + 2*y2");
        assert_eq!(pn(0, None).unwrap(), "1");
    }

    #[test]
    fn converse_examples() {
        let out = converse_command("T^2 - x", 0).unwrap().stdout;
        assert!(out.contains("L1 = D^2 - (1/(2*x))*D - x\nL2 = D^2 - (1/(2*x))*D - x\n"), "{out}");
        let out = converse_command("T - 5", 0).unwrap().stdout;
        assert!(out.contains("L1 = D - 5\nL2 = D + 5\n"), "{out}");
        assert!(out.contains("l1: [\"1\",\"-5\"]"), "{out}");
        assert_eq!(converse_command("(T-1)^2", 0).unwrap_err().exit_code(), 2);
        assert_eq!(converse_command("2*T - 10", 0).unwrap(), converse_command("T - 5", 0).unwrap());
        assert_eq!(converse_command("x", 0).unwrap_err().exit_code(), 4);
        assert_eq!(converse_command("T^5 - x", 5).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn oracle_sections() {
        let file = ProblemFile::from_json(
            r#"{"case": "reciprocal", "l1": "D^2 - 1", "l2": "D^2 - 1", "oracle": {"x0": "0", "ics": ["1", "1"]}}"#,
        )
        .unwrap();
        let report = solve_problem(&file, true).unwrap();
        let o = report.oracle.as_ref().unwrap();
        assert!(o.passed());
        assert_eq!(o.premises.len(), 2);
        assert_eq!(o.eliminants[0].checked, Some(31));
        assert!(solve_problem(&file, false).unwrap().oracle.is_none());
        // y = e^x + e^(-x) solves L1 but its reciprocal does not solve L2
        let mut other = file.clone();
        other.oracle.as_mut().unwrap().ics = vec!["2".into(), "0".into()];
        let o = solve_problem(&other, true).unwrap().oracle.unwrap();
        assert!(o.premises[0].passed && !o.premises[1].passed);
    }
}
