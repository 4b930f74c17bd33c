use std::path::{Path, PathBuf};
use std::process::Command;

use logderiv::basefield::{Rat, RatFunc, UPoly};
use logderiv::QFunc;
use logderiv_cli::commands::{solve_exit_code, solve_problem};
use logderiv_cli::parse::parse_ratfunc;
use logderiv_cli::problem::ProblemFile;
use logderiv_cli::report::SolveReport;
use proptest::prelude::*;

fn problems() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../problems")
}

fn problem(name: &str) -> PathBuf {
    problems().join(name)
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn logderiv(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_logderiv")).args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn exit_zero_with_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let r = logderiv(&["solve", path_str(&problem("exp_pair.json")), "--out", path_str(&out)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("eliminant y1: y1^2 - 1\n  degree 2, squarefree degree 2\n"), "{}", r.stdout);
    assert!(r.stdout.contains("bounds: bezout 2, distinct 2"));
    let report = SolveReport::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report.eliminants[0].eliminant, "y1^2 - 1");
    assert_eq!((report.bounds.bezout, report.bounds.binomial), (Some(2), Some(2)));
    assert!(report.oracle.unwrap().passed());
}

#[test]
fn exit_two_for_hypotheses_and_squarefreeness() {
    let r = logderiv(&["solve", path_str(&problem("exp_pair_char2.json"))]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("p > N1 + N2 - 2"), "{}", r.stderr);
    let r = logderiv(&["solve", path_str(&problem("exp_pair.json")), "--char", "2"]);
    assert_eq!(r.code, 2);
    let r = logderiv(&["converse", "--f", "(T-1)^2"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("not squarefree"), "{}", r.stderr);
}

#[test]
fn exit_two_for_a_singular_expansion_point() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let r = logderiv(&["solve", path_str(&problem("line.json")), "--out", path_str(&report)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let mut file = ProblemFile::load(&problem("line.json")).unwrap();
    file.oracle.as_mut().unwrap().x0 = Some("0".into());
    let at_zero = write(&dir, "at_zero.json", &file.to_json());
    let r = logderiv(&["verify", path_str(&at_zero), "--report", path_str(&report)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("singular"), "{}", r.stderr);
}

#[test]
fn exit_three_means_an_empty_variety() {
    let file = ProblemFile::load(&problem("mismatched.json")).unwrap();
    let mut report = solve_problem(&file, true).unwrap();
    // The pair D^2 - 1, D^2 - 9 has no common solution, yet the single
    // equation 2 y1^2 - 10 leaves a nonempty variety.
    assert!(!report.unit_ideal);
    assert_eq!(report.equations, ["2*y1^2 - 10"]);
    assert_eq!(report.eliminants[0].eliminant, "y1^2 - 5");
    assert_eq!(solve_exit_code(&report), 0);
    let r = logderiv(&["solve", path_str(&problem("mismatched.json"))]);
    assert_eq!(r.code, 0);
    report.unit_ideal = true;
    report.eliminants.clear();
    assert_eq!(solve_exit_code(&report), 3);
}

#[test]
fn exit_four_for_unreadable_input() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("syntax.json", r#"{"case": "reciprocal", "l1": "D^2 - 1/(x - x)", "l2": "D^2 - 1"}"#),
        ("json.json", r#"{"case": "reciprocal", "l1": "D^2 - 1""#),
        ("fields.json", r#"{"case": "reciprocal", "l2": "D^2 - 1"}"#),
        ("modulus.json", r#"{"characteristic": 6, "case": "reciprocal", "l1": "D^2", "l2": "D^2"}"#),
    ];
    for (name, text) in cases {
        let r = logderiv(&["solve", path_str(&write(&dir, name, text))]);
        assert_eq!(r.code, 4, "{name}: {}", r.stderr);
    }
    let r = logderiv(&["solve", path_str(&write(&dir, "s.json", cases[0].1))]);
    assert!(r.stderr.contains("l1: line 1, column 8: zero denominator"), "{}", r.stderr);
    assert_eq!(logderiv(&["converse", "--f", "T^2 - "]).code, 4);
}

#[test]
fn exit_one_for_a_failed_verification() {
    let dir = tempfile::tempdir().unwrap();
    let report_path = dir.path().join("report.json");
    let exp = problem("exp_pair.json");
    assert_eq!(logderiv(&["solve", path_str(&exp), "--out", path_str(&report_path)]).code, 0);
    let r = logderiv(&["verify", path_str(&exp), "--report", path_str(&report_path)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("eliminant y1: pass"), "{}", r.stdout);

    let mut report = SolveReport::from_json(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    report.eliminants[0].eliminant = "y1^2 + 1".into();
    let tampered = write(&dir, "tampered.json", &report.to_json());
    let r = logderiv(&["verify", path_str(&exp), "--report", path_str(&tampered)]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("eliminant y1: FAIL at coefficient 0"), "{}", r.stdout);
}

#[test]
fn verify_square_root_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let file = problem("sqrt_x.json");
    assert_eq!(logderiv(&["solve", path_str(&file), "--out", path_str(&report), "--no-oracle"]).code, 0);
    let r = logderiv(&["verify", path_str(&file), "--report", path_str(&report)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("eliminant y1: pass"));
    // a report for another problem is refused
    let other = problem("line.json");
    assert_eq!(logderiv(&["verify", path_str(&other), "--report", path_str(&report)]).code, 4);
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["exp_pair.json", "nonlinear.json", "third_order.json", "sqrt_x.json"] {
        let a = dir.path().join("a.json");
        let b = dir.path().join("b.json");
        for out in [&a, &b] {
            assert_eq!(logderiv(&["solve", path_str(&problem(name)), "--out", path_str(out)]).code, 0);
        }
        let ra = SolveReport::from_json(&std::fs::read_to_string(&a).unwrap()).unwrap();
        let rb = SolveReport::from_json(&std::fs::read_to_string(&b).unwrap()).unwrap();
        assert_eq!(ra.comparison_form(), rb.comparison_form(), "{name}");
        let text = std::fs::read_to_string(&a).unwrap();
        assert_eq!(SolveReport::from_json(&text).unwrap().to_json(), text, "{name}");
        assert_eq!(SolveReport::from_json(&text).unwrap(), ra);
        assert!(ra.timings.is_some() && !ra.comparison_form().contains("_us"));
    }
}

#[test]
fn characteristic_override() {
    let r = logderiv(&["solve", path_str(&problem("exp_pair.json")), "--char", "5"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("field: GF(5)(x)"));
    assert!(r.stdout.contains("eliminant y1: y1^2 - 1\n"));
    assert!(r.stdout.contains("bounds: bezout 2, distinct -"));
    assert!(!r.stdout.contains("oracle"));
}

#[test]
fn pn_and_converse_commands() {
    assert_eq!(logderiv(&["pn", "--n", "3"]).stdout, "-6*y1^3 + 6*y1*y2 - y3\n");
    assert_eq!(logderiv(&["pn", "--n", "2", "--q", "2"]).stdout, "2*y1^2 + 2*y2\n");
    assert_eq!(logderiv(&["pn", "--n", "0"]).stdout, "1\n");
    let r = logderiv(&["converse", "--f", "T^2 - x"]);
    assert_eq!(r.code, 0);
    assert_eq!(
        r.stdout,
        "f = T^2 - x\nL1 = D^2 - (1/(2*x))*D - x\nL2 = D^2 - (1/(2*x))*D - x\n\
         l1: [\"1\",\"-1/(2*x)\",\"-x\"]\nl2: [\"1\",\"-1/(2*x)\",\"-x\"]\n"
    );
    let r = logderiv(&["converse", "--f", "T - 5"]);
    assert!(r.stdout.contains("L1 = D - 5\nL2 = D + 5\n"), "{}", r.stdout);
}

#[test]
fn converse_output_solves_back() {
    // the coefficient list printed by converse is a valid operator input
    let r = logderiv(&["converse", "--f", "T^2 - x"]);
    let l1 = r.stdout.lines().find_map(|l| l.strip_prefix("l1: ")).unwrap();
    let text = format!(r#"{{"case": "reciprocal", "l1": {l1}, "l2": {l1}, "oracle": {{"x0": "1", "ics": ["1", "1"]}}}}"#);
    let report = solve_problem(&ProblemFile::from_json(&text).unwrap(), true).unwrap();
    assert_eq!(report.eliminants[0].eliminant, "y1^2 - x");
    assert!(report.oracle.unwrap().passed());
}

fn small_poly() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-20i64..=20, 1..5)
}

fn ratfunc(num: &[i64], den: &[i64]) -> Option<QFunc> {
    let d = UPoly::<Rat>::from_ints(den, &());
    (!d.is_zero()).then(|| RatFunc::new(UPoly::from_ints(num, &()), d).unwrap())
}

proptest! {
    #[test]
    fn rendering_reparses(num in small_poly(), den in small_poly(), scale in 1i64..50) {
        if let Some(r) = ratfunc(&num, &den) {
            let r = r / QFunc::from_poly(UPoly::from_ints(&[scale], &()));
            let back = parse_ratfunc::<Rat>(&r.to_string(), &()).unwrap();
            prop_assert_eq!(back, r);
        }
    }

    #[test]
    fn parsing_is_arithmetic(a in small_poly(), b in small_poly(), c in small_poly()) {
        let show = |p: &[i64]| format!("({})", UPoly::<Rat>::from_ints(p, &()).render("x"));
        let text = format!("{} * {} - {}", show(&a), show(&b), show(&c));
        let expected = QFunc::from_poly(&(&UPoly::from_ints(&a, &()) * &UPoly::from_ints(&b, &())) - &UPoly::from_ints(&c, &()));
        prop_assert_eq!(parse_ratfunc::<Rat>(&text, &()).unwrap(), expected);
    }
}
