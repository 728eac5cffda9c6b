//! The `sgpoints` binary end to end, and its JSON against the shipped schema.

use std::io::Write;
use std::process::Command;
use std::sync::OnceLock;

use serde_json::Value;
use sgpoints::field::FieldError;
use sgpoints::shell::{exit_code_for, FieldDecl, ReportBody, ReportDocument};
use sgpoints::{Error, ProjPoint};

const FLEX: &str = "X*Y^3+X^4+Z^4";
const TWIST: &str = "X*(-2*X-Y)^3+X^4+Z^4";

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn sgpoints(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_sgpoints")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8"),
        stderr: String::from_utf8(out.stderr).expect("utf-8"),
    }
}

fn schema() -> &'static jsonschema::Validator {
    static V: OnceLock<jsonschema::Validator> = OnceLock::new();
    V.get_or_init(|| {
        let text = include_str!("../../../book/src/report-schema.json");
        let schema: Value = serde_json::from_str(text).expect("schema is JSON");
        jsonschema::validator_for(&schema).expect("schema compiles")
    })
}

/// Runs with `--json`, validates against the schema and round-trips the
/// document.
fn json(args: &[&str]) -> (i32, ReportDocument) {
    let mut all = args.to_vec();
    all.push("--json");
    let run = sgpoints(&all);
    let value: Value = serde_json::from_str(&run.stdout).unwrap_or_else(|e| panic!("{e}: {}", run.stdout));
    let errors: Vec<String> = schema().iter_errors(&value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "schema violations: {errors:?}");
    let doc = ReportDocument::from_json(&run.stdout).expect("document parses");
    assert_eq!(ReportDocument::from_json(&doc.to_json()).unwrap(), doc);
    assert_eq!(doc.exit_code, run.code);
    (run.code, doc)
}

#[test]
fn two_circles_have_three_outer_points() {
    let args = ["sg-outer-conics", "--c1", "X^2+Y^2-Z^2", "--c2", "X^2+Y^2-4*Y*Z+3*Z^2"];
    let run = sgpoints(&args);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("outer SG points: 3"), "{}", run.stdout);
    let (_, doc) = json(&args);
    let ReportBody::SgOuterConics { points, duals, .. } = doc.result else { panic!("wrong kind") };
    assert_eq!(duals[1], "X^2 - 3*Y^2 - 4*Y*Z - Z^2");
    let texts: Vec<&str> = points.iter().map(|p| p.point.text.as_str()).collect();
    assert_eq!(texts, ["(-1:1:1)", "(0:1:0)", "(1:1:1)"]);
    // Coordinates read back over the declared field.
    let decl = FieldDecl::parse(&doc.field).unwrap();
    let back = points[1].point.to_point(decl.tower()).unwrap();
    assert!(back.same_as(&ProjPoint::from_ints(decl.tower(), 0, 1, 0).unwrap()).unwrap());
}

#[test]
fn flex_quartic_and_twist_share_an_sg_point() {
    let args = ["sg-check", "--c1", FLEX, "--c2", TWIST, "--point", "(0:1:0)"];
    let run = sgpoints(&args);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("SG point: yes"));
    let (_, doc) = json(&args);
    let ReportBody::SgCheck { is_sg, point_kind, witnesses, galois, .. } = doc.result else { panic!() };
    assert_eq!(is_sg, Some(true));
    assert_eq!(point_kind, "inner");
    assert_eq!(witnesses.len(), 3);
    assert!(galois.iter().all(|g| g.is_galois && g.group_order == 3));
}

#[test]
fn fermat_quartic_has_no_galois_point_at_one_one_one() {
    let args = ["galois-check", "--curve", "X^4+Y^4+Z^4", "--point", "(1:1:1)"];
    assert_eq!(sgpoints(&args).code, 1);
    let (code, doc) = json(&args);
    assert_eq!(code, 1);
    let ReportBody::GaloisCheck { verdict, .. } = doc.result else { panic!() };
    assert!(!verdict.is_galois);
    let (code, _) = json(&["galois-check", "--curve", "X^4+Y^4+Z^4", "--point", "(0:0:1)"]);
    assert_eq!(code, 0);
}

#[test]
fn supplied_witness_is_verified_without_a_search() {
    let base = ["sg-check", "--c1", FLEX, "--c2", TWIST, "--point", "(0:1:0)", "--witness"];
    let good: Vec<&str> = base.iter().copied().chain(["1,0,0,-2,-1,0,0,0,1"]).collect();
    let (code, doc) = json(&good);
    assert_eq!(code, 0);
    let ReportBody::SgCheck { is_sg, witness_valid, witnesses, .. } = doc.result else { panic!() };
    assert_eq!((is_sg, witness_valid, witnesses.len()), (None, Some(true), 1));
    let bad: Vec<&str> = base.iter().copied().chain(["[[1,0,0],[2,-1,0],[0,0,1]]"]).collect();
    let (code, doc) = json(&bad);
    assert_eq!(code, 1);
    let ReportBody::SgCheck { witness_valid, .. } = doc.result else { panic!() };
    assert_eq!(witness_valid, Some(false));
}

#[test]
fn enumeration_reports_completeness_and_flags() {
    let (code, doc) = json(&["sg-enumerate", "--c1", FLEX, "--c2", TWIST]);
    assert_eq!(code, 0);
    let ReportBody::SgEnumerate { inner, outer, completeness, flags, .. } = doc.result else { panic!() };
    let texts: Vec<&str> = inner.iter().map(|p| p.point.text.as_str()).collect();
    assert_eq!(texts, ["(-1:1:0)", "(0:1:0)"]);
    assert!(outer.is_empty());
    assert_eq!(completeness.label, "knowledge-base");
    assert!(completeness.inner_complete);
    assert!(flags.iter().all(|f| f.holds));
}

#[test]
fn candidates_give_a_heuristic_enumeration() {
    let c1 = "X^3+Y^3+Z^3+X*Y*Z";
    let c2 = "X^3+Y^3+Z^3+2*X*Y*Z";
    let run = sgpoints(&["sg-enumerate", "--c1", c1, "--c2", c2]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("no-candidate-source"), "{}", run.stderr);
    let (code, doc) = json(&["sg-enumerate", "--c1", c1, "--c2", c2, "--candidates", "(1:-1:0);(0:0:1)"]);
    assert_eq!(code, 0);
    let ReportBody::SgEnumerate { completeness, candidates, .. } = doc.result else { panic!() };
    assert_eq!(completeness.label, "heuristic");
    assert_eq!(candidates.len(), 2);
}

#[test]
fn input_file_supplies_options_and_flags_override_it() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# two circles").unwrap();
    writeln!(f, "c1: X^2+Y^2-Z^2").unwrap();
    writeln!(f, "c2: X^2+Y^2-4*Y*Z+3*Z^2").unwrap();
    let path = f.path().to_str().unwrap();
    let run = sgpoints(&["sg-outer-conics", "--in", path]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("outer SG points: 3"));
    let run = sgpoints(&["sg-outer-conics", "--in", path, "--c2", "X^2-4*Y*Z"]);
    assert_eq!(run.code, 0);
    assert!(!run.stdout.contains("outer SG points: 3"));
}

#[test]
fn field_flag_and_inference() {
    let run = sgpoints(&["dual", "--conic", "X^2 + zeta4*Y^2 - Z^2"]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.starts_with("field: Q(zeta4)"), "{}", run.stdout);
    let (_, doc) = json(&["dual", "--field", "Q(sqrt2)", "--conic", "X^2 + sqrt2*Y^2 - Z^2"]);
    assert_eq!(doc.field, "Q(sqrt2)");
    let run = sgpoints(&["dual", "--field", "Q", "--conic", "X^2 + sqrt2*Y^2 - Z^2"]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("unknown-generator"));
}

#[test]
fn errors_have_their_own_exit_codes() {
    let (code, doc) = json(&["dual", "--conic", "X^2 + * Y^2"]);
    assert_eq!(code, 2);
    let ReportBody::Error { error_kind, message } = doc.result else { panic!() };
    assert_eq!(error_kind, "syntax");
    assert!(message.contains("position 6"), "{message}");
    let (code, doc) = json(&["dual", "--conic", "X^2+Y^2"]);
    assert_eq!(code, 2);
    assert!(matches!(doc.result, ReportBody::Error { ref error_kind, .. } if error_kind == "singular-conic"));
    assert_eq!(sgpoints(&["dual"]).code, 2);
    assert_eq!(sgpoints(&["no-such-command"]).code, 2);
    let help = sgpoints(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("sg-enumerate"));
    assert_eq!(exit_code_for(&Error::Field(FieldError::Unresolved("budget".into()))), 3);
}

#[test]
fn every_json_document_kind_matches_the_schema() {
    for args in [
        vec!["dual", "--conic", "X^2+Y^2-Z^2"],
        vec!["intersect", "--c1", "X^2+Y^2-Z^2", "--c2", "X^2+2*Y^2-3*Z^2"],
    ] {
        let (code, _) = json(&args);
        assert_eq!(code, 0);
    }
    let (_, doc) = json(&["intersect", "--c1", "X^2+Y^2-Z^2", "--c2", "X^2+2*Y^2-3*Z^2"]);
    let ReportBody::Intersect { total_multiplicity, points } = doc.result else { panic!() };
    assert_eq!((total_multiplicity, points.len()), (4, 4));
    let mut broken: Value = serde_json::from_str(&ReportDocument::new("dual", "Q", 0, ReportBody::Dual {
        conic: "X^2".into(),
        dual: "Y^2".into(),
    })
    .to_json())
    .unwrap();
    assert!(schema().is_valid(&broken));
    broken["result"].as_object_mut().unwrap().remove("dual");
    assert!(!schema().is_valid(&broken));
}

#[test]
fn paper_suite_passes() {
    let (code, doc) = json(&["paper-suite"]);
    let ReportBody::PaperSuite { rows, all_pass } = doc.result else { panic!() };
    let failing: Vec<String> = rows.iter().filter(|r| r.status != "pass").map(|r| format!("{}: {}", r.id, r.detail)).collect();
    assert!(failing.is_empty(), "{failing:?}");
    assert_eq!((code, all_pass, rows.len()), (0, true, 11));
}
