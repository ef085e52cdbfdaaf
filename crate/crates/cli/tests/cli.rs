use std::path::{Path, PathBuf};
use std::process::Command;

use contact_pairs::fixtures::{load_fixture, FIXTURE_NAMES};
use contact_pairs_cli::{fixture_document, parse, run_text, CliError};
use serde_json::{json, Value};

fn reference(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../reference").join(format!("{name}.json"))
}

fn cpair(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cpair")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn write_temp(dir: &tempfile::TempDir, name: &str, v: &Value) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p.display().to_string()
}

#[test]
fn reference_files_match_the_fixtures() {
    for name in FIXTURE_NAMES {
        let text = std::fs::read_to_string(reference(name)).unwrap();
        let doc = parse(&text).unwrap();
        assert_eq!(doc, fixture_document(name).unwrap(), "{name}: regenerate with --export");
        let parsed = doc.validate().unwrap();
        let fx = load_fixture(name).unwrap();
        assert_eq!(parsed.algebra, fx.algebra, "{name}");
        assert_eq!(parsed.forms, fx.forms, "{name}");
        assert_eq!(parsed.endomorphisms, fx.endomorphisms, "{name}");
    }
}

#[test]
fn reference_files_pass() {
    for name in FIXTURE_NAMES {
        let path = reference(name);
        let (code, out, err) = cpair(&["--input", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{name}: {out}{err}");
    }
}

#[test]
fn machine_output_is_byte_identical() {
    for name in FIXTURE_NAMES {
        let path = reference(name);
        let a = cpair(&["--input", path.to_str().unwrap(), "--format", "machine"]);
        let b = cpair(&["--input", path.to_str().unwrap(), "--format", "machine"]);
        assert_eq!(a, b, "{name}");
        let v: Value = serde_json::from_str(&a.1).unwrap();
        assert_eq!(v["status"], "pass");
    }
}

#[test]
fn verified_false_exits_one() {
    let (code, out, _) = cpair(&["--fixture", "solvable6", "--task", "normality"]);
    // the fixture document's own task is normality, so its expectations still apply
    assert_eq!(code, 0, "{out}");
    let text = std::fs::read_to_string(reference("solvable6")).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["task"] = json!({"op": "normality"});
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(&dir, "s.json", &v);
    let (code, out, _) = cpair(&["--input", &p, "--format", "machine"]);
    assert_eq!(code, 1);
    let r: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(r["verdicts"]["eq11_holds"], false);
    assert_eq!(r["witnesses"]["eq11_holds"]["residual"], json!(["0", "0", "0", "1", "0", "1"]));
}

#[test]
fn semantic_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad_fraction = json!({
        "dim": 3,
        "structure": [{"target": 3, "terms": [{"i": 1, "j": 2, "coeff": "1/0"}]}],
        "task": {"op": "reeb"}
    });
    let p = write_temp(&dir, "a.json", &bad_fraction);
    let (code, _, err) = cpair(&["--input", &p]);
    assert_eq!(code, 2);
    assert!(err.contains("invalid document"), "{err}");

    let not_antisymmetric = json!({
        "dim": 3,
        "constants": [{"i": 1, "j": 2, "k": 3, "coeff": "1"}, {"i": 2, "j": 1, "k": 3, "coeff": "1"}],
        "task": {"op": "reeb"}
    });
    let p = write_temp(&dir, "b.json", &not_antisymmetric);
    assert_eq!(cpair(&["--input", &p]).0, 2);

    let out_of_range = json!({"dim": 2, "forms": {"a": {"3": "1"}}, "task": {"op": "reeb"}});
    let p = write_temp(&dir, "c.json", &out_of_range);
    assert_eq!(cpair(&["--input", &p]).0, 2);

    // [e1,e2] = e3, [e1,e3] = e1 violates Jacobi
    let no_jacobi = json!({
        "dim": 3,
        "constants": [{"i": 1, "j": 2, "k": 3, "coeff": "1"}, {"i": 1, "j": 3, "k": 1, "coeff": "1"}, {"i": 2, "j": 3, "k": 2, "coeff": "1"}],
        "task": {"op": "reeb"}
    });
    let p = write_temp(&dir, "d.json", &no_jacobi);
    let (code, _, err) = cpair(&["--input", &p]);
    assert_eq!(code, 2);
    assert!(err.contains("Jacobi"), "{err}");
}

#[test]
fn syntax_errors_carry_position() {
    match run_text("{\n  \"dim\": 3,\n  oops\n}", None, Path::new(".")) {
        Err(CliError::Syntax { line, column, .. }) => assert_eq!((line, column), (3, 3)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn extend_output_reparses_and_verifies() {
    let path = reference("flat3");
    let (code, out, _) = cpair(&["--input", path.to_str().unwrap(), "--format", "machine"]);
    assert_eq!(code, 0);
    let r: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(r["values"]["kind"], json!([1, 0]));
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(&dir, "ext.json", &r["document"]);
    let (code, out, _) = cpair(&["--input", &p, "--format", "machine"]);
    assert_eq!(code, 0, "{out}");
    let r: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(r["verdicts"]["pair_normal"], true);
    assert_eq!(cpair(&["--input", &p, "--task", "verify-structure"]).0, 0);
    assert_eq!(cpair(&["--input", &p, "--task", "decomposable"]).0, 0);
}

#[test]
fn product_of_files() {
    let dir = tempfile::tempdir().unwrap();
    let heis = std::fs::read_to_string(reference("heisenberg3")).unwrap();
    std::fs::write(dir.path().join("heis.json"), heis).unwrap();
    let doc = json!({"dim": 1, "task": {"op": "product", "args": {"left": "heis.json", "right": "heis.json"},
        "expect": {"kind": [1, 1], "pair_normal": true}}});
    let p = write_temp(&dir, "prod.json", &doc);
    let (code, out, err) = cpair(&["--input", &p]);
    assert_eq!(code, 0, "{out}{err}");
}

#[test]
fn classification_tasks() {
    let dir = tempfile::tempdir().unwrap();
    let r4 = json!({"dim": 4, "forms": {
        "alpha1": {"1": "1"}, "alpha2": {"2": "1"},
        "omega1": {"1,2": "1"}, "omega2": {"3,4": "1"}
    }, "task": {"op": "classify-pair"}});
    let p = write_temp(&dir, "r4.json", &r4);
    let (code, out, _) = cpair(&["--input", &p]);
    assert_eq!(code, 1, "abelian pair must fail the volume condition: {out}");
    let (code, out, _) = cpair(&["--input", &p, "--task", "classify-symplectic", "--format", "machine"]);
    assert_eq!(code, 0);
    let r: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(r["values"]["kind"], json!([1, 1]));

    let flat = reference("flat3");
    let (code, out, _) = cpair(&["--input", flat.to_str().unwrap(), "--task", "classify-cs", "--format", "machine"]);
    assert_eq!(code, 0);
    let r: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(r["values"]["reeb"], json!(["0", "0", "1"]));

    let sol = reference("solvable6");
    let (code, out, _) = cpair(&["--input", sol.to_str().unwrap(), "--task", "reeb", "--format", "machine"]);
    assert_eq!(code, 0);
    let r: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(r["values"]["z1"], json!(["0", "1", "0", "0", "0", "0"]));
    assert_eq!(cpair(&["--input", sol.to_str().unwrap(), "--task", "induced"]).0, 0);
}

#[test]
fn fixture_listing_and_unknown_fixture() {
    let (code, out, _) = cpair(&["--run-all", "--format", "machine"]);
    assert_eq!(code, 0);
    let r: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(r["status"], "pass");
    let (code, _, err) = cpair(&["--fixture", "nope"]);
    assert_eq!(code, 2);
    assert!(err.contains("nope"));
}
