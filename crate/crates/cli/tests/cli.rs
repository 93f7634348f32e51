use std::path::{Path, PathBuf};

use serde_json::Value;

const FIXTURE: &str = r#"{"base":"Q","factors":[{"d":5},{"e":5,"d":41}]}"#;
const FIXTURE_DATUM: &str =
    r#"{"entries":[{"factor":0,"place":3,"value":[3]},{"factor":1,"place":11,"component":0,"value":[11]}]}"#;

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn run(args: &[&Path]) -> (i32, String, String) {
    run_str(&args.iter().map(|p| p.to_str().unwrap()).collect::<Vec<_>>())
}

fn run_str(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = hasse_cli::run(std::iter::once("hasse").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn decide_on_the_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "p.json", FIXTURE);
    let a = write(dir.path(), "a.json", FIXTURE_DATUM);
    let (code, out, _) = run(&[Path::new("decide"), &p, &a]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["exists"], "no");
    assert_eq!(v["group"]["dimension"], 1);
    assert_eq!(v["group"]["partition"], serde_json::json!([[0], [1]]));
    assert_eq!(v["witness"], serde_json::json!([0, 1]));

    let (code, out, _) = run(&[Path::new("decide"), &p]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["exists"], "unknown");
    assert_eq!(json(&out)["rho_on_basis"], Value::Null);
}

#[test]
fn rho_and_groups() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "p.json", FIXTURE);
    let a = write(dir.path(), "a.json", FIXTURE_DATUM);
    let (code, out, _) = run(&[Path::new("rho"), &p, &a]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["rho"], serde_json::json!(["1/2"]));

    // the two factors are not independent (both contain √5)
    let (code, out, _) = run(&[Path::new("indep"), &p]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["dimension"], 1);

    let single = write(dir.path(), "single.json", r#"{"base":"Q","factors":[{"d":-1}]}"#);
    let (code, out, _) = run(&[Path::new("obstruction"), &single]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["dimension"], 0);
    assert_eq!(json(&out)["basis"], serde_json::json!([]));
}

#[test]
fn invalid_datum_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "p.json", FIXTURE);
    let a = write(
        dir.path(),
        "a.json",
        r#"{"entries":[{"factor":0,"place":3,"value":[3]}]}"#,
    );
    let (code, out, err) = run(&[Path::new("rho"), &p, &a]);
    assert_eq!(code, 3);
    let v = json(&out);
    assert_eq!(v["total"], "1/2");
    assert_eq!(v["places"], serde_json::json!([3]));
    assert!(err.contains("violation"));
}

#[test]
fn malformed_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = [
        r#"{"base":"Q","factors":[{"d":4}]}"#,
        r#"{"base":"Q","factors":[{"e":3,"d":3}]}"#,
        r#"{"base":"Q","factors":[]}"#,
        r#"{"base":"Q","factors":[{"d":5}],"colour":1}"#,
        "not json",
    ];
    for body in bad {
        let p = write(dir.path(), "p.json", body);
        let (code, _, err) = run(&[Path::new("obstruction"), &p]);
        assert_eq!(code, 2, "{body}");
        assert!(err.starts_with("error:"), "{err}");
    }
    let (code, _, _) = run_str(&["obstruction", "/nonexistent/problem.json"]);
    assert_eq!(code, 2);
    let (code, _, _) = run_str(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, _, _) = run_str(&[]);
    assert_eq!(code, 2);
    let (code, out, _) = run_str(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("decide"));

    // split place given an irrational value
    let p = write(dir.path(), "p.json", FIXTURE);
    let a = write(
        dir.path(),
        "a.json",
        r#"{"entries":[{"factor":1,"place":11,"value":[1,1]}]}"#,
    );
    assert_eq!(run(&[Path::new("rho"), &p, &a]).0, 2);
}

#[test]
fn galois_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(
        dir.path(),
        "g.json",
        r#"{"degree":4,"generators":[[1,0,3,2],[2,3,0,1]],
            "factors":[{"G":[[1,0,3,2],[2,3,0,1]],"H":[[1,0,3,2]]},{"G":[[1,0,3,2],[2,3,0,1]],"H":[[2,3,0,1]]}]}"#,
    );
    let (code, out, _) = run(&[Path::new("galois"), &g]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["dimension"], 0);
    assert_eq!(v["generic_pairs"], serde_json::json!([[0, 1]]));
    assert_eq!(v["generically_empty_only"], true);
}

#[test]
fn oracle_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "p.json", r#"{"base":"Q","factors":[{"d":5},{"d":7}]}"#);
    let (code, out, _) = run_str(&["oracle", p.to_str().unwrap(), "--bound", "100"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["pairs"][0]["witness"], 13);
    let (code, _, _) = run_str(&["oracle", p.to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "p.json",
        r#"{"base":"Q","factors":[{"d":5},{"e":5,"d":41},{"d":-3},{"e":-1,"d":7}]}"#,
    );
    let a = write(dir.path(), "a.json", FIXTURE_DATUM);
    for cmd in ["obstruction", "indep", "decide"] {
        let first = run(&[Path::new(cmd), &p]);
        for _ in 0..3 {
            assert_eq!(run(&[Path::new(cmd), &p]), first, "{cmd}");
        }
    }
    let first = run(&[Path::new("decide"), &p, &a]);
    assert_eq!(run(&[Path::new("decide"), &p, &a]), first);
}

#[test]
fn binary_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "p.json", FIXTURE);
    let a = write(
        dir.path(),
        "a.json",
        r#"{"entries":[{"factor":0,"place":3,"value":[3]}]}"#,
    );
    let bin = env!("CARGO_BIN_EXE_hasse");
    let status = |args: &[&std::ffi::OsStr]| std::process::Command::new(bin).args(args).output().unwrap();
    let ok = status(&["obstruction".as_ref(), p.as_os_str()]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(std::str::from_utf8(&ok.stdout).unwrap())["dimension"], 1);
    assert_eq!(
        status(&["rho".as_ref(), p.as_os_str(), a.as_os_str()]).status.code(),
        Some(3)
    );
    assert_eq!(status(&["bogus".as_ref()]).status.code(), Some(2));
}
