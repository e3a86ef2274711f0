use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gensolve_core::json::{matrix_to_string, parse_matrix};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn gensolve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gensolve"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fx(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

fn write_temp(dir: &tempdir::Dir, name: &str, text: &str) -> String {
    let p = dir.0.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

mod tempdir {
    use std::path::PathBuf;

    pub struct Dir(pub PathBuf);

    impl Dir {
        pub fn new(tag: &str) -> Self {
            let p = std::env::temp_dir().join(format!("gensolve-cli-{tag}-{}", std::process::id()));
            std::fs::create_dir_all(&p).unwrap();
            Dir(p)
        }
    }

    impl Drop for Dir {
        fn drop(&mut self) {
            let _ = std::fs::remove_dir_all(&self.0);
        }
    }
}

#[test]
fn rnf_of_zero_matrix() {
    let out = gensolve(&["rnf", &fx("zero_2x3.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rank"], 0);
    for key in ["Q", "P", "Qinv", "Pinv"] {
        assert!(v[key].is_object(), "missing {key}");
    }
    assert_eq!(v["P"]["rows"], 3);
}

#[test]
fn ginverse_reports_blocks() {
    let out = gensolve(&["ginverse", &fx("example_A.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rank"], 2);
    assert_eq!(v["blocks"]["V"], serde_json::json!([1, 2]));
    assert_eq!(v["blocks"]["U"], serde_json::json!([2, 0]));
    assert_eq!(v["inverse"]["params"], serde_json::json!(["v_1_1", "v_1_2"]));
}

#[test]
fn inconsistent_exits_two() {
    let out = gensolve(&["solve", "--system", "axc", &fx("dependent_A.json"), &fx("inconsistent_c.json")]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "inconsistent");
    assert_eq!(v["witness"]["row"], 1);
    assert!(v["general"].is_null());
}

#[test]
fn row_and_matrix_systems() {
    let dir = tempdir::Dir::new("rows");
    let b = write_temp(&dir, "B.json", r#"{"rows":3,"cols":2,"data":[["1","4"],["2","5"],["3","6"]]}"#);
    let d = write_temp(&dir, "d.json", r#"{"rows":1,"cols":2,"data":[["7","8"]]}"#);
    let out = gensolve(&["solve", "--system", "xbd", &b, &d]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["params"], serde_json::json!(["t_1"]));
    assert_eq!(v["general"]["rows"], 1);

    let out = gensolve(&["solve", "--system", "ax-c", &fx("two_sided_A.json"), &fx("two_sided_C.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["params"].as_array().unwrap().len(), 3);

    let out = gensolve(&["solve", "--system", "xb-d", &fx("two_sided_B.json"), &fx("two_sided_C.json")]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn parse_errors_exit_one_and_are_distinct() {
    let dir = tempdir::Dir::new("parse");
    let c = fx("example2_c.json");
    let cases = [
        ("ragged.json", r#"{"rows":2,"cols":3,"data":[["1","2","3"],["4","5"]]}"#, "row 1 has 2 entries"),
        ("entry.json", r#"{"rows":1,"cols":1,"data":[["seven"]]}"#, "entry (0, 0)"),
        ("count.json", r#"{"rows":3,"cols":1,"data":[["1"]]}"#, "\"rows\" is 3"),
        ("syntax.json", "{\"rows\": 2,\n\"cols\": 3,\n\"data\": [[\"1\"", "line 3"),
    ];
    for (name, text, needle) in cases {
        let a = write_temp(&dir, name, text);
        let out = gensolve(&["solve", "--system", "axc", &a, &c]);
        assert_eq!(out.status.code(), Some(1), "{name}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(err.contains(needle), "{name}: {err}");
        assert!(err.contains(name), "{name} not named: {err}");
    }
    let out = gensolve(&["rnf", "/nonexistent/gensolve.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(gensolve(&[]).status.code(), Some(1));
    assert_eq!(gensolve(&["solve", "--system", "nope", "a"]).status.code(), Some(1));
    let out = gensolve(&["solve", "--system", "axb-c", &fx("example_A.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("expects 3 matrix files"));
    let out = gensolve(&["solve", "--system", "ax-c", &fx("example_A.json"), &fx("two_sided_B.json")]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("A is 2x3") && err.contains("C is 3x3"), "{err}");
    assert_eq!(gensolve(&["--help"]).status.code(), Some(0));
}

#[test]
fn short_form_needs_nonzero_rhs() {
    let out = gensolve(&["solve", "--system", "axc", "--short-form", &fx("example_A.json"), &fx("example1_c.json")]);
    assert_eq!(out.status.code(), Some(1));
    let out = gensolve(&["solve", "--system", "axc", "--short-form", &fx("example_A.json"), &fx("example2_c.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["params"], serde_json::json!(["v_1_1", "v_1_2"]));
}

#[test]
fn check_against_oracle() {
    for (system, files) in [
        ("axc", vec!["example_A.json", "example2_c.json"]),
        ("axc", vec!["dependent_A.json", "inconsistent_c.json"]),
        ("axb-c", vec!["two_sided_A.json", "two_sided_B.json", "two_sided_C.json"]),
    ] {
        let mut args = vec!["check".to_owned(), "--against-oracle".into(), "--system".into(), system.into()];
        args.extend(files.iter().map(|f| fx(f)));
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = gensolve(&args);
        assert_eq!(out.status.code(), Some(0), "{system} {files:?}");
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["agree"], true);
    }
    let out = Command::new(env!("CARGO_BIN_EXE_gensolve"))
        .env("GENSOLVE_SEED", "99")
        .args(["check", "--against-oracle", "--system", "axc", &fx("example_A.json"), &fx("example2_c.json")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn pretty_output() {
    let out = gensolve(&["--output", "pretty", "solve", "--system", "axc", &fx("example_A.json"), &fx("example2_c.json")]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("-19/3 + t_1"), "{text}");
    assert!(text.contains("20/3 - 2*t_1"), "{text}");
}

#[test]
fn output_is_deterministic() {
    let args = ["solve", "--system", "axb-c", &fx("two_sided_A.json"), &fx("two_sided_B.json"), &fx("two_sided_C.json")];
    let first = gensolve(&args).stdout;
    let second = gensolve(&args).stdout;
    assert_eq!(first, second);
    let r1 = gensolve(&["rnf", &fx("example_A.json")]).stdout;
    let r2 = gensolve(&["rnf", &fx("example_A.json")]).stdout;
    assert_eq!(r1, r2);
}

#[test]
fn fixtures_round_trip_canonically() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let m = parse_matrix(&text).unwrap();
        assert_eq!(matrix_to_string(&m), text.trim_end(), "{}", path.display());
        seen += 1;
    }
    assert!(seen >= 6);
}

#[test]
fn in_process_run() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = gensolve_cli::run(["gensolve", "rnf", &fx("example_A.json")], &mut out, &mut err);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(v["rank"], 2);
    assert!(err.is_empty());
}
