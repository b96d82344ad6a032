use std::path::PathBuf;
use std::process::{Command, Output};

fn bvengine(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bvengine")).args(args).env_remove("BVENGINE_BUDGET").output().expect("binary runs")
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn report(args: &[&str]) -> (i32, Vec<serde_json::Value>) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let mut all = args.to_vec();
    let p = path.to_string_lossy().into_owned();
    all.extend(["--report", &p]);
    let out = bvengine(&all);
    let text = std::fs::read_to_string(&path).expect("report written");
    (out.status.code().unwrap(), serde_json::from_str(&text).unwrap())
}

#[test]
fn run_all_on_i2_passes() {
    let (code, reports) = report(&["run", "--instance", "I2", "--suite", "all"]);
    assert_eq!(code, 0);
    assert!(reports.len() > 15);
    for r in &reports {
        assert_eq!(r["status"], "pass", "{r}");
        for key in ["check", "instance", "status", "witness", "cardinalities", "millis"] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
    }
}

#[test]
fn run_chu_on_i4_passes() {
    let (code, reports) = report(&["run", "--instance", "I4", "--suite", "chu"]);
    assert_eq!(code, 0);
    assert!(reports.iter().any(|r| r["check"] == "chu.switch" && r["status"] == "pass"));
}

#[test]
fn broken_instance_is_a_config_error() {
    let (code, reports) = report(&["run", "--instance", &fixture("broken.json")]);
    assert_eq!(code, 2);
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["status"], "error");
    assert!(reports[0]["witness"].as_str().unwrap().contains("IdentityViolation"));

    let out = bvengine(&["validate", &fixture("broken.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("IdentityViolation"));
    assert_eq!(bvengine(&["validate", &fixture("z2.json")]).status.code(), Some(0));
}

#[test]
fn instance_files_run_like_builtins() {
    let (code, reports) = report(&["run", "--instance", &fixture("z2.json"), "--suite", "events"]);
    assert_eq!(code, 0);
    assert!(reports.iter().all(|r| r["instance"] == "z2"));
}

#[test]
fn budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_bvengine"))
        .args(["run", "--instance", "I4", "--suite", "chu"])
        .env("BVENGINE_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("BudgetExceeded"));
}

#[test]
fn eval_prints_canonical_form() {
    let out = bvengine(&[
        "eval",
        "--instance",
        &fixture("z2.json"),
        "--env",
        &fixture("bindings.json"),
        "--formula",
        "((~(a*b)) || (c ; 1))",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("formula: ~(a * b) || c ; 1"));

    let out = bvengine(&["eval", "--formula", "a *"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("SyntaxError"));
}

#[test]
fn rules() {
    let ok = |args: &[&str]| bvengine(args).status.code();
    assert_eq!(ok(&["rule", "--name", "switch", "--args", "a,b,c", "--instance", "I4"]), Some(0));
    assert_eq!(ok(&["rule", "--name", "interchange", "--args", "a,a,a,a", "--instance", "I2"]), Some(0));
    assert_eq!(ok(&["rule", "--name", "sequence", "--args", "a,a,a,a", "--instance", "I2"]), Some(0));
    assert_eq!(ok(&["rule", "--name", "sequence", "--args", "a,a"]), Some(2));
    assert_eq!(ok(&["rule", "--name", "weakening", "--args", "a"]), Some(2));
}
