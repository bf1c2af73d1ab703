use std::path::PathBuf;
use std::process::{Command, Output};

fn gammacat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gammacat")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gammacat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn empty_selector_yields_empty_report() {
    let out = gammacat(&["verify"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["records"], serde_json::json!([]));
    assert_eq!(report["schema_version"], 1);
}

#[test]
fn factorization_suite_passes() {
    let out = gammacat(&["verify", "--suite", "factorization", "--n-max", "3"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["summary"]["fail"], 0);
    assert_eq!(report["records"].as_array().unwrap().len(), 3);
}

#[test]
fn text_format_has_summary_line() {
    let out = gammacat(&["verify", "--suite", "wedge", "--n-max", "2", "--format", "text"]);
    assert!(out.status.success());
    assert!(stdout(&out).lines().last().unwrap().starts_with("summary: "));
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify", "--suite", "lifting-oracles/isofibration/random,nerve", "--seed", "7"];
    let (a, b) = (gammacat(&args), gammacat(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_flag_writes_file() {
    let path = scratch("report.json");
    let out = gammacat(&["verify", "--suite", "iso-J", "--n-max", "1", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let check = gammacat(&["io-check", path.to_str().unwrap()]);
    assert!(check.status.success(), "{}", stdout(&check));
}

#[test]
fn unknown_suite_exits_with_error() {
    let out = gammacat(&["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nonsense"));
}

#[test]
fn zero_budget_is_rejected() {
    let out = gammacat(&["verify", "--suite", "nerve", "--budget", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn describe_lists_and_summarizes() {
    let list = stdout(&gammacat(&["describe"]));
    assert!(list.lines().any(|l| l == "z2"));
    let z2 = gammacat(&["describe", "z2"]);
    assert!(z2.status.success());
    assert!(stdout(&z2).starts_with("z2 (permutative)"));
    assert_eq!(gammacat(&["describe", "no_such_thing"]).status.code(), Some(2));
}

#[test]
fn described_json_reserializes_stably() {
    for name in ["cat_z2", "z2", "gamma2", "nerve_z2"] {
        let path = scratch(&format!("{name}.json"));
        std::fs::write(&path, gammacat(&["describe", name, "--json"]).stdout).unwrap();
        let out = gammacat(&["io-check", path.to_str().unwrap()]);
        assert!(out.status.success(), "{name}: {}", stdout(&out));
        let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(report["stable"], true);
    }
}

#[test]
fn corrupted_composition_is_located() {
    let mut cat: serde_json::Value = serde_json::from_slice(&gammacat(&["describe", "cat_z2", "--json"]).stdout).unwrap();
    // compose[1] is id∘g = g; point it at the identity instead.
    assert_eq!(cat["compose"][1], serde_json::json!([0, 1, 1]));
    cat["compose"][1] = serde_json::json!([0, 1, 0]);
    let path = scratch("broken.json");
    std::fs::write(&path, serde_json::to_string_pretty(&cat).unwrap()).unwrap();
    let out = gammacat(&["io-check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("compose[1]"));
}

#[test]
fn malformed_field_reports_path() {
    let mut cat: serde_json::Value = serde_json::from_slice(&gammacat(&["describe", "cat_z2", "--json"]).stdout).unwrap();
    cat["morphisms"][1]["src"] = serde_json::json!("zero");
    let path = scratch("malformed.json");
    std::fs::write(&path, cat.to_string()).unwrap();
    let out = gammacat(&["io-check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("morphisms[1].src"));
}
