use std::process::Command;

fn kz(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_kz")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.json");
    let w = w.to_str().unwrap();
    let (code, out, _) = kz(&["construct", "--n", "3", "--rho", "-1", "--base", "0,1,2", "--out", w]);
    assert_eq!(code, 0, "{out}");
    let doc = std::fs::read_to_string(w).unwrap();
    assert!(doc.contains("\"product\""));
    let report = dir.path().join("r.json");
    let (code, out, _) = kz(&["verify", "--in", w, "--rho", "-1", "--report", report.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("PASS equation 3"), "{out}");
    assert!(std::fs::read_to_string(&report).unwrap().contains("\"status\": \"pass\""));
    // The same solution is not a solution at another coupling.
    let (code, out, _) = kz(&["verify", "--in", w, "--rho", "1"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("FAIL"));
}

#[test]
fn construction_is_deterministic() {
    let (_, a, _) = kz(&["construct", "--n", "3", "--rho", "1"]);
    let (_, b, _) = kz(&["construct", "--n", "3", "--rho", "1"]);
    assert_eq!(a, b);
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, err) = kz(&["construct", "--n", "3", "--rho", "-1", "--base", "0,0,2"]);
    assert_eq!(code, 2);
    assert!(err.contains("distinct"), "{err}");
    assert_eq!(kz(&["construct", "--n", "3"]).0, 2);
    assert_eq!(kz(&["omega", "--n", "3", "--s", "3"]).0, 2);
    assert_eq!(kz(&["frobnicate"]).0, 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ \"n\": 3, ").unwrap();
    let (code, _, err) = kz(&["verify", "--in", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line"), "{err}");
}

#[test]
fn printing_commands() {
    let (code, out, _) = kz(&["omega", "--n", "4", "--s", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("v_3 = [-3, 1, 1, 1] -> 3"), "{out}");
    let (code, out, _) = kz(&["coords", "--n", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("H_3:"));
    let (code, out, _) = kz(&["hypergeom", "--rho", "-1"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("1/(1-y)"));
}

#[test]
fn selftest_single_criterion() {
    let (code, out, _) = kz(&["selftest", "--criterion", "4"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("PASS criterion 4"));
    assert_eq!(kz(&["selftest", "--criterion", "9"]).0, 2);
}
