//! End-to-end checks of the command-line interface: JSON schema, the
//! documented exit codes, and file output.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_p3gal"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn json(s: &str) -> serde_json::Value {
    serde_json::from_str(s).expect("valid JSON on stdout")
}

#[test]
fn tower_reports_schema_and_min_poly() {
    let (code, stdout, _) = run(&["tower", "-p", "3", "-r", "7"]);
    assert_eq!(code, 0);
    let v = json(&stdout);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["config"]["command"], "tower");
    assert_eq!(v["tower"]["m"], 21);
    assert_eq!(v["period_min_poly"], "X^3 + X^2 - 2*X - 1");
}

#[test]
fn check_passing_element() {
    let (code, stdout, _) = run(&["check", "-p", "3", "-r", "7", "-x", "d + zp"]);
    assert_eq!(code, 0);
    let v = json(&stdout);
    assert_eq!(v["norm"], "+13^1");
    assert_eq!(v["ideal_criterion"], true);
    assert_eq!(v["h27_ok"], true);
    assert_eq!(v["c9c3_ok"], true);
    assert_eq!(v["mc_h27"]["result"], "not_pth_power");
    assert_eq!(v["primes"][0]["class"], "split_completely_L");
}

#[test]
fn check_failing_element_reports_notes() {
    let (code, stdout, _) = run(&["check", "-p", "3", "-r", "19", "-x", "d + zp + 1"]);
    assert_eq!(code, 0);
    let v = json(&stdout);
    assert_eq!(v["ideal_criterion"], false);
    assert_eq!(v["norm"], "+7^2");
    let notes = v["notes"].as_array().unwrap();
    assert!(
        notes.iter().any(|n| {
            let s = n.as_str().unwrap();
            s.contains("2 distinct primes") && s.contains("norm 7")
        }),
        "notes: {notes:?}"
    );
}

#[test]
fn build_without_override_exits_5() {
    let (code, _, _) = run(&[
        "build", "-p", "3", "-r", "19", "-x", "d + zp + 1", "--group", "h27",
    ]);
    assert_eq!(code, 5);
}

#[test]
fn build_rejects_p5_with_exit_6() {
    let (code, _, _) = run(&[
        "build", "-p", "5", "-r", "11", "-x", "d - zp", "--group", "h27",
    ]);
    assert_eq!(code, 6);
}

#[test]
fn build_both_reference_polynomials() {
    let (code, stdout, _) = run(&[
        "build", "-p", "3", "-r", "19", "-x", "d + zp + 1", "--group", "h27",
        "--override-ideal-test",
    ]);
    assert_eq!(code, 0);
    let v = json(&stdout);
    assert_eq!(
        v["trace_cubic"]["text"],
        "X^3 - 81/49*X^2 - 111/343*X + 1489/2401"
    );

    let (code, stdout, _) = run(&[
        "build", "-p", "3", "-r", "7", "-x", "d + zp", "--group", "c9c3", "--theta",
        "3*d^2+3*d+3*zp*d+zp-4",
    ]);
    assert_eq!(code, 0);
    let v = json(&stdout);
    assert_eq!(
        v["trace_cubic"]["text"],
        "X^3 + 522/169*X^2 + 5595/2197*X + 6791/15379"
    );
    assert_eq!(v["config"]["e"], -1);
}

#[test]
fn build_without_theta_needs_known_tower() {
    let (code, _, stderr) = run(&[
        "build", "-p", "3", "-r", "19", "-x", "d + zp + 1", "--group", "c9c3",
        "--override-ideal-test",
    ]);
    assert_eq!(code, 6, "stderr: {stderr}");
}

#[test]
fn search_finds_candidates() {
    let (code, stdout, _) = run(&["search", "-p", "3", "-r", "7", "--box", "2", "--limit", "8"]);
    assert_eq!(code, 0);
    let v = json(&stdout);
    assert!(v["hits"].as_array().unwrap().len() >= 5);
}

#[test]
fn fingerprint_inline_poly() {
    let (code, stdout, _) = run(&["fingerprint", "--poly", "1,1,1", "--budget", "30"]);
    assert_eq!(code, 0);
    let v = json(&stdout);
    assert_eq!(v["fingerprint"]["samples"], 30);
    assert_eq!(v["fingerprint"]["verdict"], "inconclusive");
}

#[test]
fn exit_codes_for_bad_input() {
    // r not congruent to 1 mod p
    let (code, _, _) = run(&["tower", "-p", "3", "-r", "11"]);
    assert_eq!(code, 2);
    // unparsable element
    let (code, _, _) = run(&["check", "-p", "3", "-r", "7", "-x", "q + 1"]);
    assert_eq!(code, 3);
    // unparsable polynomial
    let (code, _, _) = run(&["fingerprint", "--poly", "1,zebra,1"]);
    assert_eq!(code, 3);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("p3gal-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tower.json");
    let (code, stdout, _) = run(&["tower", "-p", "3", "-r", "7", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.trim().is_empty() || !stdout.contains("schema") || stdout.len() < 200);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["tower"]["m"], 21);
    std::fs::remove_file(&path).ok();
}

#[test]
fn text_format() {
    let (code, stdout, _) = run(&["tower", "-p", "3", "-r", "7", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("X^3 + X^2 - 2*X - 1"), "stdout: {stdout}");
}
