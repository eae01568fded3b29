use std::process::{Command, Output};

use serde_json::Value;

fn symgrass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symgrass"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = symgrass(args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn rho_single_value() {
    let v = report(&["rho", "--r", "2", "--d", "8", "--k", "2", "--g", "5"]);
    // 4·4 + 1 − 2·(2 − 8 + 8)
    assert_eq!(v["result"][0]["rho"], 13);
    assert_eq!(v["tool"], "symgrass");
    assert_eq!(v["seed"], 1);
    assert!(v["version"].is_string());
    assert_eq!(v["config"]["command"]["rho"]["g"][0], 5);
}

#[test]
fn rho_omega_value_and_csv() {
    let v = report(&["rho-omega", "--k", "2", "--g", "5"]);
    assert_eq!(v["result"][0]["rho_omega"], 9);
    let out = symgrass(&["rho-omega", "--k", "1..2", "--g", "5", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# symgrass"));
    assert_eq!(&lines[1..], ["k,g,rho_omega", "1,5,11", "2,5,9"]);
}

#[test]
fn grids_accept_negative_degrees() {
    let v = report(&["rho2", "--d=-2,0", "--k", "2", "--g", "3"]);
    let rows = v["result"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    // ρ(2, d, 2, 3) − 3 + 2
    assert_eq!(rows[0]["rho2"], 8 + 1 - 2 * (2 + 2 + 4) - 1);
    assert_eq!(rows[1]["rho2"], 8 + 1 - 2 * (2 + 4) - 1);
}

#[test]
fn guard_violation_exits_two() {
    let out = symgrass(&["codim", "--k", "3", "--r", "6", "--s", "4", "--t", "2", "--delta", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("guard"));
    let v = report(&["codim", "--k", "2", "--r", "8", "--s", "4", "--t", "3", "--double"]);
    assert_eq!(v["result"][0]["bound"], 2 * 9 - 2);
}

#[test]
fn symplectic_plane_count_over_f2() {
    let v = report(&["strata", "--field", "2", "--r", "4", "--delta", "2", "--k", "2"]);
    // Lagrangian planes of F_2^4: (q+1)(q²+1)
    assert_eq!(v["result"]["samples"][0]["total"], 15);
}

#[test]
fn strata_fit_recovers_cubic() {
    let v = report(&["strata", "--q-list", "2,3,5,7,11", "--r", "4", "--delta", "1", "--k", "2"]);
    let fit = &v["result"]["fits"]["total"];
    assert_eq!(fit["degree"], 3);
    assert_eq!(fit["coefficients"], serde_json::json!([1, 1, 2, 1]));
    assert_eq!(v["result"]["expected_degree"], 3);
}

#[test]
fn ceiling_exits_three() {
    let out = symgrass(&["strata", "--field", "7", "--r", "8", "--k", "4", "--ceiling", "100"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ceiling"));
}

#[test]
fn identical_pairings_are_dependent() {
    let m = "[[1,0,0],[0,1,0]]";
    let v = report(&["pencil-check", "--field", "5", "--psi1", m, "--psi2", m]);
    assert_eq!(v["result"]["dependent"], true);
    assert_eq!(v["result"]["dependence_dim"], 1);
    assert_eq!(v["result"]["agreement"], true);
}

#[test]
fn diagonal_pencil_witness() {
    let v = report(&[
        "pencil-check",
        "--field",
        "Q",
        "--psi1",
        "[[1,0,0],[0,1,0],[0,0,1]]",
        "--psi2",
        "[[1,0,0],[0,1,0],[0,0,2]]",
    ]);
    assert_eq!(v["result"]["dependent"], true);
    assert_eq!(v["result"]["witness"]["lambda"], serde_json::json!([1, -1]));
}

#[test]
fn non_surjective_pairing_exits_two() {
    let out = symgrass(&["pencil-check", "--field", "Q", "--psi1", "[[1,0],[1,0]]", "--psi2", "[[1,0],[0,1]]"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn residue_model_isotropy() {
    let v = report(&["p1-form", "--field", "Q", "--a=-1", "--b=-1", "--d", "[1,-1]"]);
    let r = &v["result"];
    assert_eq!(r["isotropy"], "pass");
    assert_eq!(r["model"]["dim_tail"], 8);
    assert_eq!(r["model"]["sections"], 4);
    assert_eq!(r["model"]["regular_radical"], 4);
    assert_eq!(r["gram"].as_array().unwrap().len(), 8);
}

#[test]
fn residue_phi_degree_checked() {
    let out = symgrass(&["p1-form", "--field", "Q", "--a=-1", "--b=-1", "--d", "[1,-1]", "--phi", "[0,1]"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pencil_of_residue_forms_is_injective() {
    let v = report(&[
        "injectivity", "--field", "7", "--a=-1", "--b=-2", "--d", "[1,2,3,4]", "--phi", "[1]", "--phi", "[0,1]",
    ]);
    assert_eq!(v["result"]["report"]["injective"], true);
    assert_eq!(v["result"]["report"]["method"], "MinorGcd");
}

#[test]
fn csv_rejected_for_reports() {
    let out = symgrass(&["campaign", "identities", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn campaign_reports_are_byte_identical_across_widths() {
    let a = symgrass(&["campaign", "msg", "--count", "4", "--seed", "9", "--jobs", "1"]);
    let b = symgrass(&["campaign", "msg", "--count", "4", "--seed", "9", "--jobs", "8"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 9);
    assert_eq!(v["result"]["seed"], 9);
    assert_eq!(v["invariant_failures"], serde_json::json!([]));
}

#[test]
fn small_sweep_campaign() {
    let dir = std::env::temp_dir().join(format!("symgrass-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sweep.json");
    let out = symgrass(&[
        "campaign",
        "sweep",
        "--max-r",
        "3",
        "--max-k",
        "2",
        "--jobs",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(!v["result"]["entries"].as_array().unwrap().is_empty());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn residue_model_from_json_input() {
    let v = report(&[
        "p1-form",
        "--input",
        r#"{"field": "Q", "a": -1, "b": -1, "D": [0], "Delta": [], "phi": {"num": [1], "den": [1]}}"#,
    ]);
    assert_eq!(v["result"]["model"]["dim_tail"], 4);
    assert_eq!(v["result"]["model"]["sections"], 2);
    let out = symgrass(&[
        "p1-form",
        "--input",
        r#"{"field": "7", "a": -1, "b": -1, "D": [1], "phi": {"num": [1], "den": [0, 1]}}"#,
    ]);
    assert_eq!(out.status.code(), Some(2));
}
