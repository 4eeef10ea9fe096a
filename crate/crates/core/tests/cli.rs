//! End-to-end checks of the `szego` binary: output formats, exit
//! codes, and error reporting.

use std::process::{Command, Output};

fn szego(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_szego"))
        .args(args)
        .output()
        .expect("failed to launch szego")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn nodes_text_table_lists_n_plus_one_rows() {
    let out = szego(&["nodes", "--measure", "lebesgue", "--n", "4"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    // header plus five node rows
    assert_eq!(text.lines().count(), 6, "{text}");
    assert!(text.lines().next().unwrap().contains("weight"));
}

#[test]
fn nodes_json_is_valid_and_matches_closed_form() {
    let out = szego(&["nodes", "--measure", "lebesgue", "--n", "4", "--json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let entries: Vec<serde_json::Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(entries.len(), 5);
    for e in &entries {
        let w = e["weight"].as_f64().unwrap();
        assert!((w - 0.2).abs() < 1e-12);
        assert!(e["angle"].as_f64().is_some());
        assert!(e["kernel_diag"].as_f64().unwrap() > 0.0);
    }
}

#[test]
fn quadrature_reports_tiny_error_for_polynomials() {
    let out = szego(&[
        "quadrature",
        "--measure",
        "arc:1.5707963",
        "--n",
        "8",
        "--f",
        "poly7",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let err_line = text
        .lines()
        .find(|l| l.starts_with("abs error"))
        .expect("error line");
    let value: f64 = err_line.split('=').nth(1).unwrap().trim().parse().unwrap();
    // the rule is exact for poly7; the residual is the resolution of
    // the reference integral
    assert!(value < 1e-8, "{err_line}");
}

#[test]
fn interpolate_prints_one_line_per_exponent() {
    let out = szego(&[
        "interpolate",
        "--measure",
        "lebesgue",
        "--n",
        "12",
        "--f",
        "exp",
        "--p",
        "1,2",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("p=1 error="));
    assert!(text.contains("p=2 error="));
}

#[test]
fn interpolate_warns_on_p_beyond_two_but_still_runs() {
    let out = szego(&[
        "interpolate",
        "--measure",
        "lebesgue",
        "--n",
        "8",
        "--f",
        "exp",
        "--p",
        "4",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("p=4 error="));
    assert!(stderr(&out).contains("outside (0, 2]"));
}

#[test]
fn verify_passes_with_exit_zero() {
    let out = szego(&["verify", "--measure", "arc:1.5707963", "--nmax", "16"]);
    assert!(out.status.success(), "{}{}", stdout(&out), stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("orthonormality"));
    assert!(text.contains("PASS"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn bad_measure_spec_exits_one_with_message() {
    let out = szego(&["nodes", "--measure", "arc:9", "--n", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("error:"), "{}", stderr(&out));
}

#[test]
fn unknown_flag_exits_one() {
    let out = szego(&["nodes", "--measure", "lebesgue", "--n", "4", "--bogus"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn converge_flags_and_config_file_agree() {
    let out_flags = szego(&[
        "converge",
        "--measure",
        "lebesgue",
        "--f",
        "exp",
        "--w-strategy",
        "fixed:0",
        "--degrees",
        "4,8",
        "--p",
        "2",
    ]);
    assert!(out_flags.status.success(), "{}", stderr(&out_flags));

    let dir = std::env::temp_dir().join(format!("szego-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("exp.cfg");
    std::fs::write(
        &path,
        "measure=lebesgue\nf=exp\nw_strategy=fixed:0\ndegrees=4,8\np=2\nformat=csv\n",
    )
    .unwrap();
    let out_cfg = szego(&["converge", "--config", path.to_str().unwrap()]);
    assert!(out_cfg.status.success(), "{}", stderr(&out_cfg));
    assert_eq!(stdout(&out_flags), stdout(&out_cfg));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn converge_csv_has_fixed_schema_and_no_timing_by_default() {
    let out = szego(&[
        "converge",
        "--measure",
        "lebesgue",
        "--f",
        "poly7",
        "--w-strategy",
        "rotate:0.1",
        "--degrees",
        "8",
        "--p",
        "2",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,p,interp_error,quad_error,measure,f,w_strategy,seed"
    );
    let row = lines.next().unwrap();
    assert!(row.starts_with("8,2,"));
    assert!(row.ends_with("lebesgue,poly7,rotate:0.1,"));
}

#[test]
fn converge_json_round_trips() {
    let out = szego(&[
        "converge",
        "--measure",
        "arc:1.5707963",
        "--f",
        "conj",
        "--w-strategy",
        "pseudorandom:7",
        "--degrees",
        "4,8",
        "--p",
        "1",
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["seed"], 7);
    assert_eq!(report["rows"].as_array().unwrap().len(), 2);
}

#[test]
fn converge_rejects_p_beyond_two() {
    let out = szego(&[
        "converge",
        "--measure",
        "lebesgue",
        "--f",
        "exp",
        "--w-strategy",
        "fixed:0",
        "--degrees",
        "4",
        "--p",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("(0, 2]"), "{}", stderr(&out));
}
