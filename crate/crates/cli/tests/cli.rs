use std::process::{Command, Output};

fn gsteer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gsteer"))
        .args(args)
        .output()
        .expect("gsteer runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn exit_codes() {
    assert_eq!(code(&gsteer(&["figure", "fig1a"])), 0);
    assert_eq!(code(&gsteer(&["figure", "fig9"])), 1);
    assert_eq!(code(&gsteer(&["frobnicate"])), 1);
    assert_eq!(code(&gsteer(&["sweep", "--r-min", "2", "--r-max", "1"])), 1);
    assert_eq!(code(&gsteer(&["--jobs", "0", "figure", "fig3"])), 1);
    assert_eq!(code(&gsteer(&["threshold", "--s", "-1"])), 2);
    assert_eq!(code(&gsteer(&["adjudicate", "--s", "4"])), 2);
    assert_eq!(
        code(&gsteer(&[
            "--out",
            "/nonexistent/dir/x.csv",
            "figure",
            "fig1b"
        ])),
        3
    );
    assert_eq!(
        code(&gsteer(&["sweep", "--config", "/nonexistent/cfg.json"])),
        3
    );
    assert_eq!(code(&gsteer(&["--help"])), 0);
}

#[test]
fn config_file_with_flag_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.json");
    let out = dir.path().join("from_config.json");
    std::fs::write(
        &cfg,
        format!(
            r#"{{"pair": "BBbar", "s_values": 2.0, "r_range": {{"min": 0, "max": 1, "steps": 5}},
                "format": "json", "output_path": {:?}}}"#,
            out
        ),
    )
    .unwrap();

    let run = gsteer(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&run), 0, "{}", String::from_utf8_lossy(&run.stderr));
    let rows: Vec<serde_json::Value> =
        serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[4]["r"], 1.0);
    assert_eq!(rows[0]["s"], 2.0);

    // flags beat the file: csv, three points, two s values, another path
    let csv_out = dir.path().join("from_flags.csv");
    let run = gsteer(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--s",
        "0.5,1",
        "--r-steps",
        "3",
        "--format",
        "csv",
        "--out",
        csv_out.to_str().unwrap(),
    ]);
    assert_eq!(code(&run), 0);
    let text = std::fs::read_to_string(&csv_out).unwrap();
    assert_eq!(text.lines().count(), 7);
    assert!(text.lines().nth(3).unwrap().starts_with("0.5,1,"));
    // pair still comes from the file: B→B̄ at r = 0 is zero
    assert!(text.lines().nth(4).unwrap().starts_with("1,0,0,0,0,0"));
}

#[test]
fn stdout_when_no_out_is_given() {
    let run = gsteer(&[
        "sweep",
        "--pair",
        "ab",
        "--s",
        "0.5,1",
        "--r-steps",
        "3",
        "--omega",
        "2",
    ]);
    assert_eq!(code(&run), 0);
    let text = String::from_utf8(run.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[0], "s,r,T,G_forward,G_backward,G_delta");
    assert!(lines[1].starts_with("0.5,0,0,"));
    assert!(lines[6].starts_with("1,2,"));
}

#[test]
fn threshold_and_bound_check_json() {
    let run = gsteer(&["threshold", "--s", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&run.stdout).unwrap();
    let r = v["r_death_AtoB"].as_f64().unwrap();
    assert!((r - 1f64.tanh().asinh()).abs() < 1e-8);
    assert_eq!(v["roots_coincide"], true);

    let run = gsteer(&[
        "bound-check",
        "--s-max",
        "2",
        "--r-max",
        "2",
        "--step",
        "0.05",
        "--format",
        "json",
    ]);
    assert_eq!(code(&run), 0);
    let v: serde_json::Value = serde_json::from_slice(&run.stdout).unwrap();
    assert_eq!(v["holds"], true);
    assert_eq!(v["pairs"].as_array().unwrap().len(), 2);
}

#[test]
fn adjudicate_reports_the_verdict() {
    let run = gsteer(&["adjudicate", "--s", "0.5,1,2"]);
    assert_eq!(code(&run), 0);
    let text = String::from_utf8(run.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",doubled")));
    assert!(String::from_utf8_lossy(&run.stderr).contains("2s = arccosh"));
}
