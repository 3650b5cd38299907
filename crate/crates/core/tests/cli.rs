use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_resurgentia"))
        .args(args)
        .env_remove("RESURGENTIA_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout_json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn free_energy_table() {
    let o = run(&["coeffs", "--ag", "--max-g", "4"]);
    assert!(o.status.success());
    assert_eq!(
        stdout_json(&o)["a_g"],
        serde_json::json!(["5/24", "5/16", "1105/1152"])
    );
}

#[test]
fn pol_table() {
    let o = run(&["large-radius", "pols", "--n", "1", "--gmax", "2"]);
    let v = stdout_json(&o);
    assert_eq!(
        v["pols"][0]["pol"],
        serde_json::json!({"0": "1", "2": "5/12"})
    );
    assert_eq!(v["pols"][1]["pol"]["4"], "-25/288");
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["--order", "20", "coeffs", "--ag", "--c", "--gn"][..],
        &["--k-sigma", "3", "--k-e", "3", "alien", "table"][..],
        &["connect", "right", "--z", "3", "--sigma2", "1"][..],
        &["--seed", "11", "alien", "fuzz", "--cases", "10"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn connection_record_meets_bound() {
    let o = run(&[
        "connect", "right", "--z", "4", "--sigma1", "1", "--sigma2", "-i",
    ]);
    assert!(o.status.success());
    assert!(stdout_json(&o)["residual"].as_f64().unwrap() <= 1e-6);
    let o = run(&["connect", "right", "--z", "3", "--sigma2", "1"]);
    assert!(o.status.success());
    assert!(stdout_json(&o)["residual"].as_f64().unwrap() <= 1e-6);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["coeffs", "--no-such-flag"]).status.code(), Some(2));

    let domain = run(&["large-radius", "lrsum", "--gs", "0.9", "--u", "1"]);
    assert_eq!(domain.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&domain.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "domain");

    let tight = run(&[
        "connect",
        "right",
        "--z",
        "3",
        "--sigma2",
        "1",
        "--max-residual",
        "1e-40",
    ]);
    assert_eq!(tight.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&tight.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "tolerance");
    assert!(stdout_json(&tight)["residual"].is_number());
}

#[test]
fn config_file_and_precedence() {
    let path = std::env::temp_dir().join(format!("resurgentia-cli-{}.conf", std::process::id()));
    std::fs::write(&path, "# test\norder = 3\nformat = csv\n").unwrap();
    let with_env = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_resurgentia"))
            .args(args)
            .env("RESURGENTIA_CONFIG", &path)
            .output()
            .unwrap()
    };
    let csv = String::from_utf8(with_env(&["coeffs", "--c"]).stdout).unwrap();
    assert_eq!(
        csv,
        "path,value\nc_n.0,1\nc_n.1,5/72\nc_n.2,385/10368\nc_n.3,85085/2239488\n"
    );
    let flagged = with_env(&["--format", "json", "--order", "1", "coeffs", "--c"]);
    assert_eq!(
        stdout_json(&flagged)["c_n"],
        serde_json::json!(["1", "5/72"])
    );

    std::fs::write(&path, "order = zero\n").unwrap();
    assert_eq!(with_env(&["coeffs", "--c"]).status.code(), Some(2));
    std::fs::remove_file(&path).ok();
}
