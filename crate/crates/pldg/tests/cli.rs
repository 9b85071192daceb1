use std::process::Command;

fn pldg() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pldg"))
}

#[test]
fn run_requires_a_seed() {
    let out = pldg().args(["run", "--n", "10"]).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("--seed"));
}

#[test]
fn run_verify_and_render() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let st = pldg()
        .args([
            "run",
            "--seed",
            "3",
            "--n",
            "40",
            "--side",
            "2.8",
            "--trials",
            "3",
            "--svg",
            "--out-dir",
            d,
        ])
        .output()
        .unwrap()
        .status;
    assert!(st.success());
    let record = dir.path().join("trial_00001.json");
    assert!(dir.path().join("trial_00001_pldg_prime.svg").exists());

    let out = pldg().arg("verify").arg(&record).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("pass"));

    let svg = dir.path().join("again.svg");
    let st = pldg()
        .arg("render")
        .arg(&record)
        .arg("--out")
        .arg(&svg)
        .status()
        .unwrap();
    assert!(st.success());
    assert!(std::fs::read_to_string(svg).unwrap().starts_with("<?xml"));
}

#[test]
fn generate_matches_run() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = [
        "--seed",
        "8",
        "--n",
        "25",
        "--side",
        "2.2",
        "--trials",
        "2",
        "--out-dir",
        d,
    ];
    assert!(pldg()
        .arg("generate")
        .args(args)
        .status()
        .unwrap()
        .success());
    assert!(pldg()
        .arg("run")
        .args(args)
        .output()
        .unwrap()
        .status
        .success());
    for t in 0..2 {
        let inst: serde_json::Value = serde_json::from_str(
            &std::fs::read_to_string(dir.path().join(format!("instance_{t:05}.json"))).unwrap(),
        )
        .unwrap();
        let rec: serde_json::Value = serde_json::from_str(
            &std::fs::read_to_string(dir.path().join(format!("trial_{t:05}.json"))).unwrap(),
        )
        .unwrap();
        assert_eq!(inst["points"], rec["points"]);
    }
    let out = pldg()
        .arg("verify")
        .arg(dir.path().join("instance_00000.json"))
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn invalid_config_is_rejected() {
    let out = pldg()
        .args([
            "run",
            "--seed",
            "1",
            "--n",
            "1",
            "--out-dir",
            "/nonexistent/x",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n must be at least 2"));
}
