use std::path::Path;
use std::process::{Command, Output};

fn tvlab(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tvlab"))
        .args(args)
        .current_dir(dir)
        .env_remove("TVLAB_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn build_then_deleted_join_homology() {
    let dir = tempfile::tempdir().unwrap();
    let o = tvlab(&["build", "mr", "--r", "3", "-o", "m3.json"], dir.path());
    assert!(o.status.success(), "{o:?}");
    let o = tvlab(&["homology", "--deleted-join", "2", "m3.json"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let betti: Vec<u64> = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(betti, vec![0, 0, 0, 0, 8, 1]);
}

#[test]
fn certificate_round_trip_and_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let o = tvlab(&["shell", "mr2", "--r", "3", "--complex", "dj.json", "-o", "cert.json"], dir.path());
    assert!(o.status.success(), "{o:?}");
    let o = tvlab(&["shell", "verify", "dj.json", "cert.json"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    assert!(stdout(&o).contains("\"status\":\"pass\""));

    let text = std::fs::read_to_string(dir.path().join("cert.json")).unwrap();
    let mut cert: serde_json::Value = serde_json::from_str(&text).unwrap();
    let order = cert["order"].as_array_mut().unwrap();
    let last = order.len() - 1;
    order.swap(0, last);
    std::fs::write(dir.path().join("bad.json"), cert.to_string()).unwrap();
    let o = tvlab(&["shell", "verify", "dj.json", "bad.json"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("\"status\":\"fail\""));
}

#[test]
fn plain_order_files_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    assert!(tvlab(&["build", "chessboard", "--k", "2", "--r", "3", "-o", "c.json"], dir.path()).status.success());
    let o = tvlab(&["shell", "search", "c.json", "-o", "found.json"], dir.path());
    assert!(o.status.success(), "{o:?}");
    let cert: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("found.json")).unwrap()).unwrap();
    std::fs::write(dir.path().join("order.json"), cert["order"].to_string()).unwrap();
    assert_eq!(tvlab(&["shell", "verify", "c.json", "order.json"], dir.path()).status.code(), Some(0));
}

#[test]
fn search_reports_non_shellable() {
    let dir = tempfile::tempdir().unwrap();
    assert!(tvlab(&["build", "chessboard", "--k", "2", "--r", "2", "-o", "c.json"], dir.path()).status.success());
    for seed in ["0", "3"] {
        let o = tvlab(&["shell", "search", "c.json", "--seed", seed], dir.path());
        assert_eq!(o.status.code(), Some(2));
        assert!(String::from_utf8_lossy(&o.stderr).contains("not shellable"));
    }
}

#[test]
fn bounds_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = tvlab(&["bounds", "--b", "3", "--r", "3", "--d", "2"], dir.path());
    assert!(o.status.success());
    let rep: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rep["query"]["x"], 3);
    assert!(rep["ell"].as_f64().unwrap() > 0.0);
    assert!(rep["best_prime_power"].is_null());
    let o = tvlab(&["bounds", "--b", "3", "--r", "6", "--d", "2", "--format", "md"], dir.path());
    assert!(stdout(&o).contains("| 3 | 6 | 2 |"));
    assert_eq!(tvlab(&["bounds", "--b", "0", "--r", "1", "--d", "1"], dir.path()).status.code(), Some(1));
}

#[test]
fn usage_and_parse_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(tvlab(&["build", "mr"], dir.path()).status.code(), Some(1));
    assert_eq!(tvlab(&["no-such-command"], dir.path()).status.code(), Some(1));
    assert_eq!(tvlab(&["verify-paper", "--rmax", "7"], dir.path()).status.code(), Some(1));
    std::fs::write(dir.path().join("bad.json"), "{\"vertices\": [}").unwrap();
    let o = tvlab(&["homology", "bad.json"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("byte 14"), "{o:?}");
    assert!(tvlab(&["--help"], dir.path()).status.success());
}

#[test]
fn delprod_reports_matroid_bound() {
    let dir = tempfile::tempdir().unwrap();
    assert!(tvlab(&["build", "uniform", "--m", "2", "--n", "4", "-o", "u.json"], dir.path()).status.success());
    let o = tvlab(&["delprod", "u.json", "--k", "2"], dir.path());
    assert!(o.status.success(), "{o:?}");
    let out: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(out["dim"], 2);
    assert_eq!(out["matroid"]["connectivity_bound"], -1);
    let o = tvlab(&["delprod", "u.json", "--k", "2", "--cell-budget", "3"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cell budget"));
    let o = tvlab(&["delprod", "u.json", "--k", "2", "--max-dim-cap", "0"], dir.path());
    let out: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(out["dim"], 0);
}

#[test]
fn verify_paper_subset_with_cache() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "verify-paper",
        "--rmax",
        "3",
        "--claim",
        "mr2.betti.r3",
        "--claim",
        "bounds.npp_oracle",
        "--cache-dir",
        "cache",
    ];
    let cold = tvlab(&args, dir.path());
    assert_eq!(cold.status.code(), Some(0), "{cold:?}");
    assert!(std::fs::read_dir(dir.path().join("cache")).unwrap().count() > 0);
    let warm = tvlab(&args, dir.path());
    let a: serde_json::Value = serde_json::from_str(&stdout(&cold)).unwrap();
    let b: serde_json::Value = serde_json::from_str(&stdout(&warm)).unwrap();
    assert_eq!(a["claims"], b["claims"]);
    let statuses: Vec<&serde_json::Value> = a["claims"].as_array().unwrap().iter().map(|c| &c["status"]).collect();
    assert_eq!(statuses.iter().filter(|s| **s == "pass").count(), 2);
    assert!(statuses.iter().all(|s| *s == "pass" || s.get("skipped").is_some()));

    let env_cache = dir.path().join("from-env");
    let o = Command::new(env!("CARGO_BIN_EXE_tvlab"))
        .args(["verify-paper", "--claim", "mr2.betti.r3", "--format", "md"])
        .current_dir(dir.path())
        .env("TVLAB_CACHE", &env_cache)
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).contains("| `mr2.betti.r3` | pass |"));
    assert!(env_cache.is_dir());
}

#[test]
fn failing_claims_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let o = tvlab(&["verify-paper", "--no-cache", "--claim", "simplex_product.k3"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("simplex_product.k3"));
}
