use std::process::{Command, Output};

fn prolate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prolate")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = prolate(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines().map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn column(table: &[Vec<String>], name: &str) -> usize {
    table[0].iter().position(|h| h == name).unwrap()
}

#[test]
fn eigs_default_window_contains_transition() {
    let t = rows(&stdout(&["eigs", "--n", "1000", "--w", "0.125"]));
    assert_eq!(t[0], ["k", "lambda", "lower", "upper", "in_envelope"]);
    let row = t.iter().find(|r| r[0] == "243").expect("index 243 listed");
    let lambda: f64 = row[1].parse().unwrap();
    assert!((lambda - 0.99967773).abs() < 1e-8);
    assert!(t[1..].iter().all(|r| r[4] == "true"));
}

#[test]
fn eigs_single_point() {
    let t = rows(&stdout(&["eigs", "--n", "1", "--w", "0.1"]));
    assert_eq!(t.len(), 2);
    assert!((t[1][1].parse::<f64>().unwrap() - 0.2).abs() < 1e-15);
}

#[test]
fn dense_and_tridiagonal_agree() {
    let base = ["eigs", "--n", "256", "--w", "0.1", "--kmin", "0", "--kmax", "255"];
    let trid = rows(&stdout(&[&base[..], &["--method", "trid"]].concat()));
    let dense = rows(&stdout(&[&base[..], &["--method", "dense"]].concat()));
    assert_eq!(trid.len(), 257);
    for (a, b) in trid[1..].iter().zip(&dense[1..]) {
        let (x, y): (f64, f64) = (a[1].parse().unwrap(), b[1].parse().unwrap());
        assert!((x - y).abs() <= 1e-10, "k = {}: {x} vs {y}", a[0]);
    }
}

#[test]
fn width_row_matches_reference() {
    let t = rows(&stdout(&["width", "--n", "1000", "--w", "0.125", "--eps", "1e-3"]));
    assert_eq!(t[0], ["N", "W", "eps", "width", "thm1", "thm2", "eq2", "eq3", "eq6"]);
    assert_eq!(&t[1][3..], ["12", "14", "23", "1806", "1000", "185"]);
}

#[test]
fn bounds_at_tiny_size_are_finite() {
    let t = rows(&stdout(&["bounds", "--n", "2", "--w", "0.25", "--eps", "0.25"]));
    let v = column(&t, "value");
    let thm1 = t.iter().find(|r| r[0] == "thm1").unwrap();
    assert!(thm1[v].parse::<f64>().unwrap().is_finite());
    for r in &t[1..] {
        if !r[v].is_empty() {
            assert!(r[v].parse::<f64>().unwrap().is_finite(), "{r:?}");
        }
    }
}

#[test]
fn empty_sweep_is_header_only() {
    let text = stdout(&["sweep", "--mode", "figure2", "--n-min-exp", "6", "--n-max-exp", "5"]);
    assert_eq!(text, "N,W,eps,width,bound_thm1,bound_thm2,gap,advisory\n");
}

#[test]
fn sweep_from_config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.toml");
    let out = dir.path().join("out.json");
    std::fs::write(&cfg, "mode = \"custom\"\nn = [64, 128]\nw = [0.1]\neps = [1e-3]\nformat = \"json\"\n").unwrap();
    stdout(&["sweep", "--config", cfg.to_str().unwrap(), "--n", "64", "--out", out.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 1);
    assert_eq!(arr[0]["N"], 64);
    assert!(arr[0]["width"].as_i64().unwrap() <= arr[0]["bound_thm1"].as_i64().unwrap());
}

#[test]
fn exit_codes() {
    assert_eq!(prolate(&["eigs", "--n", "0", "--w", "0.1"]).status.code(), Some(2));
    assert_eq!(prolate(&["width", "--n", "10", "--w", "0.6", "--eps", "0.1"]).status.code(), Some(2));
    assert_eq!(prolate(&["width", "--n", "10", "--w", "0.1", "--eps", "0.7"]).status.code(), Some(2));
    assert_eq!(prolate(&["eigs", "--n", "10"]).status.code(), Some(2));
    let out = prolate(&["sweep", "--n", "16", "--w", "0.25", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(out.status.code(), Some(3));
    let cfg = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(cfg.path(), "bogus = 1\n").unwrap();
    assert_eq!(prolate(&["sweep", "--config", cfg.path().to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(prolate(&["sweep", "--config", "/nonexistent-dir/s.toml"]).status.code(), Some(3));
}

#[test]
fn pswf_reference_value() {
    let t = rows(&stdout(&["pswf", "--c", "392.699", "--eps", "1e-3"]));
    assert_eq!(t[1][column(&t, "thm3_bound")], "23");
    let inner: usize = t[1][column(&t, "inner_width")].parse().unwrap();
    let outer: usize = t[1][column(&t, "outer_width")].parse().unwrap();
    assert!(inner <= outer && outer <= 23);
}

#[test]
fn json_format() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["width", "--n", "1000", "--w", "0.125", "--eps", "1e-3", "--format", "json"])).unwrap();
    assert_eq!(v[0]["width"], 12);
    assert_eq!(v[0]["W"], 0.125);
}

#[test]
fn verify_displacement_passes() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["verify", "--suite", "displacement"])).unwrap();
    assert_eq!(v["failed"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_is_deterministic() {
    let a = stdout(&["verify", "--suite", "all", "--seed", "7"]);
    let b = stdout(&["verify", "--suite", "all", "--seed", "7", "--jobs", "2"]);
    assert_eq!(a, b);
}
