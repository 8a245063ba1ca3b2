use std::process::{Command, Output};

use titchweyl::cli::parse_compute_json;
use titchweyl::direct::r_direct;

fn titchweyl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_titchweyl"))
        .args(args)
        .env_remove("TITCHWEYL_FORMAT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn compute_ell_one_agrees() {
    let o = titchweyl(&["compute", "--ell", "1", "--method", "both", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| *l == "-(1/36)*a*λ").count(), 2);
    assert!(stderr(&o).contains("AGREE"));
    assert!(!out.contains("AGREE"));
}

#[test]
fn compute_ell_zero_prints_zeros() {
    let o = titchweyl(&["compute", "--ell", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0\n0\n0\n");
}

#[test]
fn json_round_trip() {
    for ell in [1, 3, 6] {
        let o = titchweyl(&["compute", "--ell", &ell.to_string(), "--format", "json"]);
        assert_eq!(o.status.code(), Some(0));
        let (r, p) = parse_compute_json(&stdout(&o)).unwrap();
        let d = r_direct(ell).unwrap();
        assert_eq!(r, d.r_over);
        assert_eq!(p, d.p_poly);
    }
}

#[test]
fn format_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_titchweyl"))
        .args(["compute", "--ell", "2", "--method", "direct"])
        .env("TITCHWEYL_FORMAT", "latex")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next().unwrap(), r"-\frac{13 a \lambda^{2}}{7200} - \frac{a^{3} \lambda}{7200}");
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("titchweyl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r2.json");
    let o = titchweyl(&["compute", "--ell", "2", "--format", "json", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let (r, _) = parse_compute_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r, r_direct(2).unwrap().r_over);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_small_range() {
    let o = titchweyl(&["verify", "--max-ell", "8", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["overall"], true);
    assert_eq!(v["per_ell"].as_array().unwrap().len(), 9);
}

#[test]
fn tables_json() {
    let o = titchweyl(&["tables", "--ell", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["alpha"].as_array().unwrap().len(), 5);
    assert_eq!(v["gamma"].as_array().unwrap().len(), 2);
}

#[test]
fn eval_negative_lambda() {
    let o = titchweyl(&["eval", "--ell", "1", "--a", "1", "--lambda", "-1,0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("original:"));
    assert!(out.contains("relative difference"));
}

#[test]
fn bench_rows() {
    let o = titchweyl(&["bench", "--max-ell", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn exit_codes() {
    assert_eq!(titchweyl(&[]).status.code(), Some(2));
    assert_eq!(titchweyl(&["compute", "--ell", "x"]).status.code(), Some(2));
    assert_eq!(titchweyl(&["compute", "--ell", "1", "--format", "pdf"]).status.code(), Some(2));
    assert_eq!(titchweyl(&["verify", "--min-ell", "4", "--max-ell", "1"]).status.code(), Some(2));
    assert_eq!(titchweyl(&["--help"]).status.code(), Some(0));
    let domain = titchweyl(&["eval", "--ell", "1", "--a", "1", "--lambda", "0,0"]);
    assert_eq!(domain.status.code(), Some(1));
    assert_eq!(stderr(&domain).lines().count(), 1);
}
