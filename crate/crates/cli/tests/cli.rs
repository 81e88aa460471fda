use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn annulus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_annulus")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

#[test]
fn phi_of_ring() {
    let ring = fixture("ring8.txt");
    let out = annulus(&["phi", ring.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out), serde_json::json!([[0, 0, "1"], [1, 0, "1"]]));
    let out = annulus(&["phi", ring.to_str().unwrap(), "--cover", "2", "--engine", "interp"]);
    assert_eq!(stdout_json(&out), serde_json::json!([[0, 0, "1"], [1, 0, "1"]]));
}

#[test]
fn verify_passes_on_rings() {
    for name in ["ring8.txt", "ring32.txt"] {
        let out = annulus(&["verify", fixture(name).to_str().unwrap(), "--all"]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let verdicts = stdout_json(&out);
        let verdicts = verdicts.as_array().unwrap();
        assert!(verdicts.len() >= 10);
        assert!(verdicts.iter().all(|v| v["status"] != "fail"));
    }
}

#[test]
fn input_errors_exit_two() {
    let out = annulus(&["phi", fixture("two_holes.txt").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad topology"));

    let out = annulus(&["load", fixture("bad_char.txt").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3, column 2"));

    let out = annulus(&["phi", fixture("missing.txt").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn load_reports_topology() {
    let out = annulus(&["load", fixture("ring32.txt").to_str().unwrap(), "--json"]);
    let v = stdout_json(&out);
    assert_eq!(v["topology"], "annulus");
    assert_eq!(v["squares"], 32);
    assert_eq!(v["boundary_curvatures"], serde_json::json!([4, -4]));
    assert_eq!(v["cut_length"], 2);
}

#[test]
fn enumerate_and_flips() {
    let ring = fixture("ring8.txt");
    let v = stdout_json(&annulus(&["enumerate", ring.to_str().unwrap()]));
    assert_eq!(v["count"], 2);
    let fluxes: Vec<i64> = v["tilings"].as_array().unwrap().iter().map(|t| t["flux"].as_i64().unwrap()).collect();
    assert_eq!(fluxes.iter().max().unwrap() - fluxes.iter().min().unwrap(), 1);
    let v = stdout_json(&annulus(&["enumerate", ring.to_str().unwrap(), "--limit", "1"]));
    assert_eq!(v["count"], 1);

    let v = stdout_json(&annulus(&["flips", fixture("ring32.txt").to_str().unwrap()]));
    assert!(v.as_array().unwrap().iter().all(|c| c["connected"] == true));
}

#[test]
fn transfer_trace_matches_phi() {
    let ring = fixture("ring32.txt");
    let t = stdout_json(&annulus(&["transfer", ring.to_str().unwrap()]));
    let phi = stdout_json(&annulus(&["phi", ring.to_str().unwrap()]));
    let canon = |v: &serde_json::Value| {
        annulus_core::io::poly_from_json(&v.to_string()).unwrap().canonical()
    };
    assert_eq!(canon(&t["trace"]), canon(&phi));
}

#[test]
fn corpus_files_load_back() {
    let dir = std::env::temp_dir().join(format!("annulus-corpus-{}", std::process::id()));
    let out = annulus(&["corpus", "--seed", "5", "--out", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let band = dir.join("band-4-width-4.glu");
    let v = stdout_json(&annulus(&["load", band.to_str().unwrap(), "--json"]));
    assert_eq!(v["walls"], 3);
    let phi = stdout_json(&annulus(&["phi", band.to_str().unwrap()]));
    let p = annulus_core::io::poly_from_json(&phi.to_string()).unwrap();
    assert_eq!(p.at_q_one().canonical(), annulus_core::LaurentPoly::from_p_coeffs(0, &[1, 2, 1]));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn bench_emits_csv() {
    let out = annulus(&["bench", "--max-cover", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("name,cover,squares,det_ms,interp_ms,transfer_ms,agree"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.len() >= 20);
    assert!(rows.iter().all(|r| r.ends_with(",true")));
}
