use std::path::PathBuf;
use std::process::{Command, Output};

fn legr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_legr")).args(args).output().expect("binary runs")
}

fn six_valent() -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "data", "six_valent.lgr"].iter().collect();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_temp(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("legr-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn ruling_polynomial_of_six_valent() {
    let out = legr(&["rp", &six_valent()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "q^(3/2) z^-3 + 2 q^2 z^-2 + 2 q^(5/2) z^-1 + q^3 z^-2 + q^3");
    let json: serde_json::Value = serde_json::from_slice(&legr(&["rp", &six_valent(), "--json"]).stdout).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 5);
    assert_eq!(json[0], serde_json::json!({"qh": 3, "z": -3, "c": 1}));
}

#[test]
fn restricted_resolution() {
    let out = legr(&["rp", &six_valent(), "--phi", "1-6, 2-5, 3-4"]);
    assert_eq!(stdout(&out).trim(), "q^3 z^-2 + q^3");
    assert_eq!(legr(&["rp", &six_valent(), "--phi", "1-2"]).status.code(), Some(2));
}

#[test]
fn theorem_verifies() {
    let out = legr(&["verify", "theorem", &six_valent(), "--q", "2,3,5,7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("q=7: aug=216/343 ruling side=216/343 ok"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("normal-form assumption violated"));
}

#[test]
fn aug_json_schema() {
    let out = legr(&["aug", &six_valent(), "--q", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["aug"], serde_json::json!({"num": 1, "den": 8}));
    assert_eq!(v["q"], 2);
    assert_eq!(v["dim"], 12);
    assert_eq!(v["count"], 512);
    assert_eq!(v["strata"].as_array().unwrap().len(), 7);
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn bruteforce_compares_with_formula() {
    let out = legr(&["bruteforce", "vertex", "--type", "0,2", "--mu", "1,0", "--q", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("brute force: 2"));
    let out = legr(&["bruteforce", "trivial", "--mu", "1,1,0,0", "--q", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v, serde_json::json!({"count": 48, "formula": "48", "agree": true}));
    assert_eq!(legr(&["bruteforce", "vertex", "--type", "0,2", "--mu", "1", "--q", "3"]).status.code(), Some(2));
    assert_eq!(legr(&["bruteforce", "trivial", "--mu", "1,0", "--q", "4"]).status.code(), Some(2));
}

#[test]
fn parse_round_trips_and_reports_errors() {
    let out = legr(&["parse", &six_valent()]);
    assert_eq!(out.status.code(), Some(0));
    let path = write_temp("canonical.lgr", &stdout(&out));
    assert_eq!(stdout(&legr(&["parse", &path])), stdout(&out));

    let bad = write_temp("bad.lgr", "tangle t {\n  left 0 []\n  Q 1\n}\n");
    let out = legr(&["parse", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("3:"));
    assert_eq!(legr(&["parse", "/nonexistent/file.lgr"]).status.code(), Some(2));
    assert_eq!(legr(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn borders_are_required_or_enumerated() {
    let t = write_temp("trivial.lgr", "tangle t { left 4 [1,1,0,0] }\n");
    let out = legr(&["rp", &t]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 4);
    let out = legr(&["rp", &t, "--left", "1-4,2-3", "--right", "1-4,2-3"]);
    assert_eq!(stdout(&out).trim(), "1");
    assert_eq!(legr(&["aug", &t, "--q", "3"]).status.code(), Some(2));
    let out = legr(&["aug", &t, "--q", "3", "--left", "1-3,2-4", "--right", "1-3,2-4"]);
    assert!(stdout(&out).contains("aug = 1"));
    assert_eq!(legr(&["rp", &t, "--left", "1-2,3-4", "--right", "1-4,2-3"]).status.code(), Some(2));
}

#[test]
fn moves_and_base_points_verify() {
    let trefoil = write_temp("trefoil.lgr", "tangle trefoil { left 0 [] L 0 1 L 2 0 X 1 X 1 X 1 R 0 bp R 0 bp }\n");
    let out = legr(&["verify", "moves", &trefoil]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("verified\n"));
    assert_eq!(legr(&["verify", "basepoint", &six_valent(), "--q", "5"]).status.code(), Some(0));

    let moved = legr(&["move", &trefoil, "--id", "I", "--at", "2", "--expand"]);
    assert_eq!(moved.status.code(), Some(0));
    let path = write_temp("moved.lgr", &stdout(&moved));
    assert_eq!(stdout(&legr(&["rp", &path])), stdout(&legr(&["rp", &trefoil])));
    assert_eq!(legr(&["move", &trefoil, "--id", "III", "--at", "0"]).status.code(), Some(2));
}

#[test]
fn gluing_verifies() {
    let a = write_temp("left.lgr", "tangle a { left 0 [] L 0 1 }\n");
    let b = write_temp("right.lgr", "tangle b { left 2 [1,0] X 0 X 0 R 0 bp }\n");
    let out = legr(&["verify", "gluing", &a, &b]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn output_is_deterministic() {
    let args = ["rulings", &six_valent(), "--json"];
    let first = legr(&args).stdout;
    for threads in ["1", "4"] {
        let out = Command::new(env!("CARGO_BIN_EXE_legr")).args(args).env("LEGR_THREADS", threads).output().unwrap();
        assert_eq!(out.stdout, first);
    }
}
