use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn k3niem(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3niem")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn a1s(k: usize) -> String {
    let rows: Vec<String> = (0..k)
        .map(|i| format!("[{}]", (0..k).map(|j| if i == j { "-2" } else { "0" }).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", rows.join(","))
}

#[test]
fn verify_all_records_passes_the_gate() {
    let o = k3niem(&["cases", "verify"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.lines().last().unwrap().contains("gate passed"));
    assert!(out.contains("data-error Case22/n=46/H_{46,2}"));
}

#[test]
fn filtered_json_report() {
    let o = k3niem(&["cases", "verify", "--filter", "Case13/*", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let recs = v["records"].as_array().unwrap();
    assert_eq!(recs.len(), 3);
    for r in recs {
        assert_eq!(r["verdict"], "match");
        for key in ["label", "expected", "computed", "citation"] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
    }
    assert_eq!(v["summary"]["total"], 3);
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(code(&k3niem(&["cases", "verify", "--filter", "Nothing/*"])), 2);
    assert_eq!(code(&k3niem(&["cases", "verify", "--filter", "["])), 2);
    assert_eq!(code(&k3niem(&["catalog", "show", "24"])), 2);
    assert_eq!(code(&k3niem(&["lattice", "disc", "--in", "/nonexistent/lattice.json"])), 2);
    let o = k3niem(&["group", "coinv", "--niemeier", "23", "--perm", "(a1 a2)(a1 a3)"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("(a1 a2)"));
    let o = k3niem(&["group", "coinv", "--niemeier", "23", "--perm", "(a1 a2)"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a lattice automorphism"));
}

#[test]
fn footnotes_match() {
    let o = k3niem(&["cases", "footnotes"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("match")).count(), 7);
}

#[test]
fn catalog_show() {
    let v = json(&k3niem(&["catalog", "show", "23"]));
    assert_eq!(v["rank"], 24);
    assert_eq!(v["even"], true);
    assert_eq!(v["root_system"], "24A1");
}

#[test]
fn lattice_commands() {
    let dir = TempDir::new().unwrap();
    let a2 = write(&dir, "a2.json", r#"{"gram": [[-2, 1], [1, -2]]}"#);
    let a2 = a2.to_str().unwrap();
    let v = json(&k3niem(&["lattice", "disc", "--in", a2]));
    assert_eq!(v["group"], "Z/3");
    assert_eq!(v["length"], 1);
    let v = json(&k3niem(&["lattice", "snf", "--in", a2]));
    assert_eq!(v["divisors"], serde_json::json!(["1", "3"]));
    let v = json(&k3niem(&["lattice", "roots", "--in", a2]));
    assert_eq!(v["root_count"], 6);
    let v = json(&k3niem(&["lattice", "padic", "--p", "3", "--in", a2]));
    assert!(v["jordan"]["blocks"].as_array().unwrap().len() == 2);
    let v = json(&k3niem(&["lattice", "padic", "--prime", "2", "--in", a2]));
    assert_eq!(v["splits_q_theta"], false);
}

#[test]
fn embed_commands() {
    let dir = TempDir::new().unwrap();
    let a13 = write(&dir, "a13.json", &a1s(13));
    let a13 = a13.to_str().unwrap();
    let o = k3niem(&["embed", "negdef", "--in", a13]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("fails (2)"));
    let o = k3niem(&["embed", "unimodular", "--plus", "0", "--minus", "24", "--in", a13]);
    assert!(stdout(&o).starts_with("fails (2)"));
    let u = write(&dir, "u.json", "[[0, 1], [1, 0]]");
    let o = k3niem(&["embed", "hyperbolic", "--in", u.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("exists"));
    let z = write(&dir, "z.json", "[[0, 0], [0, -2]]");
    let o = k3niem(&["embed", "semidef", "--in", z.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("exists"));
    let o = k3niem(&["embed", "negdef", "--in", u.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn coinvariant_and_closure() {
    let swap = "(a1_1 a1_2)(a2_1 a2_2)(a3_1 a3_2)(a4_1 a4_2)(a5_1 a5_2)(a6_1 a6_2)(a7_1 a7_2)(a8_1 a8_2)";
    let o = k3niem(&["group", "coinv", "--niemeier", "3", "--perm", swap]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["rank"], 8);
    assert_eq!(v["disc"], "(Z/2)^8");
    assert_eq!(v["kahk3"], true);

    let dir = TempDir::new().unwrap();
    let cols: Vec<String> = (0..9)
        .map(|c| format!("[{}]", (0..24).map(|i| if i == c { "1" } else { "0" }).collect::<Vec<_>>().join(",")))
        .collect();
    let gens = write(&dir, "gens.json", &format!("[{}]", cols.join(",")));
    let v = json(&k3niem(&["primclose", "--niemeier", "23", "--gens", gens.to_str().unwrap()]));
    assert_eq!(v["rank"], 9);
}
