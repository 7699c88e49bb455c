//! End-to-end command tests: generation, computation, agreement flags,
//! error paths, and byte-for-byte record reproducibility.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_stabinv"))
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("command runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, contents: &str) {
    std::fs::write(dir.join(name), contents).unwrap();
}

#[test]
fn compute_ghz_renyi_all_methods_agree() {
    let dir = tempdir("ghz-all");
    assert!(run_in(&dir, &["gen", "ghz"]).status.success());
    write(&dir, "renyi.spec", "type: renyi-multientropy\nn: 2\nq: 3\n");
    let out = run_in(&dir, &["compute", "ghz.graph", "renyi.spec"]);
    assert!(out.status.success());
    let record: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(record["agreement"], serde_json::json!(true));
    // Z = 2^{-3}, i.e. E_2 = 3; four methods: three engines + closed form.
    assert_eq!(record["results"].as_array().unwrap().len(), 4);
    for r in record["results"].as_array().unwrap() {
        assert_eq!(r["magnitude_log2"], serde_json::json!("-3/1"));
    }
}

#[test]
fn compute_bell_coxeter_m2_is_one_half() {
    let dir = tempdir("bell-cox");
    assert!(run_in(&dir, &["gen", "bell"]).status.success());
    write(&dir, "cox.spec", "type: coxeter\nm: 2\n");
    let out = run_in(&dir, &["compute", "bell.graph", "cox.spec", "--method", "dense"]);
    assert!(out.status.success());
    let record: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    // Z = 1/2: ring tuple (1,0,0,0,2) = 2^{-2/2}.
    assert_eq!(
        record["results"][0]["value"],
        serde_json::json!([1, 0, 0, 0, 2])
    );
}

#[test]
fn malformed_tableau_names_the_line() {
    let dir = tempdir("badfile");
    write(&dir, "bad.tab", "parties: q0=A q1=B q2=C\n+XXX\n+XQX\n");
    write(&dir, "renyi.spec", "type: renyi-multientropy\nn: 2\nq: 3\n");
    let out = run_in(&dir, &["compute", "bad.tab", "renyi.spec"]);
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("3"), "error should name line 3, got: {err}");
}

#[test]
fn run_records_are_reproducible() {
    let dir = tempdir("repro");
    assert!(run_in(&dir, &["gen", "ghz"]).status.success());
    write(&dir, "renyi.spec", "type: renyi-multientropy\nn: 2\nq: 3\n");
    let strip_times = |s: &str| {
        let mut v: serde_json::Value = serde_json::from_str(s.trim()).unwrap();
        for r in v["results"].as_array_mut().unwrap() {
            r["wall_us"] = serde_json::json!(0);
        }
        v
    };
    let a = stdout(&run_in(&dir, &["compute", "ghz.graph", "renyi.spec"]));
    let b = stdout(&run_in(&dir, &["compute", "ghz.graph", "renyi.spec"]));
    // Identical up to wall-clock timings, which are measurements.
    assert_eq!(strip_times(&a), strip_times(&b));
}

#[test]
fn gen_toric_emits_sidecar_and_rank() {
    let dir = tempdir("toric");
    assert!(run_in(&dir, &["gen", "toric", "--l", "2"]).status.success());
    let xgen = std::fs::read_to_string(dir.join("toric-L2.xgen")).unwrap();
    assert_eq!(xgen.lines().count(), 3); // independent star generators
    assert!(xgen.lines().all(|l| l.len() == 8));
    let coords: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("toric-L2.xgen.coords.json")).unwrap())
            .unwrap();
    assert_eq!(coords.as_array().unwrap().len(), 8);
}

#[test]
fn gen_random_graph_is_seeded() {
    let dir = tempdir("rg");
    let args = ["gen", "random-graph", "--n", "6", "--p", "0.5", "--q", "3", "--seed", "7"];
    assert!(run_in(&dir, &args).status.success());
    let first = std::fs::read_to_string(dir.join("random-n6-seed7.graph")).unwrap();
    assert!(run_in(&dir, &args).status.success());
    let second = std::fs::read_to_string(dir.join("random-n6-seed7.graph")).unwrap();
    assert_eq!(first, second);
}

#[test]
fn verify_fault_injection_exits_nonzero() {
    let ok = bin()
        .args(["verify", "--trials", "3", "--max-qubits", "4"])
        .output()
        .unwrap();
    assert!(ok.status.success());
    let fail = bin()
        .args(["verify", "--trials", "3", "--max-qubits", "4"])
        .env("STABINV_INJECT_FAULT", "1")
        .output()
        .unwrap();
    assert!(!fail.status.success());
}

fn tempdir(tag: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("stabinv-cli-test-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
