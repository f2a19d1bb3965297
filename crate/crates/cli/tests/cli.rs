//! End-to-end tests of the binary: file formats, reports, and exit codes.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pcog"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn kv(out: &Output) -> BTreeMap<String, String> {
    stdout(out)
        .lines()
        .filter_map(|l| l.split_once(" = "))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn gen_example(dir: &Path, id: &str) -> PathBuf {
    let path = dir.join(format!("example{id}.json"));
    let out = run(&["gen", "example", id, "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "gen example {id} failed");
    path
}

fn write_alloc(dir: &Path, name: &str, entries: &[(&str, &str)]) -> PathBuf {
    let map: BTreeMap<&str, &str> = entries.iter().cloned().collect();
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(&map).unwrap()).unwrap();
    path
}

#[test]
fn verify_example1_g1_canonical_allocation() {
    let dir = tempfile::tempdir().unwrap();
    let inst = gen_example(dir.path(), "1g1");
    let alloc = write_alloc(dir.path(), "a.json", &[("1", "1"), ("2", "1"), ("3", "0")]);
    let out = run(&["verify", inst.to_str().unwrap(), alloc.to_str().unwrap()]);
    assert!(out.status.success());
    let map = kv(&out);
    assert_eq!(map["verdict"], "CORE_STABLE");
    assert_eq!(map["grand_value"], "2");
}

#[test]
fn verify_reports_blocking_evidence() {
    let dir = tempfile::tempdir().unwrap();
    let inst = gen_example(dir.path(), "1g1");
    let alloc = write_alloc(dir.path(), "a.json", &[("1", "1"), ("2", "0"), ("3", "1")]);
    let out = run(&["verify", inst.to_str().unwrap(), alloc.to_str().unwrap()]);
    assert!(out.status.success());
    let map = kv(&out);
    assert_eq!(map["verdict"], "BLOCKED");
    assert_eq!(map["blocking_coalition"], "1,3");
    assert_eq!(map["blocking_value"], "1");
    assert!(map.contains_key("blocking_witness"));
}

#[test]
fn core_empty_with_certificate_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let inst = gen_example(dir.path(), "1g2");
    let cert = dir.path().join("cert.json");
    let out = run(&[
        "core",
        inst.to_str().unwrap(),
        "--cert-out",
        cert.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let map = kv(&out);
    assert_eq!(map["verdict"], "CORE_EMPTY");
    assert_eq!(map["cert.selfcheck"], "true");
    assert!(map.contains_key("cert.coalition.0"));

    let out = run(&["check-cert", inst.to_str().unwrap(), cert.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(kv(&out)["valid"], "true");

    // tampering with the certificate flips the verdict
    let text = std::fs::read_to_string(&cert).unwrap();
    let tampered = text.replace("\"1/2\"", "\"1/3\"");
    assert_ne!(text, tampered);
    std::fs::write(&cert, tampered).unwrap();
    let out = run(&["check-cert", inst.to_str().unwrap(), cert.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(kv(&out)["valid"], "false");
}

#[test]
fn value_example3_agent1() {
    let dir = tempfile::tempdir().unwrap();
    let inst = gen_example(dir.path(), "3");
    let out = run(&["value", inst.to_str().unwrap(), "--coalition", "1"]);
    assert!(out.status.success());
    assert_eq!(kv(&out)["value"], "3");
}

#[test]
fn methods_agree_on_every_example() {
    let dir = tempfile::tempdir().unwrap();
    for id in ["1g1", "1g2", "2g1", "2g2", "3", "4g1", "4g2"] {
        let inst = gen_example(dir.path(), id);
        let full = run(&["core", inst.to_str().unwrap(), "--method", "full"]);
        let cut = run(&["core", inst.to_str().unwrap(), "--method", "cut"]);
        assert!(full.status.success() && cut.status.success());
        assert_eq!(kv(&full)["verdict"], kv(&cut)["verdict"], "example {id}");
    }
}

#[test]
fn generated_files_are_canonical_and_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = gen_example(dir.path(), "2g1");
    let first = std::fs::read_to_string(&a).unwrap();
    let b = dir.path().join("again.json");
    run(&["gen", "example", "2g1", "--out", b.to_str().unwrap()]);
    let second = std::fs::read_to_string(&b).unwrap();
    assert_eq!(first, second);
    // a canonical file survives a reduce round trip untouched on disk
    assert!(first.ends_with('\n'));
}

#[test]
fn sat_unsat_generation_and_verification() {
    let dir = tempfile::tempdir().unwrap();
    let phi1 = dir.path().join("phi1.cnf");
    let phi2 = dir.path().join("phi2.cnf");
    std::fs::write(&phi1, "p cnf 1 1\n1 1 1 0\n").unwrap();
    std::fs::write(&phi2, "p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n").unwrap();
    let inst = dir.path().join("gadget.json");
    let out = run(&[
        "gen",
        "sat-unsat",
        phi1.to_str().unwrap(),
        phi2.to_str().unwrap(),
        "--out",
        inst.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let map = kv(&out);
    assert_eq!(map["expected"], "true");
    assert_eq!(map["alloc.1"], "5");

    let alloc = write_alloc(dir.path(), "a.json", &[("1", "5")]);
    let out = run(&["verify", inst.to_str().unwrap(), alloc.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(kv(&out)["verdict"], "CORE_STABLE");
}

#[test]
fn membership_generators_and_reduce() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("path.json");
    std::fs::write(
        &graph,
        r#"{"vertices": ["a", "b", "c"], "edges": [["a", "b"], ["b", "c"]]}"#,
    )
    .unwrap();
    let gadget = dir.path().join("gadget.json");
    let out = run(&[
        "gen",
        "vc-member",
        graph.to_str().unwrap(),
        "a",
        "--out",
        gadget.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(kv(&out)["expected"], "false");
    let core = run(&["core", gadget.to_str().unwrap()]);
    assert_eq!(kv(&core)["verdict"], "CORE_EMPTY");

    let out = run(&["gen", "ds-member", graph.to_str().unwrap(), "b"]);
    assert!(out.status.success());
    assert_eq!(kv(&out)["expected"], "true");

    // reduce the worked vertex-cover instance and check agent count
    let vc = gen_example(dir.path(), "1g1");
    let ds = dir.path().join("reduced.json");
    let out = run(&[
        "reduce",
        "vc-to-ds",
        vc.to_str().unwrap(),
        "--out",
        ds.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(kv(&out)["agents"].split(',').count(), 7);
    let core = run(&["core", ds.to_str().unwrap()]);
    assert_eq!(kv(&core)["verdict"], "CORE_NONEMPTY");
}

#[test]
fn fractional_ds_on_a_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("c4.json");
    std::fs::write(
        &inst,
        r#"{
  "edges": [["a", "b"], ["a", "d"], ["b", "c"], ["c", "d"]],
  "goal": "min-dominating-set",
  "ownership": {"1": ["a"], "2": ["b"], "3": ["c"], "4": ["d"]},
  "vertices": ["a", "b", "c", "d"]
}"#,
    )
    .unwrap();
    let out = run(&["fractional-ds", inst.to_str().unwrap()]);
    assert!(out.status.success());
    let map = kv(&out);
    assert_eq!(map["fractional_value"], "4/3");
    assert_eq!(map["integer_value"], "2");
    assert_eq!(map["equal"], "false");
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = run(&["core", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn precondition_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    // bird on a non-tree goal
    let inst = gen_example(dir.path(), "1g1");
    let out = run(&["bird", inst.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));

    // allocation with the wrong agent set
    let alloc = write_alloc(dir.path(), "a.json", &[("1", "2")]);
    let out = run(&["verify", inst.to_str().unwrap(), alloc.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));

    // instance failing validation: a dominating-set game with an unowned vertex
    let broken = dir.path().join("broken.json");
    std::fs::write(
        &broken,
        r#"{
  "edges": [["a", "b"]],
  "goal": "min-dominating-set",
  "ownership": {"1": ["a"]},
  "vertices": ["a", "b"]
}"#,
    )
    .unwrap();
    let out = run(&["core", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));

    // unknown coalition member
    let out = run(&["value", inst.to_str().unwrap(), "--coalition", "9"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn outputs_are_deterministic_across_runs_and_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let inst = gen_example(dir.path(), "4g1");
    let baseline = stdout(&run(&["core", inst.to_str().unwrap(), "--method", "cut"]));
    let repeat = stdout(&run(&["core", inst.to_str().unwrap(), "--method", "cut"]));
    assert_eq!(baseline, repeat);
    let single_thread = bin()
        .args(["core", inst.to_str().unwrap(), "--method", "cut"])
        .env("RAYON_NUM_THREADS", "1")
        .output()
        .expect("binary runs");
    assert_eq!(baseline, stdout(&single_thread));
    let many_threads = bin()
        .args(["core", inst.to_str().unwrap(), "--method", "cut"])
        .env("RAYON_NUM_THREADS", "8")
        .output()
        .expect("binary runs");
    assert_eq!(baseline, stdout(&many_threads));
}
