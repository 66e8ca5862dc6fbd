use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn nci(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nci"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json_of(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let o = nci(&a);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).expect("json output")
}

fn p(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn mobius_of_three_sets_over_d() {
    let o = nci(&["lattice", "build", "-i", &p("l2.json"), "--mobius"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{a,b,c,d}\t1\n{c,d}\t-1\n{b,d}\t-1\n{a,d}\t-1\n{d}\t2\n");
    let v = json_of(&["mobius", "-i", &p("l2.json")]);
    assert_eq!(v["mobius"]["{d}"], 2);
}

#[test]
fn abstract_lattice_values() {
    let v = json_of(&["mobius", "-i", &p("l1.json")]);
    for (node, mu) in [("N2∪N3", 1), ("2N", -1), ("3N", -1), ("6N", 1), ("12N", 0)] {
        assert_eq!(v["mobius"][node], mu, "{node}");
    }
}

#[test]
fn generalised_values_of_a_configuration() {
    let v = json_of(&["mobius", "-i", &p("b4.json")]);
    let m = v["mobius"].as_object().unwrap();
    assert_eq!(m.len(), 4);
    assert_eq!(m["{1,3}"], -1);
    assert_eq!(m["{1,2,3}"], 1);
}

#[test]
fn info_and_dot() {
    let v = json_of(&["lattice", "info", "-i", &p("l5.json")]);
    assert_eq!(v["nodes"], 13);
    assert_eq!(v["tight"], true);
    let o = nci(&["lattice", "dot", "-i", &p("l3.json"), "--mobius"]);
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph hasse {"));
    assert!(dot.contains("xlabel=\"-1\""));
}

#[test]
fn node_lists() {
    let v = json_of(&["nci", "-i", &p("l2.json")]);
    assert_eq!(v["nodes"], serde_json::json!(["{d}", "{a,d}", "{b,d}", "{c,d}"]));
    let v = json_of(&["ncpd", "-i", &p("downset.json")]);
    assert_eq!(v["nodes"], serde_json::json!(["{1}", "{0,1}", "{1,2}"]));
}

#[test]
fn verify_prints_value_and_multiplicities() {
    let o = nci(&[
        "witness",
        "verify",
        "-i",
        &p("l2_witness.sexp"),
        "-b",
        &p("l2_base.json"),
    ]);
    let text = stdout(&o);
    assert!(text.contains("value: {a,b,c,d}"));
    assert!(text.contains("left_linear: false"));
    assert!(text.contains("multiplicity {d}: -2"));
}

#[test]
fn search_and_cnf() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("l3.cnf");
    let cnf_s = cnf.to_string_lossy().into_owned();
    for engine in ["exhaustive", "sat"] {
        let v = json_of(&[
            "witness",
            "search",
            "-i",
            &p("l3.json"),
            "-p",
            "nci",
            "--engine",
            engine,
            "--strong",
            "--emit-cnf",
            &cnf_s,
        ]);
        assert_eq!(v["verdict"], "witness");
        assert_eq!(v["left_linear"], true);
    }
    let text = std::fs::read_to_string(&cnf).unwrap();
    assert!(text.lines().any(|l| l.starts_with("p cnf ")));
}

#[test]
fn search_over_an_explicit_base() {
    let v = json_of(&["witness", "search", "-b", &p("l2_base.json"), "--target", "{a,b,c,d}"]);
    assert_eq!(v["verdict"], "witness");
    let v = json_of(&[
        "witness",
        "search",
        "-b",
        &p("l2_base.json"),
        "--target",
        "{a}",
        "--max-steps",
        "1",
    ]);
    assert_eq!(v["verdict"], "refuted");
}

#[test]
fn constructions() {
    let v = json_of(&["construct", "avoid-zero", "-i", &p("downset.json"), "--zero", "{0}"]);
    assert_eq!(v["matches"], true);
    assert_eq!(v["avoids_zero"], true);
    assert!(v["dot"].as_str().unwrap().starts_with("digraph"));
    let v = json_of(&["construct", "allreach", "-i", &p("b4.json")]);
    assert_eq!(v["matches"], true);
    let v = json_of(&["construct", "nti-express", "-i", &p("l5.json"), "--left-linear"]);
    assert_eq!(v["matches"], true);
    assert_eq!(v["left_linear"], true);
}

#[test]
fn translations_chain() {
    let dir = tempfile::tempdir().unwrap();
    let v = json_of(&["translate", "nci-to-ncpd", "-i", &p("l2.json")]);
    assert_eq!(v["verdict"], "witness");
    let base = dir.path().join("base.json");
    let tree = dir.path().join("tree.sexp");
    std::fs::write(&base, v["base"].to_string()).unwrap();
    std::fs::write(&tree, v["tree"].as_str().unwrap()).unwrap();
    let back = json_of(&[
        "translate",
        "ncpd-to-nci",
        "-i",
        &p("l2.json"),
        "-b",
        &base.to_string_lossy(),
        "-t",
        &tree.to_string_lossy(),
    ]);
    std::fs::write(&base, back["base"].to_string()).unwrap();
    std::fs::write(&tree, back["tree"].as_str().unwrap()).unwrap();
    let o = nci(&[
        "witness",
        "verify",
        "-i",
        &tree.to_string_lossy(),
        "-b",
        &base.to_string_lossy(),
    ]);
    assert!(stdout(&o).contains("value: {a,b,c,d}"));
    let ncu = json_of(&[
        "translate",
        "nci-to-ncu",
        "-i",
        &p("l2.json"),
        "-b",
        &base.to_string_lossy(),
        "-t",
        &tree.to_string_lossy(),
    ]);
    assert!(ncu["family"]["universe"]
        .as_array()
        .unwrap()
        .contains(&Value::from("apex")));
}

#[test]
fn scan_of_three_elements() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("scan.jsonl");
    let o = nci(&["scan", "-n", "3", "--log", &log.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "10 instances, 10 witnesses, 0 candidates\n");
    let lines = std::fs::read_to_string(&log).unwrap();
    let first: Value = serde_json::from_str(lines.lines().next().unwrap()).unwrap();
    assert_eq!(first["instance"], 0);
}

#[test]
fn exit_codes() {
    assert_eq!(nci(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(nci(&["scan", "-n", "9"]).status.code(), Some(64));
    assert_eq!(
        nci(&["witness", "search", "-b", &p("l2_base.json")]).status.code(),
        Some(64)
    );
    let o = nci(&["construct", "avoid-zero", "-i", &p("downset.json"), "--zero", "{0,2}"]);
    assert_eq!(o.status.code(), Some(65));
    assert!(String::from_utf8_lossy(&o.stderr).contains("NotAZeroError"));
    let o = nci(&["nci", "-i", "/nonexistent.json"]);
    assert_eq!(o.status.code(), Some(65));
    assert_eq!(nci(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let args = ["witness", "search", "-i", &p("l5.json"), "-p", "nci", "--json"];
    let a = nci(&args);
    let b = nci(&args);
    assert_eq!(a.stdout, b.stdout);
}
