use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn indmorse(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_indmorse"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn gen(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.path().join(name);
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let out = indmorse(&full);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn write(dir: &TempDir, name: &str, value: &Value) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, value.to_string()).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_kinds() {
    let dir = TempDir::new().unwrap();
    let grid: Value = serde_json::from_str(
        &std::fs::read_to_string(gen(
            &dir,
            "g.json",
            &["grid", "--m", "1", "--n", "1", "--sizes", "1,1,1,1"],
        ))
        .unwrap(),
    )
    .unwrap();
    assert_eq!(grid["n"], 4);
    assert_eq!(grid["labels"], json!([[0, 0], [0, 1], [1, 0], [1, 1]]));
    // (0,1) and (1,0) are the only incomparable cells
    assert_eq!(grid["edges"].as_array().unwrap().len(), 5);

    let z6: Value = serde_json::from_str(
        &std::fs::read_to_string(gen(
            &dir,
            "z6.json",
            &["power", "--p", "2", "--q", "3", "--m", "1", "--n", "1"],
        ))
        .unwrap(),
    )
    .unwrap();
    assert_eq!(z6["n"], 6);
    assert_eq!(z6["edges"].as_array().unwrap().len(), 13);

    let k3: Value =
        serde_json::from_str(&std::fs::read_to_string(gen(&dir, "k3.json", &["complete", "--n", "3"])).unwrap())
            .unwrap();
    assert_eq!(k3["edges"], json!([[0, 1], [0, 2], [1, 2]]));

    let a = std::fs::read(gen(&dir, "r1.json", &["chordal-random", "--n", "9", "--seed", "7"])).unwrap();
    let b = std::fs::read(gen(&dir, "r2.json", &["chordal-random", "--n", "9", "--seed", "7"])).unwrap();
    assert_eq!(a, b);
}

#[test]
fn bad_parameters_exit_2() {
    assert_eq!(code(&indmorse(&["gen", "grid", "--m", "1"])), 2);
    assert_eq!(code(&indmorse(&["gen", "cycle", "--n", "2"])), 2);
    assert_eq!(
        code(&indmorse(&[
            "gen", "power", "--p", "4", "--q", "3", "--m", "1", "--n", "1"
        ])),
        2
    );
    assert_eq!(
        code(&indmorse(&["gen", "grid", "--m", "1", "--n", "1", "--sizes", "1,1"])),
        2
    );
    assert_eq!(code(&indmorse(&["analyze", "/nonexistent/graph.json"])), 2);
    assert_eq!(code(&indmorse(&["frobnicate"])), 2);
}

#[test]
fn analyze_named_graphs() {
    let dir = TempDir::new().unwrap();
    let p5 = gen(&dir, "p5.json", &["path", "--n", "5"]);
    let out = indmorse(&["analyze", s(&p5), "--oracle", "--gamma"]);
    assert_eq!(code(&out), 0);
    let report = json_of(&out);
    assert_eq!(report["critical_f"], json!([1, 1]));
    assert_eq!(report["homotopy"], json!({"wedge": [0, 1]}));
    assert_eq!(report["oracle"]["consistent"], json!(true));
    assert_eq!(report["gamma"], json!({"gamma": 2, "bound_holds": true}));

    let z6 = gen(
        &dir,
        "z6.json",
        &["power", "--p", "2", "--q", "3", "--m", "1", "--n", "1"],
    );
    for driver in ["auto", "chordal", "grid"] {
        let report = json_of(&indmorse(&["analyze", s(&z6), "--driver", driver]));
        assert_eq!(report["homotopy"], json!({"wedge": [3]}), "{driver}");
    }
    let counts = json_of(&indmorse(&[
        "analyze",
        s(&z6),
        "--mode",
        "counts",
        "--driver",
        "grid",
        "--table",
    ]));
    assert_eq!(counts["critical_f"], json!([4]));
    assert!(counts["table"].is_array());

    let p4 = gen(&dir, "p4.json", &["path", "--n", "4"]);
    assert_eq!(
        json_of(&indmorse(&["analyze", s(&p4)]))["homotopy"],
        json!("collapsible")
    );
}

#[test]
fn cycles_are_unsupported() {
    let dir = TempDir::new().unwrap();
    for n in ["4", "5"] {
        let c = gen(&dir, "c.json", &["cycle", "--n", n]);
        assert_eq!(code(&indmorse(&["analyze", s(&c), "--driver", "auto"])), 3);
        assert_eq!(code(&indmorse(&["analyze", s(&c), "--mode", "counts"])), 3);
        // the chordal driver refuses the input outright
        assert_eq!(code(&indmorse(&["analyze", s(&c), "--driver", "chordal"])), 2);
    }
}

#[test]
fn reports_are_byte_stable() {
    let dir = TempDir::new().unwrap();
    let g = gen(
        &dir,
        "r.json",
        &["chordal-random", "--n", "12", "--seed", "3", "--density", "0.4"],
    );
    let a = indmorse(&["analyze", s(&g), "--oracle", "--gamma", "--pairs"]);
    let b = indmorse(&["analyze", s(&g), "--oracle", "--gamma", "--pairs"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_of(&a)["generator"]["seed"], 3);
}

#[test]
fn verify_matchings() {
    let dir = TempDir::new().unwrap();
    let p5 = gen(&dir, "p5.json", &["path", "--n", "5"]);
    let report = json_of(&indmorse(&["analyze", s(&p5), "--pairs"]));
    let good = write(&dir, "good.json", &report["pairs"]);
    let out = indmorse(&["verify", s(&p5), s(&good)]);
    assert_eq!(code(&out), 0);
    assert_eq!(json_of(&out)["critical_f"], json!([1, 1]));

    let shared = write(&dir, "shared.json", &json!([[[0], [0, 2]], [[2], [0, 2]]]));
    let out = indmorse(&["verify", s(&p5), s(&shared)]);
    assert_eq!(code(&out), 1);
    assert_eq!(json_of(&out)["valid"], json!(false));

    let e3 = gen(&dir, "e3.json", &["empty", "--n", "3"]);
    let cyclic = write(
        &dir,
        "cyclic.json",
        &json!([[[0], [0, 1]], [[1], [1, 2]], [[2], [0, 2]]]),
    );
    let out = indmorse(&["verify", s(&e3), s(&cyclic)]);
    assert_eq!(code(&out), 1);
    assert_eq!(json_of(&out)["acyclic"], json!(false));

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "[[").unwrap();
    assert_eq!(code(&indmorse(&["verify", s(&p5), s(&garbage)])), 2);
}

#[test]
fn compare_agrees() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "g.json", &["grid", "--m", "2", "--n", "2"]);
    let out = indmorse(&["compare", s(&g)]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["agree"], json!(true));
    assert_eq!(v["constructed"], v["grid_recurrences"]);

    let p4 = gen(&dir, "p4.json", &["path", "--n", "4"]);
    let v = json_of(&indmorse(&["compare", s(&p4)]));
    assert_eq!(v["homotopy"], json!("collapsible"));
    assert_eq!(v["betti"], json!([1, 0]));

    let k3 = gen(&dir, "k3.json", &["complete", "--n", "3"]);
    let v = json_of(&indmorse(&["compare", s(&k3)]));
    assert_eq!(
        (v["constructed"].clone(), v["recursive"].clone()),
        (json!([3]), json!([3]))
    );
}

#[test]
fn homology_command() {
    let dir = TempDir::new().unwrap();
    let c5 = gen(&dir, "c5.json", &["cycle", "--n", "5"]);
    let v = json_of(&indmorse(&["homology", s(&c5), "--gf2"]));
    assert_eq!(v["betti"], json!([1, 1]));
    assert_eq!(v["betti_gf2"], v["betti"]);
    assert_eq!(v["torsion_free"], json!([true, true]));
}
