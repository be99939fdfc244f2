use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_honeylab"))
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn regular(k: usize, name: &str) -> PathBuf {
    let v: Vec<[f64; 2]> = (0..k)
        .map(|i| {
            let t = 2.0 * PI * i as f64 / k as f64;
            let r = 1.0 / (PI / k as f64).cos();
            [r * t.cos(), r * t.sin()]
        })
        .collect();
    let p = tmp(name);
    std::fs::write(&p, serde_json::json!({ "vertices": v }).to_string()).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn s(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn twelve_gon_is_certified() {
    let input = regular(12, "g12.json");
    let json = tmp("cert12.json");
    let out = run(&["honeycomb", "--in", s(&input), "--json", s(&json)]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(doc["tool"], "honeylab");
    assert_eq!(doc["result"]["conclusion"], "CERTIFIED_2ALPHA_HONEYCOMB");
    assert_eq!(doc["result"]["hexagon"]["vertices"].as_array().unwrap().len(), 6);
}

#[test]
fn octagon_fails_with_witness() {
    let input = regular(8, "g8.json");
    let table = tmp("t8.csv");
    let out = run(&["dowker-table", "--in", s(&input), "--nmax", "8", "--csv", s(&table)]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["honeycomb", "--in", s(&input)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("weak check fails"));

    let json = tmp("check8.json");
    let out = run(&["dowker-check", "--table", s(&table), "--json", s(&json)]);
    assert_eq!(out.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let m57 = doc["result"]["margins"]
        .as_array()
        .unwrap()
        .iter()
        .find(|m| m["witness"] == serde_json::json!([5, 6, 7]))
        .unwrap();
    let v = m57["value"].as_f64().unwrap();
    assert!((v + 5.2656e-4).abs() < 1e-7, "{v}");
}

#[test]
fn hexagon_table_matches_closed_form() {
    let input = regular(6, "g6.json");
    let out = run(&["dowker-table", "--in", s(&input), "--nmax", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# honeylab "));
    let rows: Vec<(usize, f64)> = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| {
            let (n, a) = l.split_once(',').unwrap();
            (n.parse().unwrap(), a.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 7);
    for (n, a) in rows {
        let want = honeylab::circumscribe::regular_akn(3, n.min(6)).unwrap();
        assert!((a - want).abs() < 1e-10, "n = {n}: {a} vs {want}");
    }
}

#[test]
fn outputs_are_deterministic() {
    let input = regular(10, "g10.json");
    let mut docs = Vec::new();
    for _ in 0..2 {
        let csv = tmp("det.csv");
        let json = tmp("det.json");
        let svg = tmp("det.svg");
        let tiles = tmp("det_tiles.csv");
        assert_eq!(run(&["dowker-table", "--in", s(&input), "--nmax", "12", "--csv", s(&csv)]).status.code(), Some(0));
        assert_eq!(run(&["dowker-check", "--table", s(&csv), "--json", s(&json)]).status.code(), Some(1));
        let out = run(&[
            "tiling", "--proto", "voronoi", "--R", "10", "--seed", "7", "--reproducible", "--csv", s(&tiles), "--svg", s(&svg),
        ]);
        assert_eq!(out.status.code(), Some(0));
        docs.push([csv, json, svg, tiles].map(|p| std::fs::read(p).unwrap()));
    }
    assert_eq!(docs[0], docs[1]);
    let svg = String::from_utf8(docs[0][2].clone()).unwrap();
    assert!(svg.starts_with("<svg") && !svg.contains("<metadata>"));
}

#[test]
fn timestamp_without_reproducible() {
    let svg = tmp("stamp.svg");
    let out = run(&["tiling", "--proto", "square", "--R", "4", "--svg", s(&svg)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<metadata>"));
}

#[test]
fn sweep_lists_failures() {
    let out = run(&["sweep", "--k-max", "12"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("# failing: 4 5 7\n"));
}

#[test]
fn bad_arguments_exit_two() {
    let input = regular(6, "bad6.json");
    for args in [
        vec!["honeycomb", "--in", s(&input), "--alpha", "8.5"],
        vec!["dowker-table", "--in", s(&input), "--nmax", "5"],
        vec!["tiling", "--proto", "hex", "--R", "0"],
        vec!["tiling", "--proto", "square", "--stat", "q3"],
        vec!["dowker-check", "--table", "/nonexistent/t.csv"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    }
    let off = tmp("off.json");
    std::fs::write(&off, r#"{"vertices": [[1,1],[2,1],[2,2],[1,2]]}"#).unwrap();
    assert_eq!(run(&["stability", "--in", s(&off)]).status.code(), Some(2));
}

#[test]
fn thread_cap_is_respected() {
    let out = bin().args(["sweep", "--k-max", "6"]).env("HONEYLAB_THREADS", "1").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = bin().args(["sweep"]).env("HONEYLAB_THREADS", "zero").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
