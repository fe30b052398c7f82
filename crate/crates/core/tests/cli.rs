use std::path::Path;
use std::process::{Command, Output};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use clubgraph::consim::SimGraph;
use clubgraph::textio::{emit_graph, parse_graph};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clubgraph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// 20 graph files with shuffled lines and random orientations; emitting the
/// parsed graph must give the sorted, oriented text.
#[test]
fn graph_file_corpus_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..20 {
        let n = rng.gen_range(1..30);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(0.2) {
                    edges.push((u, v));
                }
            }
        }
        let mut lines: Vec<String> = edges
            .iter()
            .map(|&(u, v)| {
                if rng.gen_bool(0.5) {
                    format!("e {u} {v}")
                } else {
                    format!("e {v} {u}")
                }
            })
            .collect();
        lines.shuffle(&mut rng);
        let raw = format!(
            "p {n} {}\n{}",
            edges.len(),
            lines.iter().map(|l| format!("{l}\n")).collect::<String>()
        );
        let mut normalized = format!("p {n} {}\n", edges.len());
        for (u, v) in &edges {
            normalized.push_str(&format!("e {u} {v}\n"));
        }
        assert_eq!(emit_graph(&parse_graph(&raw).unwrap()), normalized);
    }
}

#[test]
fn type_commands() {
    let o = run(&["type", "canonical", "5", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0001010111\n");
    assert_eq!(stdout(&run(&["type", "tp", "0,1,3", "2,4,5"])), "001011\n");
    assert_eq!(stdout(&run(&["type", "concat", "01", "0011"])), "010011\n");
    assert_eq!(stdout(&run(&["type", "ones-before-zeros", "001011"])), "0,0,1\n");
    assert_eq!(stdout(&run(&["type", "validate", "0101"])), "2\n");
    assert_eq!(run(&["type", "validate", "0111"]).status.code(), Some(2));
    assert_eq!(run(&["type", "canonical", "3", "3"]).status.code(), Some(2));
}

#[test]
fn specker_gen_writes_graph_and_map() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    let map = dir.path().join("g.map");
    let o = run(&[
        "specker",
        "gen",
        "--alpha",
        "6",
        "--type",
        "001011",
        "--out",
        path(&g),
        "--map",
        path(&map),
    ]);
    assert!(o.status.success());
    let graph = parse_graph(&std::fs::read_to_string(&g).unwrap()).unwrap();
    assert_eq!(graph.vertex_count(), 20);
    let map = std::fs::read_to_string(&map).unwrap();
    let lines: Vec<&str> = map.lines().collect();
    assert_eq!(lines.len(), 20);
    assert_eq!(lines[0], "v 0 0,1,2");
    assert_eq!(lines[19], "v 19 3,4,5");
    assert_eq!(
        stdout(&run(&[
            "specker",
            "odd-girth",
            "--alpha",
            "10",
            "--type",
            "001011",
            "--max-len",
            "3"
        ])),
        "none\n"
    );
}

#[test]
fn chroma_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("k5.txt");
    let mut text = String::from("p 5 10\n");
    for u in 0..5 {
        for v in u + 1..5 {
            text.push_str(&format!("e {u} {v}\n"));
        }
    }
    std::fs::write(&g, text).unwrap();
    let col = dir.path().join("k5.col");
    let o = run(&["chroma", "solve", path(&g), "--coloring", path(&col)]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["chi"], 5);
    assert_eq!(std::fs::read_to_string(&col).unwrap().lines().count(), 5);

    // complement of C_7: clique number 3, chromatic number 4, so refuting 3 colors takes search
    let c = dir.path().join("c7.txt");
    let mut text = String::from("p 7 14\n");
    let mut edges = Vec::new();
    for u in 0..7 {
        for v in u + 1..7 {
            if v - u != 1 && v - u != 6 {
                edges.push((u, v));
            }
        }
    }
    for (u, v) in edges {
        text.push_str(&format!("e {u} {v}\n"));
    }
    std::fs::write(&c, text).unwrap();
    assert_eq!(run(&["chroma", "solve", path(&c)]).status.code(), Some(0));
    assert_eq!(
        run(&["chroma", "solve", path(&c), "--max-nodes", "1"]).status.code(),
        Some(3)
    );

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "p 3 2\ne 0 1\ne 1 0\n").unwrap();
    let o = run(&["chroma", "solve", path(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("duplicate edge"));
    assert_eq!(
        run(&["chroma", "solve", "/nonexistent/graph.txt"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["chroma", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
}

#[test]
fn fg_profile_of_c5() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("c5.txt");
    std::fs::write(&g, "p 5 5\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 0 4\n").unwrap();
    let o = run(&["fg", path(&g), "--k-max", "4"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["chi"], 3);
    assert_eq!(v["entries"][0]["m"], 2);
    assert_eq!(v["entries"][1]["m"], 5);
    assert_eq!(v["entries"].as_array().unwrap().len(), 2);
}

#[test]
fn ladder_gen_and_census() {
    let dir = tempfile::tempdir().unwrap();
    let l = dir.path().join("l.json");
    assert!(run(&[
        "ladder",
        "gen",
        "--seed",
        "3",
        "--anchors",
        "30:100-3000",
        "--length",
        "4",
        "--out",
        path(&l)
    ])
    .status
    .success());
    let o = run(&["ladder", "census", "--ladders", path(&l), "--n", "2", "--classes", "2"]);
    assert!(o.status.success());
    let csv = stdout(&o);
    assert!(csv.starts_with("type,class,realized,gamma,delta\n"));
    // 6 types of length 2 per class
    assert_eq!(csv.lines().count(), 1 + 2 * 6);
    let o = run(&["ladder", "census", "--ladders", path(&l), "--n", "9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn simulate_audit_rerun() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let sim = dir.path().join("sim.json");
    let o = run(&[
        "simulate",
        "--mode",
        "B",
        "--seed",
        "42",
        "--anchors",
        "200:1000-50000",
        "--f",
        "3,3,3,3",
        "--audit",
        "all",
        "--out",
        path(&report),
        "--emit-sim",
        path(&sim),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["pass"], true);
    assert_eq!(r["seed"], 42);
    assert_eq!(r["tool"]["name"], "clubgraph");
    assert_eq!(r["config"]["anchors"], "200:1000-50000");
    assert_eq!(r["flags"]["sampled"], false);

    let o = run(&["rerun", path(&report)]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "identical\n".to_string()));

    assert_eq!(run(&["audit", "--sim", path(&sim)]).status.code(), Some(0));
    let o = run(&["diagonalize", "--sim", path(&sim), "--adversary-seed", "5"]);
    assert_eq!(o.status.code(), Some(0));

    // bump one label: the requirements audit must fail with exit 1
    let mut g: SimGraph = serde_json::from_str(&std::fs::read_to_string(&sim).unwrap()).unwrap();
    g.edges[0].h += 1;
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, serde_json::to_string(&g).unwrap()).unwrap();
    let o = run(&["audit", "--sim", path(&broken), "--audit", "requirements"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], false);
    assert!(!v["audits"]["requirements"]["violations"].as_array().unwrap().is_empty());

    // a tampered report no longer reproduces
    let text = std::fs::read_to_string(&report).unwrap();
    std::fs::write(&report, text.replacen("\"pass\": true", "\"pass\": false", 1)).unwrap();
    let o = run(&["rerun", path(&report)]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(1), "differs\n".to_string()));
}

#[test]
fn simulate_sampling_and_usage_errors() {
    let base = [
        "simulate",
        "--mode",
        "A",
        "--seed",
        "1",
        "--anchors",
        "40:100-4000",
        "--f",
        "3,3",
    ];
    let mut args = base.to_vec();
    args.extend(["--audit", "chromatic", "--max-subgraphs", "5"]);
    let o = run(&args);
    assert_eq!(o.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["flags"]["sampled"], true);

    let mut args = base.to_vec();
    args.extend(["--audit", "hm"]);
    assert_eq!(run(&args).status.code(), Some(2));
    let mut args = base.to_vec();
    args.extend(["--audit", "nope"]);
    assert_eq!(run(&args).status.code(), Some(2));
    assert_eq!(run(&["simulate", "--mode", "C"]).status.code(), Some(2));
    assert_eq!(
        run(&["simulate", "--mode", "A", "--anchors", "5:1-3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "simulate",
            "--mode",
            "B",
            "--anchors",
            "10:100-1000",
            "--ladder-length",
            "2"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn thread_count_does_not_change_reports() {
    let args = [
        "simulate",
        "--mode",
        "A",
        "--seed",
        "9",
        "--anchors",
        "60:100-6000",
        "--f",
        "3,3,5",
    ];
    let one = run(&[&args[..], &["--threads", "1"]].concat());
    let four = run(&[&args[..], &["--threads", "4"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}
