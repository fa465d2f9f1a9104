use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const GRAPH: &str = r#"{"vertices": ["a", "b", "c"], "edges": [["b", "c"]]}"#;
const MODEL: &str = r#"{
  "graph": {"vertices": ["a", "b", "c"], "edges": [["b", "c"]]},
  "minimal_filling_sets": [["a", "b", "c"]],
  "admissible": true
}"#;

struct Dir {
    tmp: TempDir,
}

impl Dir {
    fn new() -> Self {
        let d = Dir { tmp: TempDir::new().unwrap() };
        d.write("g.json", GRAPH);
        d.write("m.json", MODEL);
        d.write("bca_babc.json", r#"["b c a", "b a b c"]"#);
        d.write("abc_cab_a2bc.json", r#"["a b c", "c a b", "a^2 b c"]"#);
        d.write("a.json", r#"["a"]"#);
        d
    }

    fn path(&self, name: &str) -> PathBuf {
        self.tmp.path().join(name)
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.path(name);
        fs::write(&p, text).unwrap();
        p
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_raagcc"))
            .args(args)
            .current_dir(self.tmp.path())
            .env_remove("RAAG_THREADS")
            .output()
            .unwrap()
    }
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn build_bca_babc(d: &Dir) -> PathBuf {
    let o = d.run(&["core", "build", "--graph", "g.json", "--gens", "bca_babc.json", "-o", "core.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    d.path("core.json")
}

#[test]
fn word_commands() {
    let d = Dir::new();
    assert_eq!(stdout(&d.run(&["normalize", "--graph", "g.json", "c b a a^-1 b"])), "b^2 c\n");
    let o = d.run(&["--format", "json", "normalize", "--graph", "g.json", "c b"]);
    assert_eq!(json(&o)["normal"], "b c");
    assert_eq!(json(&o)["schema"], "raagcc.normalize/1");
    let o = d.run(&["minclass", "--graph", "g.json", "a b c"]);
    assert_eq!(stdout(&o).lines().count(), 2);
    let o = d.run(&["order", "--graph", "g.json", "--format", "json", "a c b a"]);
    assert_eq!(json(&o)["pairs"].as_array().unwrap().len(), 5);
    assert_eq!(code(&d.run(&["normalize", "--graph", "g.json", "q"])), 3);
}

#[test]
fn certify_exit_codes() {
    let d = Dir::new();
    let o = d.run(&["certify", "--graph", "g.json", "--model", "m.json", "--gens", "bca_babc.json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["verdict"]["kind"], "certified");
    let o = d.run(&["certify", "--graph", "g.json", "--model", "m.json", "--gens", "a.json"]);
    assert_eq!(code(&o), 1);
    let o = d.run(&["certify", "--graph", "g.json", "--model", "m.json", "--gens", "abc_cab_a2bc.json"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["verdict"]["support"], serde_json::json!(["a"]));
    let o = d.run(&[
        "certify", "--graph", "g.json", "--model", "m.json", "--gens", "bca_babc.json", "--enum-budget", "10",
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn malformed_inputs_exit_three_with_positions() {
    let d = Dir::new();
    d.write("bad.json", "{\"vertices\": [\"a\"],\n  \"edges\": [[\"a\",]]}");
    let o = d.run(&["normalize", "--graph", "bad.json", "a"]);
    assert_eq!(code(&o), 3);
    let err = String::from_utf8(o.stderr).unwrap();
    let last: Value = serde_json::from_str(err.lines().last().unwrap()).unwrap();
    assert_eq!(last["line"], 2);
    assert!(last["column"].as_u64().unwrap() > 0);

    d.write("gens.json", "[\n  \"b c a\",\n  \"b z\"\n]");
    let o = d.run(&["certify", "--graph", "g.json", "--model", "m.json", "--gens", "gens.json"]);
    assert_eq!(code(&o), 3);
    let err = String::from_utf8(o.stderr).unwrap();
    let last: Value = serde_json::from_str(err.lines().last().unwrap()).unwrap();
    assert_eq!((last["line"].as_u64(), last["column"].as_u64()), (Some(3), Some(3)));

    assert_eq!(code(&d.run(&["core", "check", "--core", "missing.json"])), 3);
    d.write("other.json", r#"{"vertices": ["a", "b"], "edges": []}"#);
    let o = d.run(&["certify", "--graph", "other.json", "--model", "m.json", "--gens", "a.json"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn core_commands() {
    let d = Dir::new();
    let core = build_bca_babc(&d);
    let core = core.to_str().unwrap();
    let o = d.run(&["core", "check", "--core", core]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["clean"], true);
    assert_eq!(json(&o)["core"]["squares"], 4);
    assert_eq!(code(&d.run(&["core", "member", "--core", core, "b^2 c^2 a^2"])), 1);
    assert_eq!(code(&d.run(&["core", "member", "--core", core, "b c a b a b c"])), 0);
    let o = d.run(&["core", "enum", "--core", core, "--max-len", "4", "--format", "json"]);
    assert_eq!(json(&o)["count"], 5);

    // a core whose file claims verification it lacks is rejected
    let mut file: Value = serde_json::from_str(&fs::read_to_string(core).unwrap()).unwrap();
    file["squares"].as_array_mut().unwrap().pop();
    d.write("broken.json", &file.to_string());
    assert_eq!(code(&d.run(&["core", "check", "--core", "broken.json"])), 3);
    file["status"] = "budget-exceeded".into();
    d.write("partial.json", &file.to_string());
    let o = d.run(&["core", "check", "--core", "partial.json"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["violations"][0]["kind"], "unfilled-corner");

    let o = d.run(&["core", "build", "--graph", "g.json", "--gens", "abc_cab_a2bc.json", "--budget", "200"]);
    assert_eq!(code(&o), 2);
    assert_eq!(json(&o)["status"], "budget-exceeded");
}

#[test]
fn builds_are_deterministic() {
    let d = Dir::new();
    let a = d.run(&["core", "build", "--graph", "g.json", "--gens", "bca_babc.json"]);
    let b = d.run(&["core", "build", "--graph", "g.json", "--gens", "bca_babc.json"]);
    assert_eq!(a.stdout, b.stdout);
    let s1 = d.run(&["core", "build", "--graph", "g.json", "--gens", "bca_babc.json", "--seed", "4"]);
    let s2 = d.run(&["core", "build", "--graph", "g.json", "--gens", "bca_babc.json", "--seed", "4"]);
    assert_eq!(s1.stdout, s2.stdout);
    let c1 = d.run(&["certify", "--graph", "g.json", "--model", "m.json", "--gens", "abc_cab_a2bc.json", "--threads", "1"]);
    let c2 = d.run(&["certify", "--graph", "g.json", "--model", "m.json", "--gens", "abc_cab_a2bc.json", "--threads", "3"]);
    assert_eq!(c1.stdout, c2.stdout);
}

/// Reads the DOT rendering back: vertices, labeled arrows and square
/// comments.
fn parse_dot(text: &str) -> (usize, usize, Vec<(usize, usize, String)>, Vec<[usize; 4]>) {
    let mut vertices = 0;
    let mut base = usize::MAX;
    let mut edges = BTreeMap::new();
    let mut squares = Vec::new();
    for line in text.lines().map(str::trim) {
        if let Some(rest) = line.strip_prefix("// square ") {
            let ids: Vec<usize> = rest
                .split_once("edges ")
                .unwrap()
                .1
                .split_whitespace()
                .take(4)
                .map(|x| x.parse().unwrap())
                .collect();
            squares.push([ids[0], ids[1], ids[2], ids[3]]);
        } else if line.contains("->") {
            let (arrow, attrs) = line.split_once('[').unwrap();
            let (s, t) = arrow.split_once("->").unwrap();
            let label = attrs.split('"').nth(1).unwrap().to_string();
            let id: usize = attrs.split("id=\"e").nth(1).unwrap().split('"').next().unwrap().parse().unwrap();
            edges.insert(id, (s.trim().parse().unwrap(), t.trim().parse().unwrap(), label));
        } else if line.contains("shape=") {
            if line.contains("doublecircle") {
                base = line.split_whitespace().next().unwrap().parse().unwrap();
            }
            vertices += 1;
        }
    }
    (vertices, base, edges.into_values().collect(), squares)
}

#[test]
fn dot_export_round_trips() {
    let d = Dir::new();
    let core = build_bca_babc(&d);
    let dot = stdout(&d.run(&["export", "--core", core.to_str().unwrap()]));
    let (vertices, base, edges, squares) = parse_dot(&dot);
    assert_eq!(squares.len(), 4);
    let file: Value = serde_json::from_str(&fs::read_to_string(&core).unwrap()).unwrap();
    assert_eq!(vertices as u64, file["vertices"].as_u64().unwrap());
    assert_eq!(base as u64, file["basepoint"].as_u64().unwrap());
    let listed: Vec<(usize, usize, String)> = file["edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            (
                e["source"].as_u64().unwrap() as usize,
                e["target"].as_u64().unwrap() as usize,
                e["label"].as_str().unwrap().to_string(),
            )
        })
        .collect();
    assert_eq!(edges, listed);
    let file_squares: Vec<[usize; 4]> = serde_json::from_value(file["squares"].clone()).unwrap();
    assert_eq!(squares, file_squares);

    // rebuilding a core file from the DOT text and re-exporting is stable
    let mut rebuilt = file.clone();
    rebuilt["edges"] = edges
        .iter()
        .map(|(s, t, l)| serde_json::json!({"source": s, "target": t, "label": l}))
        .collect();
    rebuilt["squares"] = serde_json::to_value(&squares).unwrap();
    let again = d.write("again.json", &rebuilt.to_string());
    assert_eq!(stdout(&d.run(&["export", "--core", again.to_str().unwrap()])), dot);

    d.write("x.json", r#"{"vertices": ["x", "y"], "edges": []}"#);
    d.write("xgens.json", r#"["x", "y"]"#);
    d.run(&["core", "build", "--graph", "x.json", "--gens", "xgens.json", "-o", "xcore.json"]);
    let (vertices, _, edges, _) = parse_dot(&stdout(&d.run(&["export", "--core", "xcore.json"])));
    assert_eq!((vertices, edges.len()), (1, 2));
    assert!(edges.iter().all(|(s, t, _)| s == t));
}

#[test]
fn section8_commands() {
    let d = Dir::new();
    let o = d.run(&["section8", "constants", "--n", "3", "--N", "2"]);
    let c = json(&o);
    assert_eq!((c["b"].as_u64(), c["d"].as_u64(), c["L"].as_u64()), (Some(26), Some(3), Some(78)));
    assert_eq!((c["ell_prime"].as_u64(), c["ell"].as_u64()), (Some(651), Some(655)));
    let o = d.run(&["section8", "gen", "--n", "3", "--N", "1"]);
    assert_eq!(json(&o)["generators"][0], "g1 g2 f1 g3 f2 f3");
    let o = d.run(&["section8", "verify-star", "--kmax", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["checked"], 53);
    assert_eq!(code(&d.run(&["section8", "verify-star", "--kmax", "4"])), 3);
    let o = d.run(&["section8", "bound", "--word", "w1 w2^-1 w1"]);
    assert_eq!(stdout(&o), "h,|h|_H,m,bound,span-proper\nw1 w2^-1 w1,3,1,2,true\n");
    let o = d.run(&["section8", "bound", "--max-len", "2"]);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 1 + 17);
    assert_eq!(lines[1], "ε,0,0,0,true");
    assert_eq!(code(&d.run(&["section8", "bound", "--n", "3", "--N", "1", "--word", "w1^3"])), 3);
    assert_eq!(code(&d.run(&["section8", "gen", "--n", "1"])), 3);
    let a = d.run(&["section8", "order-window", "--n", "3", "--N", "1", "--seed", "5"]);
    let b = d.run(&["section8", "order-window", "--n", "3", "--N", "1", "--seed", "5", "--threads", "2"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn thread_variable_overrides_the_flag() {
    let d = Dir::new();
    let o = Command::new(env!("CARGO_BIN_EXE_raagcc"))
        .args(["section8", "constants", "--threads", "2"])
        .current_dir(d.tmp.path())
        .env("RAAG_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    let o = Command::new(env!("CARGO_BIN_EXE_raagcc"))
        .args(["section8", "constants", "--threads", "0"])
        .current_dir(d.tmp.path())
        .env("RAAG_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert!(Path::new(env!("CARGO_BIN_EXE_raagcc")).exists());
}
