use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flipswap"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn generates_necklaces() {
    let o = run(&["generate", "--lang", "necklace", "-n", "4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0000\n0011\n1111\n0111\n0101\n0001\n");
}

#[test]
fn count_matches_generate() {
    let o = run(&["count", "--lang", "necklace & weight_le(3)", "-n", "8"]);
    assert!(o.status.success());
    let g = run(&["generate", "--lang", "necklace & weight_le(3)", "-n", "8"]);
    assert_eq!(stdout(&o).trim(), stdout(&g).lines().count().to_string());
}

#[test]
fn empty_weight_bound_prints_origin() {
    let o = run(&["generate", "--lang", "weight_le(0)", "-n", "5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "00000\n");
}

#[test]
fn parse_errors_exit_two_with_column() {
    let o = run(&["generate", "--lang", "necklace &", "-n", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("column 11"), "{}", stderr(&o));
    let o = run(&["count", "--lang", "necklace", "-n", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_rejects_dyck_words() {
    let o = run(&["generate", "--lang", "dyck_words(2)", "-n", "6", "--check"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("not flip-swap"));
    assert!(stdout(&o).is_empty());
}

#[test]
fn verify_reports() {
    let o = run(&["verify", "--lang", "all", "-n", "1"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS oracle"));

    let o = run(&[
        "verify",
        "--lang",
        "dyck_words(2)",
        "-n",
        "6",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["checks"][0]["name"], "closure");
    assert_eq!(v[0]["checks"][0]["passed"], false);
}

#[test]
fn verify_registry_range() {
    let o = run(&["verify", "--registry", "--n-min", "3", "--n-max", "4"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failed"));
}

#[test]
fn annotate_labels_cases() {
    let o = run(&["generate", "--lang", "necklace", "-n", "6", "--annotate"]);
    let out = stdout(&o);
    let first = out.lines().next().unwrap();
    assert_eq!(first, "000000 f3 flip2(5,6) t=6");
    assert_eq!(out.lines().last().unwrap(), "000001 f1 flip(6) t=-");
}

#[test]
fn json_lines_output() {
    let o = run(&[
        "generate",
        "--lang",
        "necklace",
        "-n",
        "3",
        "--format",
        "json-lines",
    ]);
    let values: Vec<String> = stdout(&o)
        .lines()
        .map(|l| {
            serde_json::from_str::<serde_json::Value>(l).unwrap()["value"]
                .as_str()
                .unwrap()
                .to_string()
        })
        .collect();
    assert_eq!(values, ["000", "011", "111", "001"]);
}

#[test]
fn knapsack_reports_item_order() {
    let o = run(&[
        "generate",
        "--lang",
        "knapsack(1,3,2;3)",
        "-n",
        "3",
        "--count-only",
    ]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("1:item2(w=3)"), "{}", stderr(&o));
}

#[test]
fn poset_edges_and_dot() {
    let o = run(&["poset", "-n", "2"]);
    assert_eq!(stdout(&o), "10 01\n01 00\n11 01\n");
    let o = run(&["poset", "-n", "3", "--dot", "--highlight", "necklace"]);
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches(" -> ").count(), 7);
    assert!(dot.contains("\"011\" [style=filled"));
}

#[test]
fn stats_and_output_files() {
    let dir = tempfile::tempdir().unwrap();
    let stats = dir.path().join("stats.json");
    let out = dir.path().join("list.txt");
    let o = run(&[
        "generate",
        "--lang",
        "all",
        "-n",
        "5",
        "--stats",
        stats.to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(std::fs::read_to_string(&out).unwrap().lines().count(), 32);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&stats).unwrap()).unwrap();
    assert_eq!(v["strings"], 32);
    assert_eq!(v["max_distance"], 1);
    assert_eq!(v["cyclic"], true);
}

#[test]
fn bench_json_has_ratio() {
    let o = run(&[
        "bench", "--lang", "necklace", "-n", "10", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["loop_probes_per_string"].as_f64().unwrap() <= 1.0);
}
