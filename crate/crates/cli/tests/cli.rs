use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bratteli")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn limit_law_lists_breakpoints_and_slopes() {
    let o = run(&["limit-law", "--gen", "example1", "--vertex", "1"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("start,value,slope\n0,0,1\n0.788675134595,0.788675134595,0.732050807569\n1.07735026919,1,0\n"), "{}", s);
}

#[test]
fn compare_decreases() {
    let o = run(&["compare", "--gen", "example1", "--vertex", "1", "--n", "4..8"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("strictly decreasing: true"));
    let rows: Vec<f64> = s
        .lines()
        .skip_while(|l| *l != "n,sup_distance")
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(rows.len(), 5);
    assert!(rows.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn validate_reports_without_failing() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zero.json");
    fs::write(
        &path,
        r#"{"vertex_counts": [1, 2, 2], "levels": [{"into": {"1": [1], "2": [1]}}, {"into": {"1": [1, 2], "2": [1]}}], "stationary_period": 1}"#,
    )
    .unwrap();
    let o = run(&["validate", "--diagram", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("h1,false"));
}

#[test]
fn exit_codes() {
    let o = run(&["validate", "--diagram", "/definitely/not/here.json"]);
    assert_eq!(o.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"vertex_counts": [1, 2], "levels": [{"into": {"1": [1], "2": [7]}}]}"#).unwrap();
    assert_eq!(run(&["validate", "--diagram", bad.to_str().unwrap()]).status.code(), Some(2));

    // a Sturmian diagram has no limit law computable from the walk
    assert_eq!(run(&["limit-law", "--gen", "sturmian"]).status.code(), Some(3));
    assert_eq!(run(&["gen", "nonsense"]).status.code(), Some(2));
}

#[test]
fn gen_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("odo.json");
    let o = run(&["gen", "beta-odometer", "--param", "bases=10", "--param", "beta=0.25", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(dir.path().join("odo.meta.json").exists());
    let o = run(&["perron", "--diagram", path.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("lambda   10\n"), "{}", stdout(&o));
    let o = run(&["limit-law", "--diagram", path.to_str().unwrap()]);
    let s = stdout(&o);
    assert!(s.contains("breakpoint 0.2 ") && s.contains("breakpoint 1.8 "), "{}", s);
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for name in ["a.csv", "b.csv"] {
        let path = dir.path().join(name);
        let o = run(&["finite-law", "--gen", "example1", "--n", "5", "--vertex", "2", "--out", path.to_str().unwrap()]);
        assert!(o.status.success());
        let meta = fs::read_to_string(path.with_file_name(name.replace(".csv", ".meta.json"))).unwrap();
        outputs.push((fs::read(&path).unwrap(), meta.replace(name, "")));
    }
    assert_eq!(outputs[0], outputs[1]);
    let meta: serde_json::Value = serde_json::from_str(&outputs[0].1).unwrap();
    assert_eq!(meta["tool"], "bratteli");
    assert_eq!(meta["tolerances"]["csv_significant_digits"], 12);
}

#[test]
fn finite_law_of_sturmian_uses_brute_force() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.csv");
    let o = run(&["finite-law", "--gen", "sturmian", "--n", "6", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("first return times [13, 21]"));
    let meta: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("s.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["results"]["source"], "oracle");
    assert_eq!(meta["measure"], "closed form");
}

#[test]
fn contract_squares_the_matrix() {
    let o = run(&["contract", "--gen", "example1", "--every", "2"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let d = bratteli::OrderedBratteliDiagram::from_json_str(&s).unwrap();
    assert_eq!(d.stationary_matrix().unwrap().to_rows(), vec![vec![3, 4], vec![8, 11]]);
}

#[test]
fn fdd_single_threshold_is_the_entrance_law() {
    let o = run(&["fdd", "--gen", "example1", "--n", "6", "--t", "0.5"]);
    let f = run(&["finite-law", "--gen", "example1", "--n", "6", "--t", "0.5"]);
    let fdd_val = stdout(&o).lines().last().unwrap().split(',').nth(1).unwrap().to_string();
    assert!(stdout(&f).contains(&format!("\n0.5,{}\n", fdd_val)), "{}", stdout(&f));
}
