use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mori_diagram::raysystem::SystemFile;
use mori_diagram::Rational;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mori-diagram"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fixture(name: &str) -> String {
    fixtures().join(name).display().to_string()
}

fn scratch(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("mori-diagram-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn bundled_fixtures_are_clean() {
    let o = run(&["check", &fixtures().display().to_string()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.matches("clean (").count() >= 10, "{out}");
    assert!(!out.contains("violation"));
}

#[test]
fn three_rays_on_one_divisor() {
    let text = r#"{
        "rays": [
            {"id": "S1", "type": "II", "divisor": "D"},
            {"id": "S2", "type": "II", "divisor": "D"},
            {"id": "S3", "type": "II", "divisor": "D"}
        ],
        "divisors": ["D"],
        "pairing": [["-1"], ["-1"], ["-1"]]
    }"#;
    let o = run(&["check", &scratch("three.json", text)]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("violation too-many-rays-on-divisor"), "{out}");
    assert!(out.contains("[rays S1,S2,S3]"), "{out}");
}

#[test]
fn cross_pairing_failure_reports_the_values() {
    let text = r#"{
        "rays": [{"id": "S1", "type": "II", "divisor": "D1"}, {"id": "S2", "type": "II", "divisor": "D2"}],
        "divisors": ["D1", "D2"],
        "pairing": [["-1", "1"], ["1", "-1"]],
        "meets": [["D1", "D2"]],
        "faces": [[], ["S1"], ["S2"], ["S1", "S2"]]
    }"#;
    let o = run(&["--format", "json", "check", &scratch("cross.json", text)]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let violations = v["violations"].as_array().unwrap();
    assert_eq!(violations.len(), 1);
    assert_eq!(violations[0]["kind"], "cross-pairing-inequality");
    assert!(violations[0]["message"].as_str().unwrap().contains("1 * 1"));
}

#[test]
fn parse_errors_exit_2_with_position() {
    let o = run(&["check", &scratch("bad.json", "{\n  \"rays\": [,]\n}")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
    let o = run(&["check"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["bound", "--c1", "x", "--c2", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_cyclic_triple() {
    let o = run(&["classify", &fixture("eset_a.json")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("E-set {S1,S2,S3} case (a)"), "{out}");
    assert_eq!(out.matches("shape filter passes").count(), 3, "{out}");
    let o = run(&["esets", &fixture("eset_a.json")]);
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn classify_pair_on_one_divisor() {
    let out = stdout(&run(&["classify", &fixture("b2_pair.json")]));
    assert!(out.contains("component B2 {S1,S2}"), "{out}");
    assert!(out.contains("shape filter fails"), "{out}");
    assert!(!out.contains("passes"), "{out}");
}

#[test]
fn classify_empty_system() {
    let o = run(&["classify", &scratch("empty.json", r#"{"rays": [], "divisors": [], "pairing": []}"#)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "empty report\n");
}

#[test]
fn relative_bound() {
    let o = run(&["bound", "--d", "2", "--c1", "1", "--c2", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dim gamma < 34/3 => dim N1 - dim alpha <= 12"), "{}", stdout(&o));
}

#[test]
fn absolute_bound() {
    let out = stdout(&run(&["bound", "--angle", "--C", "0", "--D", "2/3"]));
    assert!(out.contains("max n = 6 => rho <= 7"), "{out}");
    let legacy = run(&["bound", "--lemma14", "--C", "0", "--D", "2/3"]);
    assert_eq!(stdout(&legacy), out);
}

/// Largest `n` with `n^2 - 6n < 0` (even) or `(n - 1)(n - 5) < 0` (odd), `n > 1`.
fn scan_no_constants() -> i64 {
    (2..100).filter(|&n: &i64| if n % 2 == 0 { n * n < 6 * n } else { (n - 1) * (n - 5) < 0 }).max().unwrap()
}

#[test]
fn bound_without_constants_matches_scan() {
    let o = run(&["--format", "json", "bound", "--angle", "--C", "0", "--D", "0"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["max_n"].as_i64(), Some(scan_no_constants()));
}

#[test]
fn negative_constants_are_refused() {
    let o = run(&["bound", "--c1", "-1", "--c2", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("nonnegative"));
}

#[test]
fn generated_instances_check_and_repeat() {
    for args in [
        vec!["gen", "--family", "cm", "--m", "3", "--seed", "7"],
        vec!["gen", "--family", "random-valid", "--rays", "5", "--seed", "11"],
        vec!["gen", "--family", "eset-d", "--k", "3", "--seed", "2"],
        vec!["gen", "--family", "realized", "--seed", "5"],
        vec!["gen", "--family", "diagram", "--name", "cyclic-5-gon-perp"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let path = scratch(&format!("{}.json", args[2]), &stdout(&a));
        let o = run(&["check", &path]);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
    }
    let out = stdout(&run(&[
        "classify",
        &scratch("cm.json", &stdout(&run(&["gen", "--family", "cm", "--m", "3", "--seed", "7"]))),
    ]));
    assert!(out.contains("component C:3"), "{out}");
}

#[test]
fn random_draws_report_rejections() {
    let o = run(&["gen", "--family", "random-valid", "--rays", "6", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).starts_with("rejected draws: "), "{}", stderr(&o));
}

#[test]
fn unsatisfiable_parameters_fail() {
    assert_eq!(run(&["gen", "--family", "random-valid", "--rays", "20"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "--family", "cyclic-dual", "--n", "4", "--m", "3"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "--family", "nonsense"]).status.code(), Some(2));
}

#[test]
fn emitted_systems_round_trip() {
    for family in ["c2", "d2", "b2", "eset-a"] {
        let text = stdout(&run(&["gen", "--family", family, "--seed", "3"]));
        let file = SystemFile::from_json(&text).unwrap();
        let s = file.build::<Rational>().unwrap();
        assert_eq!(SystemFile::from(&s).to_json(), text.trim_end());
        assert!(s.is_valid());
    }
}

#[test]
fn polytope_statistics() {
    let cube3 = stdout(&run(&["polytope-stats", &fixture("cube3.json")]));
    assert!(cube3.contains("average vertices per 2-face 4\nbound 6\nmargin 2"), "{cube3}");
    let cube4 = stdout(&run(&["gen", "--family", "cube", "--n", "4"]));
    let out = stdout(&run(&["polytope-stats", &scratch("cube4.json", &cube4)]));
    assert!(out.contains("average vertices per 2-face 4\nbound 6"), "{out}");
    let simplex5 = stdout(&run(&["gen", "--family", "simplex", "--n", "5"]));
    let out = stdout(&run(&["polytope-stats", &scratch("simplex5.json", &simplex5)]));
    assert!(out.contains("average vertices per 2-face 3\nbound 5"), "{out}");
}

#[test]
fn non_simple_polytope_skips_the_bound() {
    let pyramid = r#"{"dim": 3, "vertices": [0, 1, 2, 3, 4],
        "facets": [[0, 1, 2, 3], [0, 1, 4], [1, 2, 4], [2, 3, 4], [0, 3, 4]]}"#;
    let o = run(&["polytope-stats", &scratch("pyramid.json", pyramid)]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("f-vector [5, 8, 5, 1]"), "{out}");
    assert!(out.contains("bound check skipped"), "{out}");
}

#[test]
fn conforming_diagram_emits_a_bound() {
    let o = run(&["diagram", "--d", "2", &fixture("diagram_triangle.json")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("dim gamma < 26/3"), "{out}");
    assert!(out.ends_with("conforming\n"), "{out}");
}

#[test]
fn quadrangle_counterexample_names_the_face() {
    let o = run(&["diagram", &fixture("diagram_quadrangle.json")]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("counterexample 2-face"), "{out}");
    assert!(out.contains("weight 0 below 1"), "{out}");
}

#[test]
fn adjacent_rule_flags_the_replay() {
    let out = stdout(&run(&["diagram", "--rule", "adjacent", &fixture("diagram_d2_square.json")]));
    assert!(out.contains("max vertex sum 4/3"), "{out}");
    assert!(out.contains("exceeds the replay constants"), "{out}");
    let legacy = stdout(&run(&["diagram", "--rule", "theorem258", &fixture("diagram_d2_square.json")]));
    assert_eq!(legacy, out);
    let out = stdout(&run(&["diagram", "--rule", "adjacent", &fixture("diagram_triangle.json")]));
    assert!(out.contains("max vertex sum 2/3"), "{out}");
    assert!(!out.contains("exceeds"), "{out}");
}

#[test]
fn correspondence_mismatch_is_an_error() {
    let text = std::fs::read_to_string(fixture("diagram_triangle.json")).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["facet_rays"].as_array_mut().unwrap().pop();
    let path = scratch("mismatch.json", &v.to_string());
    assert_eq!(run(&["diagram", &path]).status.code(), Some(2));
    assert_eq!(run(&["check", &path]).status.code(), Some(1));
}

#[test]
fn batches_are_ordered_and_parallel_safe() {
    let dir = fixtures().display().to_string();
    let one = run(&["--jobs", "1", "--format", "json", "check", &dir]);
    let four = run(&["--jobs", "4", "--format", "json", "check", &dir]);
    assert_eq!(one.stdout, four.stdout);
    let v: Value = serde_json::from_str(&stdout(&one)).unwrap();
    let paths: Vec<&str> = v.as_array().unwrap().iter().map(|b| b["path"].as_str().unwrap()).collect();
    let mut sorted = paths.clone();
    sorted.sort();
    assert_eq!(paths, sorted);
}

#[test]
fn batch_exit_code_is_the_worst_status() {
    let bad = scratch("batch_bad.json", "not json");
    let o = run(&["check", &fixture("c2.json"), &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("error:"));
}
