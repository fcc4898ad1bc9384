use std::io::Write;
use std::process::{Command, Output};

fn bruhat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bruhat")).args(args).output().expect("run bruhat")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn group_table_rows() {
    let out = bruhat(&["--type", "B2", "group"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("word\tlength\tleft_descents\tright_descents"));
    assert_eq!(lines.count(), 8);
    let out = bruhat(&["--type", "A1", "group"]);
    assert_eq!(stdout(&out).lines().count(), 3);
}

#[test]
fn matrix_file_input() {
    let mut good = tempfile::NamedTempFile::new().unwrap();
    writeln!(good, "2\n1 4\n4 1").unwrap();
    let out = bruhat(&["--matrix", good.path().to_str().unwrap(), "group"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 9);

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "2\n1 3\n4 1").unwrap();
    let out = bruhat(&["--matrix", bad.path().to_str().unwrap(), "group"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());

    // affine A2: valid matrix, infinite group
    let mut affine = tempfile::NamedTempFile::new().unwrap();
    writeln!(affine, "3\n1 3 3\n3 1 3\n3 3 1").unwrap();
    let out = bruhat(&["--matrix", affine.path().to_str().unwrap(), "group"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("size cap"));
}

#[test]
fn missing_system_is_an_error() {
    assert_eq!(bruhat(&["group"]).status.code(), Some(2));
    assert_ne!(bruhat(&["--type", "A2", "--matrix", "x", "group"]).status.code(), Some(0));
}

#[test]
fn dot_export_of_orders() {
    let out = bruhat(&["--type", "A2", "orders", "--w", "1,2,1", "--which", "bruhat"]);
    assert!(out.status.success());
    let dot = stdout(&out);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("->").count(), 8);

    let out = bruhat(&["--type", "A2", "orders", "--w", "1,2,1", "--which", "sorting:2,1,2"]);
    let dot = stdout(&out);
    assert_eq!(dot.matches("[label=").count(), 6);

    let out = bruhat(&["--type", "A2", "orders", "--w", "1,2,1", "--which", "weak"]);
    assert_eq!(stdout(&out).matches("->").count(), 6);
}

#[test]
fn orders_json_reports_sandwich_checks() {
    let out = bruhat(&["--type", "B2", "--format", "json", "orders", "--w", "1,2,1,2", "--which", "all"]);
    assert!(out.status.success());
    let v = json(&out);
    let text = v.to_string();
    assert!(text.contains("weak_is_intersection"));
    assert!(text.contains("bruhat_is_union"));
}

#[test]
fn subword_sphere_ball_and_void() {
    let v = json(&bruhat(&["--type", "A2", "subword", "--Q", "1,2,1,2", "--w", "1,2,1"]));
    assert_eq!(v["classification"], "Sphere");
    assert_eq!(v["face_count"], 3);
    assert_eq!(v["betti_matches"], true);

    let v = json(&bruhat(&["--type", "A2", "--field", "0", "subword", "--Q", "1,2,1,2", "--w", "1,2"]));
    assert_eq!(v["classification"], "Ball");
    assert_eq!(v["betti"]["field"], "Q");
    assert_eq!(v["betti_matches"], true);

    // Q has no subword for w: the complex is void, reported as an error
    let out = bruhat(&["--type", "A2", "subword", "--Q", "1,1", "--w", "1,2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("void"));
}

#[test]
fn bad_word_is_rejected() {
    let out = bruhat(&["--type", "A2", "subword", "--Q", "1,4", "--w", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fibers_report_duality() {
    let v = json(&bruhat(&["--type", "B2", "--format", "json", "fibers", "--Q", "1,2,1,2"]));
    assert_eq!(v["order_preserving"], true);
    let fibers = v["fibers"].as_array().unwrap();
    assert_eq!(fibers.len(), 8);
    for f in fibers {
        assert_eq!(f["fiber_up_matches_faces"], true);
        // null only at u = w, where the open fiber is not defined
        let open = &f["fiber_open_matches_boundary"];
        assert!(open == true || (open.is_null() && f["u"] == serde_json::json!([1, 2, 1, 2])));
    }
    let one = fibers.iter().find(|f| f["u"] == serde_json::json!([1])).unwrap();
    assert_eq!(one["fiber_up"].as_array().unwrap().len(), 12);
    assert_eq!(one["interval_sphere"]["passed"], true);
}

#[test]
fn totalpos_trials() {
    let out = bruhat(&["--seed", "7", "totalpos", "--trials", "20", "--products", "5", "--n", "4"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = bruhat(&["totalpos", "--params", "1,1,1"]);
    assert!(out.status.success());
}

#[test]
fn verify_is_deterministic_and_catches_faults() {
    let a = bruhat(&["verify", "--groups", "A2,B2", "--seed", "3"]);
    let b = bruhat(&["verify", "--groups", "A2,B2", "--seed", "3"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["theorem_results"].as_array().unwrap().len(), 13);
    assert!(v["timing"].is_null());

    let bad = bruhat(&["verify", "--groups", "B2", "--fault", "corrupt-sorting-subword"]);
    assert_eq!(bad.status.code(), Some(1));
    let v = json(&bad);
    let failing: Vec<&str> = v["theorem_results"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|t| t["passed"] == false)
        .map(|t| t["name"].as_str().unwrap())
        .collect();
    assert!(failing.contains(&"oracle_agreement"));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("FAIL"));
}
