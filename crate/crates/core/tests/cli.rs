use std::io::Write;
use std::process::{Command, Output, Stdio};

use ferrers::BinaryMatrix;
use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ferrers"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn rows_of(v: &Value) -> BinaryMatrix {
    let rows: Vec<&str> = v.as_array().unwrap().iter().map(|r| r.as_str().unwrap()).collect();
    BinaryMatrix::parse(&rows.join("\n")).unwrap()
}

#[test]
fn check_free_matrix_from_file() {
    let dir = std::env::temp_dir().join(format!("ferrers-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c6.txt");
    std::fs::write(&path, "011\n101\n110\n").unwrap();
    let out = run(&["check", path.to_str().unwrap()], "");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["free"], true);
}

#[test]
fn check_reports_witness() {
    let out = run(&["check"], "010\n101\n010\n");
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["free"], false);
    assert_eq!(v["witness"]["pattern"], "gamma");
    assert_eq!(v["witness"]["occurrence"]["rows"], serde_json::json!([1, 2, 3]));
}

#[test]
fn dim_of_anti_identity() {
    let out = run(&["dim"], "0111\n1011\n1101\n1110\n");
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["dimension"], 4);
    assert_eq!(v["cover"].as_array().unwrap().len(), 4);
}

#[test]
fn decompose_rejects_gamma() {
    let out = run(&["decompose"], "010\n101\n010\n");
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["pattern"], "gamma");
    assert_eq!(v["witness"]["rows"], serde_json::json!([1, 2, 3]));
    assert_eq!(v["witness"]["cols"], serde_json::json!([1, 2, 3]));
}

#[test]
fn decompose_output_recomputes_to_input() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let generated = ferrers::random::random_chain3_instance(&mut rng, 12, 9).to_text();
    for text in ["011\n101\n110\n", generated.as_str()] {
        let out = run(&["decompose"], text);
        assert_eq!(out.status.code(), Some(0), "{text}");
        let v = json(&out);
        assert_eq!(v["certified"], true);
        let product = rows_of(&v["A1"])
            .hadamard(&rows_of(&v["A2"]))
            .unwrap()
            .hadamard(&rows_of(&v["A3"]))
            .unwrap();
        assert!(product.same_entries(&BinaryMatrix::parse(text).unwrap()));
        for k in ["A1", "A2", "A3"] {
            assert!(ferrers::is_chain(&rows_of(&v[k])), "{k}");
        }
    }
    assert_eq!(run(&["decompose"], "0111\n1011\n1101\n1110\n").status.code(), Some(1));
}

#[test]
fn search_and_none() {
    let out = run(&["--patterns", "D", "search"], "11\n01\n");
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["row_order"], serde_json::json!([1, 2]));
    assert_eq!(v["col_order"], serde_json::json!([2, 1]));

    let out = run(&["--format", "text", "search"], "0111\n1011\n1101\n1110\n");
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "none");
}

#[test]
fn represent_emits_verified_model() {
    let text = "011\n101\n110\n";
    let a = BinaryMatrix::parse(text).unwrap();
    let out = run(&["represent"], text);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let coords = |side: &str| -> Vec<Vec<i64>> {
        v[side]
            .as_object()
            .unwrap()
            .values()
            .map(|c| c.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect())
            .collect()
    };
    let (points, corners) = (coords("points"), coords("corners"));
    for (u, p) in points.iter().enumerate() {
        for (w, c) in corners.iter().enumerate() {
            assert_eq!((0..3).all(|k| p[k] < c[k]), a.get(u, w));
        }
    }
}

#[test]
fn cross_validate_small_shape() {
    let out = run(&["cross-validate", "--rows", "2", "--cols", "3"], "");
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["discrepancies"], serde_json::json!([]));
}

#[test]
fn catalog_lists_classes() {
    let out = run(&["--format", "text", "catalog"], "");
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("gamma") && text.contains("delta"));
}

#[test]
fn generated_matrix_is_reproducible() {
    let args = ["--seed", "11", "generate", "--rows", "6", "--cols", "5"];
    let a = run(&args, "");
    let b = run(&args, "");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn error_exit_codes() {
    assert_eq!(run(&["check"], "01x\n").status.code(), Some(2));
    assert_eq!(run(&["check"], "01\n1\n").status.code(), Some(2));
    assert_eq!(run(&["--budget-perm", "0", "search"], "1\n").status.code(), Some(2));
    assert_eq!(run(&["--budget-perm", "3", "search"], "11111111\n").status.code(), Some(3));
    assert_eq!(run(&["check", "/nonexistent/matrix.txt"], "").status.code(), Some(4));
}
