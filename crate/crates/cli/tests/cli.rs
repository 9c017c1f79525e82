use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

use serde_json::Value;

use jtorsion::verify::Suite;
use jtorsion_cli::{reproducer, run_request, run_text, Options, EXIT_DOMAIN, EXIT_PARSE};

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn run_bin(args: &[&str], stdin: &str) -> (i32, Value, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_jtorsion"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    (
        out.status.code().unwrap(),
        serde_json::from_str(&text).unwrap(),
        text,
    )
}

fn request(name: &str) -> String {
    std::fs::read_to_string(corpus().join("requests").join(name)).unwrap()
}

#[test]
fn exact_corpus_values() {
    let cases = [
        ("quad_zero.json", "1"),
        ("pair_diagonal.json", "1"),
        ("torsion_diagonal.json", "6"),
        ("torsion_short.json", "-1"),
        ("toeplitz_two_inside.json", "-1"),
        ("toeplitz_outside.json", "-2/3"),
        ("toeplitz_one_minus_a.json", "1"),
    ];
    for (file, expect) in cases {
        let v = run_text(&request(file), Options::default()).unwrap();
        assert_eq!(v["value"], expect, "{file}");
    }
    let zero = run_text(&request("quad_zero.json"), Options::default()).unwrap();
    assert_eq!(zero["report"]["lambda"], 4);
    assert_eq!(
        zero["report"]["homology_dims"],
        serde_json::json!([1, 2, 1])
    );
}

#[test]
fn numeric_corpus_values() {
    for (file, expect, tol) in [
        ("numeric_shift.json", (-1.0f64).exp(), 1e-6),
        ("numeric_cosine_sine.json", 2.0f64.exp(), 1e-4),
    ] {
        let v = run_text(&request(file), Options::default()).unwrap();
        let re = v["value"][0].as_f64().unwrap();
        let im = v["value"][1].as_f64().unwrap();
        assert!((re - expect).abs() < tol && im.abs() < tol, "{file}: {v}");
        let errors: Vec<f64> = v["report"]["table"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["error"].as_f64().unwrap())
            .collect();
        assert!(
            errors.windows(2).all(|w| w[1] <= w[0] + 1e-10),
            "{errors:?}"
        );
    }
}

#[test]
fn binary_reads_stdin_and_files() {
    let (code, v, _) = run_bin(&[], &request("toeplitz_two_inside.json"));
    assert_eq!(code, 0);
    assert_eq!(v["value"], "-1");
    let path = corpus().join("requests/torsion_diagonal.json");
    let (code, v, _) = run_bin(&[path.to_str().unwrap()], "");
    assert_eq!(code, 0);
    assert_eq!(v["value"], "6");
}

#[test]
fn parse_errors_exit_3() {
    for bad in [
        "{",
        r#"{"cmd":"nope","payload":{}}"#,
        r#"{"cmd":"joint_torsion_quad","payload":{"a":[["1/0"]],"b":[["0"]],"c":[["0"]],"d":[["0"]]}}"#,
        r#"{"cmd":"joint_torsion_pair","payload":{"a":[["1","2"],["3"]],"b":[["0"]]}}"#,
        r#"{"cmd":"toeplitz_exact","payload":{"f":{"leading":"1"},"g":{"leading":"1"},"h":1}}"#,
    ] {
        let (code, v, _) = run_bin(&[], bad);
        assert_eq!(code, i32::from(EXIT_PARSE), "{bad}");
        assert_eq!(v["error"]["name"], "parse_error");
    }
    let (_, v, _) = run_bin(
        &[],
        r#"{"cmd":"joint_torsion_pair","payload":{"a":[["x"]],"b":[["0"]]}}"#,
    );
    assert!(
        v["error"]["message"].as_str().unwrap().contains("a[0][0]"),
        "{v}"
    );
}

#[test]
fn domain_errors_exit_2() {
    let cases = [
        (
            r#"{"cmd":"joint_torsion_quad","payload":{"a":[["1"]],"b":[["2"]],"c":[["1"]],"d":[["3"]]}}"#,
            "quadruple_relation",
        ),
        (
            r#"{"cmd":"joint_torsion_pair","payload":{"a":[["0","1"],["0","0"]],"b":[["1","0"],["0","2"]]}}"#,
            "non_commuting",
        ),
        (
            r#"{"cmd":"toeplitz_exact","payload":{"f":{"leading":"1","roots":["i"]},"g":{"leading":"1"}}}"#,
            "not_fredholm",
        ),
        (
            r#"{"cmd":"toeplitz_exact","payload":{"f":{"leading":"1","roots":["1/2"]},"g":{"leading":"1","roots":["1/2"]}}}"#,
            "not_acyclic",
        ),
        (
            r#"{"cmd":"torsion","payload":{"spaces":[1,1],"differentials":[[["0"]]]}}"#,
            "sequence_not_exact",
        ),
        (
            r#"{"cmd":"verify","payload":{"suite":"bogus"}}"#,
            "invalid_argument",
        ),
    ];
    for (req, name) in cases {
        let (code, v, _) = run_bin(&[], req);
        assert_eq!(code, i32::from(EXIT_DOMAIN), "{req}");
        assert_eq!(v["error"]["name"], name, "{req}");
    }
    let (code, _, _) = run_bin(&["--suite", "bogus"], "");
    assert_eq!(code, i32::from(EXIT_DOMAIN));
}

#[test]
fn output_is_deterministic() {
    let args = ["--suite", "tame-oracle", "--seed", "3", "--count", "40"];
    let (_, _, a) = run_bin(&args, "");
    let (_, _, b) = run_bin(&args, "");
    assert_eq!(a, b);
    let req = request("numeric_shift.json");
    assert_eq!(run_bin(&[], &req).2, run_bin(&[], &req).2);
}

#[test]
fn timing_only_on_request() {
    let req = request("quad_zero.json");
    let plain = run_text(&req, Options::default()).unwrap();
    assert!(plain["report"].get("timing_ms").is_none());
    let timed = run_text(&req, Options { timing: true }).unwrap();
    assert!(timed["report"]["timing_ms"].is_number());
}

#[test]
fn reproducer_runs_one_instance() {
    let r = reproducer(Suite::Steinberg, 7, 13);
    let req = serde_json::from_value(r).unwrap();
    let v = run_request(&req, Options::default()).unwrap();
    assert_eq!(v["value"], "1/1");
    assert_eq!(v["report"]["start"], 13);
}

#[test]
fn suite_corpus_passes() {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus().join("suites"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    assert_eq!(files.len(), Suite::ALL.len());
    for f in files {
        let v = run_text(&std::fs::read_to_string(&f).unwrap(), Options::default()).unwrap();
        let r = &v["report"];
        assert_eq!(r["failed"], 0, "{}: {}", f.display(), r["failures"]);
        assert_eq!(r["passed"], r["count"]);
    }
}
