use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn golden(name: &str) -> String {
    fs::read_to_string(golden_dir().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn cyclotrace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclotrace")).args(args).current_dir(golden_dir()).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn fvector_output() {
    let text: String = [["W", "1"], ["W", "2"], ["W", "3"], ["W", "4"], ["K", "5"]]
        .iter()
        .map(|[f, n]| {
            let o = cyclotrace(&["fvector", f, n]);
            assert!(o.status.success());
            stdout(&o)
        })
        .collect();
    assert_eq!(text, golden("fvector.txt"));
}

#[test]
fn lowercase_families() {
    assert_eq!(stdout(&cyclotrace(&["fvector", "w", "3"])), "W3: f = (6, 6, 1), euler characteristic = 1\n");
}

#[test]
fn parse_errors() {
    for (expr, file) in [
        ("compose(d 0, c)", "parse_missing_comma.txt"),
        ("permute([2, 1] d)", "parse_permute.txt"),
        ("compose(d, 1, ", "parse_eof.txt"),
    ] {
        let o = cyclotrace(&["eval", expr]);
        assert_eq!(o.status.code(), Some(2), "{expr}");
        assert_eq!(stderr(&o), golden(file), "{expr}");
    }
}

#[test]
fn index_out_of_range() {
    let o = cyclotrace(&["eval", "compose(d, 0, c)", "--bind", "d=d.json", "--bind", "c=c.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr(&o), golden("index_out_of_range.txt"));
    assert!(stderr(&o).contains("index 0 out of range 1..2"));
}

#[test]
fn loop_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("square.csv");
    let svg = dir.path().join("square.svg");
    assert!(cyclotrace(&["loop", "csv", "square.json", "--out", csv.to_str().unwrap()]).status.success());
    assert_eq!(fs::read_to_string(&csv).unwrap(), golden("square.csv"));
    assert!(cyclotrace(&["loop", "svg", csv.to_str().unwrap(), svg.to_str().unwrap()]).status.success());
    assert_eq!(fs::read_to_string(&svg).unwrap(), golden("square.svg"));
}

fn seeded_run(dir: &Path, seed: &str) -> (Vec<u8>, Vec<u8>) {
    let csv = dir.join(format!("trace{seed}.csv"));
    let svg = dir.join(format!("trace{seed}.svg"));
    assert!(cyclotrace(&["trace", "random", "--seed", seed, "--out", csv.to_str().unwrap()]).status.success());
    assert!(cyclotrace(&["loop", "svg", csv.to_str().unwrap(), svg.to_str().unwrap()]).status.success());
    (fs::read(csv).unwrap(), fs::read(svg).unwrap())
}

#[test]
fn seeded_output_is_byte_stable() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let first = seeded_run(a.path(), "7");
    let second = seeded_run(b.path(), "7");
    assert_eq!(first, second);
    assert_eq!(first.0, golden("trace_seed7.csv").into_bytes());
    assert_eq!(first.1, golden("trace_seed7.svg").into_bytes());
    assert_ne!(seeded_run(a.path(), "8").0, first.0);
}

#[test]
fn check_polytopes_lists_the_hexagon() {
    let o = cyclotrace(&["check", "polytopes"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("W3  (6, 6, 1)"), "{}", stdout(&o));
}

#[test]
fn zero_trials_is_a_usage_error() {
    assert_eq!(cyclotrace(&["check", "trace", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(cyclotrace(&["check", "nonsense"]).status.code(), Some(2));
    assert_eq!(cyclotrace(&["fvector", "X", "3"]).status.code(), Some(2));
}

#[test]
fn check_all_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = cyclotrace(&["check", "all", "--seed", "7", "--trials", "500", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
}

#[test]
fn freetrace_equal_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let x = r#"{"points":[[0.0],[1.0]],"basepoint":[0.0]}"#;
    let write = |name: &str, body: String| {
        let p = dir.path().join(name);
        fs::write(&p, body).unwrap();
        p
    };
    let a = write("a.json", format!(r#"{{"circle":[[0.1,0.2],[0.5,0.2]],"labels":[[1.0],[0.0]],"X":{x}}}"#));
    let b = write("b.json", format!(r#"{{"circle":[[0.1,0.2]],"labels":[[1.0]],"X":{x}}}"#));
    let c = write("c.json", format!(r#"{{"circle":[[0.3,0.2]],"labels":[[1.0]],"X":{x}}}"#));
    let run = |p: &Path, q: &Path| cyclotrace(&["freetrace", "equal", p.to_str().unwrap(), q.to_str().unwrap()]);
    assert_eq!(run(&a, &b).status.code(), Some(0));
    assert_eq!(run(&a, &c).status.code(), Some(1));
}
