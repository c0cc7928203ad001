use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value as Json;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn chs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chs")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Runs with `--format machine` and returns the parsed record.
fn machine(args: &[&str]) -> Json {
    let mut all = args.to_vec();
    all.extend(["--format", "machine"]);
    let o = chs(&all);
    assert!(o.status.success(), "{args:?}: {}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1, "one record per run: {text}");
    serde_json::from_str(&text).expect("valid json")
}

fn field<'a>(record: &'a Json, key: &str) -> &'a str {
    record[key].as_str().unwrap_or_else(|| panic!("{key} missing in {record}"))
}

fn temp_matrix(n: usize, entries: impl Fn(usize, usize) -> (f64, f64)) -> tempfile::NamedTempFile {
    let data: Vec<_> = (0..n * n).map(|k| entries(k / n, k % n)).map(|(re, im)| serde_json::json!([re, im])).collect();
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "{}", serde_json::json!({ "n": n, "entries": data })).unwrap();
    f
}

fn hermitian_4x4() -> tempfile::NamedTempFile {
    temp_matrix(4, |i, j| {
        let re = ((i + j) as f64 * 0.7).sin() + if i == j { i as f64 } else { 0.0 };
        let im = if i == j { 0.0 } else { (i as f64 - j as f64) * 0.3 };
        (re, im)
    })
}

#[test]
fn fibonacci_norm_is_exact() {
    let r = machine(&["norm", "--d", "6", &fixture("fib.mat"), "--method", "charpoly", "--exact"]);
    assert_eq!(field(&r, "dth_power"), "13");
    assert_eq!(r["exact"], true);
    assert_eq!(field(&r, "method"), "charpoly");
}

#[test]
fn cyclic_shift_by_det_series() {
    let r = machine(&["norm", "--d", "4", &fixture("cyclic3.mat"), "--method", "detseries", "--exact"]);
    assert_eq!(field(&r, "dth_power"), "3/2");
}

#[test]
fn zero_matrix() {
    let o = chs(&["norm", "--d", "2", &fixture("zero.mat")]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["||A||_d^d", "0"]), "{}", stdout(&o));
}

#[test]
fn human_output_prints_rationals_and_17_digits() {
    let o = chs(&["norm", "--d", "4", &fixture("jordan.mat")]);
    let text = stdout(&o);
    assert!(text.contains("||A||_d^d  1/6"), "{text}");
    let norm = text.lines().find(|l| l.starts_with("||A||_d ")).unwrap().split_whitespace().last().unwrap();
    let digits: String = norm.split('e').next().unwrap().chars().filter(char::is_ascii_digit).collect();
    assert_eq!(digits.len(), 17);
    assert_eq!(norm.parse::<f64>().unwrap(), (1.0f64 / 6.0).powf(0.25));
}

#[test]
fn exact_flag_lifts_float_files() {
    let f = temp_matrix(2, |i, j| (if i == j { 0.5 } else { 0.0 }, 0.0));
    let path = f.path().to_str().unwrap();
    let approx = machine(&["norm", "--d", "2", path]);
    assert_eq!(approx["exact"], false);
    assert_eq!(field(&approx, "method"), "spectrum");
    let exact = machine(&["norm", "--d", "2", path, "--exact"]);
    assert_eq!(field(&exact, "dth_power"), "3/4");
    assert_eq!(field(&exact, "method"), "charpoly");
}

#[test]
fn compare_jordan_cell() {
    let o = chs(&["compare", "--d", "6", &fixture("jordan.mat")]);
    assert!(o.status.success(), "{}", stdout(&o));
    let r = machine(&["compare", "--d", "6", &fixture("jordan.mat")]);
    let rows = r["rows"].as_array().unwrap();
    let methods: Vec<_> = rows.iter().map(|row| field(row, "method")).collect();
    assert_eq!(methods, ["words", "quadrature", "detseries"]);
    assert!(rows.iter().all(|row| row["agrees"] == true));
    assert_eq!(field(&rows[0], "dth_power"), "1/20");
    assert_eq!(field(&rows[2], "dth_power"), "1/20");
}

#[test]
fn compare_hermitian_float_matrix() {
    let f = hermitian_4x4();
    let r = machine(&["compare", "--d", "4", f.path().to_str().unwrap()]);
    let rows = r["rows"].as_array().unwrap();
    assert!(rows.len() >= 4, "{r}");
    assert!(rows.iter().all(|row| row["agrees"] == true), "{r}");
    assert!(r["max_deviation"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn incompatible_method_is_a_clean_error() {
    for method in ["spectrum", "charpoly", "recursion", "tensor"] {
        let o = chs(&["norm", "--d", "4", &fixture("jordan.mat"), "--method", method]);
        assert_eq!(o.status.code(), Some(2));
        assert!(o.stdout.is_empty());
        let err = stderr(&o);
        assert!(err.contains(&format!("method {method} requires a Hermitian matrix")), "{err}");
        assert!(!err.contains("panicked"));
    }
}

#[test]
fn input_errors() {
    let odd = chs(&["norm", "--d", "3", &fixture("fib.mat")]);
    assert_eq!(odd.status.code(), Some(2));
    assert!(stderr(&odd).contains("even"));
    let missing = chs(&["norm", "--d", "2", "/nonexistent.mat"]);
    assert_eq!(missing.status.code(), Some(2));
    let unknown = chs(&["norm", "--d", "2", &fixture("fib.mat"), "--method", "magic"]);
    assert!(!unknown.status.success());
    assert!(stderr(&unknown).contains("charpoly"));
    let not_a_matrix = chs(&["norm", "--d", "2", &fixture("k3.edges")]);
    assert_eq!(not_a_matrix.status.code(), Some(2));
}

#[test]
fn series_lists_coefficients() {
    let r = machine(&["series", &fixture("fib.mat"), "--d-max", "8"]);
    let coeffs: Vec<_> = r["terms"].as_array().unwrap().iter().map(|t| field(t, "coefficient").to_string()).collect();
    assert_eq!(coeffs, ["1", "1", "2", "3", "5", "8", "13", "21", "34"]);
    let c = machine(&["series", &fixture("cyclic3.mat"), "--d-max", "8"]);
    let coeffs: Vec<_> = c["terms"].as_array().unwrap().iter().map(|t| field(t, "coefficient").to_string()).collect();
    assert_eq!(coeffs, ["3/2", "3/2", "29/20", "99/70"]);
}

#[test]
fn nilpotent_pair_has_equal_series() {
    let a = machine(&["series", &fixture("nilpotent_a.mat"), "--d-max", "12"]);
    let b = machine(&["series", &fixture("nilpotent_b.mat"), "--d-max", "12"]);
    assert_eq!(a["terms"], b["terms"]);
}

#[test]
fn bounds_pass_on_fixtures() {
    for (name, d) in [("fib.mat", "4"), ("cyclic3.mat", "2"), ("jordan.mat", "6")] {
        let o = chs(&["bounds", "--d", d, &fixture(name)]);
        assert!(o.status.success(), "{name}: {}", stdout(&o));
        assert!(!stdout(&o).contains("VIOLATED"));
    }
}

#[test]
fn graph_pair_from_edge_lists_and_matrices() {
    for (a, b) in [("two_triangles.edges", "hexagon.edges"), ("graph_a.mat", "graph_b.mat")] {
        let r = machine(&["graph", &fixture(a), &fixture(b), "--d", "2,4,6"]);
        assert_eq!(r["cospectral"], false);
        assert_eq!(r["singularly_cospectral"], true);
        let rows = r["distinguish"]["rows"].as_array().unwrap();
        let pairs: Vec<_> = rows.iter().map(|row| (field(row, "left"), field(row, "right"))).collect();
        assert_eq!(pairs, [("6", "6"), ("27", "27"), ("120", "112")]);
        assert_eq!(r["distinguish"]["first_distinguishing"], 6);
    }
}

#[test]
fn tensor_trace() {
    let r = machine(&["tensor", &fixture("cyclic3.mat"), "--d", "3", "--exact"]);
    assert_eq!(r["dimension"], 10);
    assert_eq!(field(&r, "trace_re"), "1");
    assert_eq!(r["norm"], Json::Null);
    let f = machine(&["tensor", &fixture("fib.mat"), "--d", "4"]);
    assert_eq!(field(&f, "trace_re"), "5");
}

#[test]
fn machine_output_round_trips() {
    let f = hermitian_4x4();
    let float = f.path().to_str().unwrap();
    let runs: Vec<Vec<String>> = vec![
        vec!["norm".into(), "--d".into(), "6".into(), fixture("fib.mat")],
        vec!["norm".into(), "--d".into(), "4".into(), float.into()],
        vec!["series".into(), fixture("cyclic3.mat")],
        vec!["compare".into(), "--d".into(), "4".into(), float.into()],
        vec!["bounds".into(), "--d".into(), "4".into(), float.into()],
        vec!["graph".into(), fixture("graph_a.mat"), fixture("graph_b.mat")],
        vec!["tensor".into(), "--d".into(), "2".into(), float.into()],
        vec!["selftest".into(), "--list".into()],
    ];
    for args in runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = machine(&args);
        let printed = serde_json::to_string(&first).unwrap();
        let second: Json = serde_json::from_str(&printed).unwrap();
        assert_eq!(first, second, "{args:?}");
        assert_eq!(serde_json::to_string(&second).unwrap(), printed, "{args:?}");
    }
}

#[test]
fn selftest_list_does_not_run() {
    let o = chs(&["selftest", "--list"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for name in ["fibonacci", "cyclic-shift", "doubled-triangles", "monte-carlo", "fixtures"] {
        assert!(text.contains(name), "{name} missing from {text}");
    }
    assert!(!text.contains("PASS") && !text.contains("FAIL"));
}

#[test]
fn selftest_only_graphs() {
    let o = chs(&["selftest", "--only", "graphs"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("PASS  3 doubled-triangles"), "{text}");
    assert!(text.contains("120"));
    assert!(text.contains("1 of 1 cases passed"));
}

#[test]
fn selftest_unknown_filter() {
    let o = chs(&["selftest", "--only", "no-such-case"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no-such-case"));
}

#[test]
fn selftest_seed_is_reported() {
    let r = machine(&["selftest", "--only", "partitions,fixtures", "--seed", "7"]);
    assert_eq!(r["seed"], 7);
    assert_eq!(r["total"], 2);
    assert_eq!(r["passed"], 2);
}

#[test]
fn selftest_default_seed_all_pass() {
    let o = chs(&["selftest"]);
    let text = stdout(&o);
    assert!(o.status.success(), "{text}");
    assert!(!text.contains("FAIL"), "{text}");
}
