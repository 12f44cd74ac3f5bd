use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

fn dctfactor(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_dctfactor"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn dctfactor");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn scratch(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("dctfactor-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn count_row_sixteen() {
    let out = dctfactor(&["count", "--max-log2", "4"], "");
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let row: Vec<&str> = text
        .lines()
        .find(|l| l.split_whitespace().next() == Some("16"))
        .unwrap()
        .split_whitespace()
        .collect();
    assert_eq!(row, ["16", "17", "15", "32", "81"]);
}

#[test]
fn count_rows_follow_closed_forms() {
    let out = dctfactor(&["count", "--max-log2", "10", "--format", "csv"], "");
    let text = String::from_utf8(out.stdout).unwrap();
    for (k, line) in text.lines().skip(1).enumerate() {
        let k = k as u32 + 1;
        let v: Vec<u64> = line.split(',').map(|f| f.parse().unwrap()).collect();
        let core: u64 = (1..k).map(|p| u64::from(p) << (p - 1)).sum();
        assert_eq!(v[0], 1 << k);
        assert_eq!(v[1], core);
        assert_eq!(v[2], (1 << k) - 1);
        assert_eq!(v[3], v[1] + v[2]);
        assert_eq!(v[4], 3 * core + (1 << (k + 1)) - 2);
    }
}

#[test]
fn transform_files_round_trip_exactly() {
    let input = scratch("in.txt");
    let output = scratch("out.txt");
    fs::write(
        &input,
        "0.1 0.2 0.3 0.4 0.5 0.6 0.7 0.8\n-1 2.5e-3 3 4 5 6 7 8\n",
    )
    .unwrap();
    let out = dctfactor(
        &[
            "transform",
            "--n",
            "8",
            "--input",
            input.to_str().unwrap(),
            "--output",
            output.to_str().unwrap(),
        ],
        "",
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = fs::read_to_string(&output).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);

    let x = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8];
    let want = dctfactor::build_dct2(8).unwrap().apply(&x).unwrap();
    let got: Vec<f64> = lines[0].split(' ').map(|t| t.parse().unwrap()).collect();
    // shortest round-trip printing reproduces every bit
    assert_eq!(got, want);
}

#[test]
fn transform_stdin_stdout() {
    let out = dctfactor(&["transform", "--n", "4", "--bar"], "1 1 1 1\n");
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "4 0 0 0\n");
}

#[test]
fn malformed_input_exits_one_with_line_number() {
    let out = dctfactor(&["transform", "--n", "4"], "1 2 3 4\n\n1 2 x 4\n");
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        dctfactor(&["transform", "--n", "12"], "").status.code(),
        Some(2)
    );
    assert_eq!(dctfactor(&["count"], "").status.code(), Some(2));
    assert_eq!(dctfactor(&[], "").status.code(), Some(2));
}

#[test]
fn verify_passes_and_is_repeatable() {
    let args = [
        "verify",
        "--max-log2",
        "6",
        "--trials",
        "20",
        "--seed",
        "7",
        "--tolerance",
        "1e-10",
    ];
    let a = dctfactor(&args, "");
    let b = dctfactor(&args, "");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn graph_writes_dot_and_listing() {
    let dot = scratch("g.dot");
    let out = dctfactor(
        &[
            "graph",
            "--n",
            "16",
            "--bar",
            "--out",
            dot.to_str().unwrap(),
        ],
        "",
    );
    assert!(out.status.success());
    let text = fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph"));
    graphviz_rust::parse(&text).unwrap();

    let listing = scratch("g.txt");
    let out = dctfactor(
        &[
            "graph",
            "--n",
            "16",
            "--bar",
            "--listing",
            "--out",
            listing.to_str().unwrap(),
        ],
        "",
    );
    assert!(out.status.success());
    let text = fs::read_to_string(&listing).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with('t')).count(), 98);
}

#[test]
fn bench_reports_timings() {
    let out = dctfactor(&["bench", "--n", "64", "--iters", "50"], "");
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for key in [
        "factored_apply_ns=",
        "straight_line_ns=",
        "dense_matvec_ns=",
    ] {
        assert!(text.contains(key), "{key}");
    }
}
