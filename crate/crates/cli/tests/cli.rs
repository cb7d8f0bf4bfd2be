use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mixed-moore"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn construct(dir: &Path, file: &str, args: &[&str]) -> String {
    let path = dir.join(file).to_string_lossy().into_owned();
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &path]);
    let o = run(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn bound_example() {
    let o = run(&["bound", "--r", "1", "--z", "1", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("8"));
    assert!(text.lines().skip(1).all(|l| l.starts_with('#')));
    assert!(text.contains("agree=yes"));
}

#[test]
fn bound_families() {
    let first = |args: &[&str]| stdout(&run(args)).lines().next().unwrap().to_string();
    assert_eq!(
        first(&[
            "bound",
            "--r",
            "3",
            "--z",
            "0",
            "--k",
            "4",
            "--family",
            "bipartite-graph"
        ]),
        "30"
    );
    assert_eq!(
        first(&[
            "bound",
            "--r",
            "0",
            "--z",
            "2",
            "--k",
            "3",
            "--family",
            "bipartite-digraph"
        ]),
        "10"
    );
    assert_eq!(
        first(&["bound", "--r", "1", "--z", "1", "--k", "2", "--family", "mixed"]),
        "6"
    );
}

#[test]
fn table_example() {
    let o = run(&["table", "--dmax", "5", "--kmax", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l == "d=4 k=6: 20z^2+284z+728"));
    assert_eq!(text.lines().count(), 25);
    let pretty = stdout(&run(&["table", "--dmax", "5", "--kmax", "6", "--pretty"]));
    assert!(pretty.starts_with(&text));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["bound", "--r", "1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["construct", "--name", "pg", "--q", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "/nonexistent/file.mg"]).status.code(),
        Some(2)
    );
}

#[test]
fn search_example_and_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_string_lossy().into_owned();
    let o = run(&[
        "search",
        "--r",
        "1",
        "--z",
        "1",
        "--k",
        "3",
        "--n",
        "8",
        "--out-dir",
        &d,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("count=2"));
    let cert = dir.path().join("search_r1z1k3n8.cert");
    let body = std::fs::read_to_string(cert).unwrap();
    assert!(body.contains("count 2\n"));
    let again = stdout(&run(&[
        "search",
        "--r",
        "1",
        "--z",
        "1",
        "--k",
        "3",
        "--n",
        "8",
        "--threads",
        "1",
    ]));
    assert_eq!(text.lines().next(), again.lines().next());
}

#[test]
fn search_budget_exit_3() {
    let o = run(&["search", "--r", "1", "--z", "2", "--k", "3", "--n", "16"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn cli_output_is_deterministic() {
    let args = ["search", "--r", "1", "--z", "1", "--k", "4", "--n", "12"];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
    let args = ["table", "--dmax", "3", "--kmax", "5", "--pretty"];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
}

#[test]
fn verify_moore_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<(String, &str, &str)> = vec![
        (
            construct(dir.path(), "k44.mg", &["--name", "kdd", "--d", "4"]),
            "4,0",
            "2",
        ),
        (
            construct(dir.path(), "lk33.mg", &["--name", "lkdd", "--d", "3"]),
            "1,2",
            "3",
        ),
        (
            construct(dir.path(), "fig2a.mg", &["--name", "fig2a"]),
            "1,1",
            "3",
        ),
        (
            construct(dir.path(), "pg3.mg", &["--name", "pg", "--q", "3"]),
            "4,0",
            "3",
        ),
        (
            construct(dir.path(), "tc.mg", &["--name", "tutte-coxeter"]),
            "3,0",
            "4",
        ),
    ];
    for (path, reg, k) in &cases {
        let o = run(&[
            "verify",
            path,
            "--expect-regular",
            reg,
            "--expect-diameter",
            k,
            "--moore",
        ]);
        assert_eq!(o.status.code(), Some(0), "{path}: {}", stdout(&o));
        assert!(stdout(&o).ends_with("result pass\n"));
    }
    let dense = construct(
        dir.path(),
        "dense.mg",
        &["--name", "dense-family", "--k", "4", "--q", "2"],
    );
    let o = run(&[
        "verify",
        &dense,
        "--expect-regular",
        "1,2",
        "--expect-diameter",
        "4",
        "--moore",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&[
        "verify",
        &dense,
        "--expect-regular",
        "1,2",
        "--expect-diameter",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["verify", &cases[0].0, "--expect-diameter", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn spectrum_checks() {
    let dir = tempfile::tempdir().unwrap();
    let fig = construct(dir.path(), "fig2a.mg", &["--name", "fig2a"]);
    let o = run(&["spectrum", &fig, "--check-k3", "--check-hoffman"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("charpoly x^8-4x^6\n"));
    assert!(text.contains("k3-spectrum pass"));
    assert!(text.contains("hoffman pass"));

    let kdd = construct(dir.path(), "k33.mg", &["--name", "kdd", "--d", "3"]);
    let o = run(&["spectrum", &kdd, "--check-k3"]);
    assert_eq!(o.status.code(), Some(1));

    let c8 = construct(
        dir.path(),
        "c8.mg",
        &["--name", "cycle", "--n", "8", "--directed"],
    );
    let o = run(&["spectrum", &fig, "--cospectral", &c8]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("cospectral FAIL"));
}

#[test]
fn iso_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let a = construct(dir.path(), "a.mg", &["--name", "fig2a"]);
    let b = construct(dir.path(), "b.mg", &["--name", "lkdd", "--d", "2"]);
    let c = construct(dir.path(), "c.mg", &["--name", "cycle", "--n", "8"]);
    assert_eq!(stdout(&run(&["iso", &a, &b])), "isomorphic\n");
    assert_eq!(stdout(&run(&["iso", &a, &c])), "not isomorphic\n");
    let dot = stdout(&run(&["construct", "--name", "fig2a", "--dot"]));
    assert!(dot.starts_with("digraph G {"));
    assert_eq!(dot.matches("[dir=none]").count(), 4);
}

#[test]
fn digon_input_warns() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("digon.mg");
    std::fs::write(&p, "n 2\nA 0 1\nA 1 0\n").unwrap();
    let o = run(&["verify", &p.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("digon"));
}
