use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn avoidkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_avoidkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = avoidkit(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn value<'a>(report: &'a str, key: &str) -> &'a str {
    report
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .unwrap_or_else(|| panic!("no {key} in\n{report}"))
}

#[test]
fn gen_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.txt"), dir.path().join("b.txt"));
    for f in [&a, &b] {
        ok(&[
            "gen",
            "--kind",
            "perturbed-grid",
            "-n",
            "16",
            "--seed",
            "5",
            "-o",
            path(f),
        ]);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let text = fs::read_to_string(&a).unwrap();
    assert!(text.lines().any(|l| l == "2 16"));
}

#[test]
fn avoiding_report_verifies_as_a_claim() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("p.txt");
    let claim = dir.path().join("claim.txt");
    ok(&["gen", "-n", "12", "--seed", "2", "-o", path(&pts)]);
    ok(&["find-avoiding", "-i", path(&pts), "-o", path(&claim)]);
    let report = fs::read_to_string(&claim).unwrap();
    assert_eq!(value(&report, "method"), "exhaustive");
    assert_eq!(value(&report, "verified"), "true");
    assert!(value(&report, "size").parse::<usize>().unwrap() >= 1);
    let v = ok(&["verify", "-i", path(&pts), "--claim", path(&claim)]);
    assert_eq!(value(&v, "verified"), "true");
}

#[test]
fn false_claim_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("sq.txt");
    // a,c and b,d are the diagonals of a square: they cross
    fs::write(&pts, "2 4\n0 0\n1 0\n1 1\n0 1\n").unwrap();
    let claim = dir.path().join("c.txt");
    fs::write(&claim, "kind=avoiding\na=0,2\nb=1,3\n").unwrap();
    let out = avoidkit(&["verify", "-i", path(&pts), "--claim", path(&claim)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(value(&String::from_utf8(out.stdout).unwrap(), "verified"), "false");
    fs::write(&claim, "kind=avoiding\na=0,1\nb=2,3\n").unwrap();
    ok(&["verify", "-i", path(&pts), "--claim", path(&claim)]);
}

#[test]
fn exit_codes_for_bad_input_and_caps() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "2 2\n0 0\n1 2 3\n").unwrap();
    let out = avoidkit(&["find-avoiding", "-i", path(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let pts = dir.path().join("p.txt");
    ok(&["gen", "-n", "20", "-o", path(&pts)]);
    let out = avoidkit(&["find-avoiding", "-i", path(&pts), "--exhaustive", "--cap", "10"]);
    assert_eq!(out.status.code(), Some(3));
    let out = avoidkit(&["find-crossing", "-i", path(&pts), "--exhaustive", "--cap", "10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn crossing_of_convex_hexagon() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("hex.txt");
    fs::write(&pts, "2 6\n2 0\n1 2\n-1 2\n-2 0\n-1 -2\n1 -2\n").unwrap();
    let r = ok(&["find-crossing", "-i", path(&pts)]);
    assert_eq!(value(&r, "size"), "3");
    let claim = dir.path().join("c.txt");
    fs::write(&claim, &r).unwrap();
    ok(&["verify", "-i", path(&pts), "--claim", path(&claim)]);
}

#[test]
fn fractional_report_round_trips_through_verify_and_render() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("p.txt");
    let claim = dir.path().join("f.txt");
    let svg = dir.path().join("f.svg");
    ok(&["gen", "-n", "200", "--seed", "7", "-o", path(&pts)]);
    ok(&[
        "fractional",
        "-i",
        path(&pts),
        "--k",
        "2",
        "--m",
        "9",
        "-o",
        path(&claim),
    ]);
    let r = fs::read_to_string(&claim).unwrap();
    assert_eq!(value(&r, "avoid_passed"), "true");
    assert_eq!(value(&r, "cross_passed"), "true");
    assert_eq!(value(&r, "a_parts").split('|').count(), 2);
    let v = ok(&["verify", "-i", path(&pts), "--claim", path(&claim), "--trials", "50"]);
    assert_eq!(value(&v, "verified"), "true");
    ok(&["render", "-i", path(&pts), "--overlay", path(&claim), "-o", path(&svg)]);
    let picture = fs::read_to_string(&svg).unwrap();
    assert!(picture.starts_with("<svg"));
    assert!(picture.contains("<polygon"));
}

#[test]
fn spatial_commands() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("q.txt");
    ok(&["gen", "-n", "24", "--dim", "3", "--seed", "1", "-o", path(&pts)]);
    let r = ok(&["crossing-rd", "-i", path(&pts)]);
    assert_eq!(value(&r, "verified"), "true");
    assert_eq!(value(&r, "simplices").split(';').next().unwrap().split('-').count(), 3);

    let claim = dir.path().join("s.txt");
    ok(&[
        "sametype-partition",
        "-i",
        path(&pts),
        "--k",
        "4",
        "--exhaustive",
        "-o",
        path(&claim),
    ]);
    let s = fs::read_to_string(&claim).unwrap();
    assert_eq!(value(&s, "parts").split('|').count(), 4);
    let v = ok(&["verify", "-i", path(&pts), "--claim", path(&claim), "--exhaustive"]);
    assert_eq!(value(&v, "verified"), "true");

    let out = avoidkit(&["render", "-i", path(&pts)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_csv_is_deterministic_under_any_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.txt");
    fs::write(&spec, "# small\nuniform 12 2 0\nuniform 48 2 1\nperturbed_grid 9 2 0\n").unwrap();
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_avoidkit"))
            .args(["bench", "--spec", path(&spec)])
            .env("AVOIDKIT_THREADS", threads)
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    let one = run("1");
    assert_eq!(one, run("3"));
    let text = String::from_utf8(one).unwrap();
    assert!(text.starts_with("# format=1\n"));
    assert_eq!(text.lines().count(), 5);

    let empty = dir.path().join("empty.txt");
    fs::write(&empty, "").unwrap();
    assert_eq!(ok(&["bench", "--spec", path(&empty)]).lines().count(), 2);
}
