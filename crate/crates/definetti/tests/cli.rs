use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_definetti"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn csv_cell(csv: &str, r: u64, column: &str) -> String {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = header.iter().position(|h| *h == column).expect("column exists");
    lines
        .map(|l| l.split(',').collect::<Vec<_>>())
        .find(|cells| cells[0] == r.to_string())
        .map(|cells| cells[col].to_string())
        .expect("row exists")
}

#[test]
fn compute_examples() {
    for (args, expected) in [
        (vec!["compute", "sym-epsilon", "n=4", "k=2", "r=0", "d=2"], "4/5 = 0.8"),
        (vec!["compute", "coherent-bound", "n=100", "k=10", "r=0"], "1/5 = 0.2"),
        (vec!["compute", "exact-radius", "d=2", "n=12", "k=5", "l=2"], "3"),
        (vec!["compute", "su2-delta", "j1=1/2", "j2=1/2", "j=1", "r=0"], "2/3 = 0.666666666667"),
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stderr(&out));
        assert_eq!(stdout(&out).trim_end(), expected);
        assert!(stderr(&out).is_empty());
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["compute", "no-such-thing", "n=1"],
        vec!["compute", "sym-epsilon", "n=4", "k=2"],
        vec!["compute", "sym-epsilon", "n=4", "k=2", "r=0", "d=2", "bogus"],
        vec!["compute", "sym-epsilon", "n=x", "k=2", "r=0", "d=2"],
        vec!["figure", "4"],
        vec!["figure", "1", "--r", "9..2"],
        vec!["figure", "2", "--j", "0..201"],
        vec!["verify", "nothing"],
        vec!["verify", "cg", "--tol", "-1"],
        vec!["frobnicate"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(stdout(&out).is_empty(), "{args:?} wrote to stdout");
        assert!(!stderr(&out).is_empty());
    }
    let out = run(&["compute", "sym-epsilon", "n=4"]);
    assert!(stderr(&out).contains("usage: definetti compute sym-epsilon"));
}

#[test]
fn io_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("fig.csv");
    let out = run(&["figure", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn figure_csv_is_deterministic_and_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    for id in ["1", "2", "3"] {
        let a = dir.path().join(format!("a{id}.csv"));
        let b = dir.path().join(format!("b{id}.csv"));
        assert!(run(&["figure", id, "--out", a.to_str().unwrap()]).status.success());
        assert!(run(&["figure", id, "--out", b.to_str().unwrap()]).status.success());
        let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
        assert_eq!(a, b);
        let piped = run(&["figure", id]);
        assert_eq!(piped.stdout, a);
        let text = String::from_utf8(a).unwrap();
        assert!(text.ends_with('\n') && !text.contains('\r') && !text.contains('"'));
        assert_eq!(text.lines().count(), 42);
    }
}

#[test]
fn figure_anchors() {
    let fig1 = stdout(&run(&["figure", "1"]));
    assert!(fig1.starts_with("r,j=190,j=191,"));
    assert_eq!(csv_cell(&fig1, 0, "j=200"), "0.498753117207");

    let fig2 = stdout(&run(&["figure", "2"]));
    assert_eq!(csv_cell(&fig2, 0, "j=0"), "0");
    for r in 30..=40 {
        assert_eq!(csv_cell(&fig2, r, "j=30"), "0");
    }
    assert_ne!(csv_cell(&fig2, 29, "j=30"), "0");

    let fig3 = stdout(&run(&["figure", "3"]));
    let header = fig3.lines().next().unwrap();
    assert!(header.starts_with("r,Delta=0,Delta=1,"));
    assert!(header.ends_with(",su2_j=191,su2_j=190"));
    assert_eq!(csv_cell(&fig3, 0, "Delta=0"), "0.5");
    assert_eq!(csv_cell(&fig3, 0, "su2_j=200"), "0.498753117207");
}

#[test]
fn figure_overrides() {
    let out = stdout(&run(&["figure", "1", "--j1", "1/2", "--j2", "1/2", "--j", "0..1", "--r", "0..2"]));
    assert_eq!(out, "r,j=0,j=1\n0,1,0.333333333333\n1,0,0\n2,0,0\n");
    let out = stdout(&run(&["figure", "3", "--mu", "1", "--nu", "1", "--delta", "0", "--r", "0..1", "--no-overlay"]));
    assert_eq!(out, "r,Delta=0\n0,0.5\n1,0.25\n");
}

#[test]
fn verify_cg_reports_exact_matches() {
    let out = run(&["verify", "cg"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("PASS cg/oracle-exact-j-le-4: 7809 exact matches"), "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_mc_prints_distance_and_bound() {
    let out = run(&["verify", "mc", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("lhs_distance=") && text.contains("bound="));
    assert!(text.contains("seed=1"));
}

#[test]
fn verify_output_independent_of_parallel_flag() {
    let strip = |s: String| -> Vec<String> {
        s.lines()
            .map(|l| l.rsplit_once(" (").map_or(l, |(head, _)| head).to_string())
            .collect()
    };
    let a = strip(stdout(&run(&["verify", "mc", "--seed", "3"])));
    let b = strip(stdout(&run(&["verify", "mc", "--seed", "3", "--parallel"])));
    assert_eq!(a, b);
}

#[test]
fn verify_catches_each_mutation() {
    for m in ["eps-sum-off-by-one", "drop-cg-prefactor"] {
        let suite = if m.starts_with("eps") { "symmetric" } else { "cg" };
        let out = run(&["verify", suite, "--inject-mutation", m]);
        assert_eq!(out.status.code(), Some(1), "{m}");
        assert!(stdout(&out).contains("FAIL"));
    }
}
