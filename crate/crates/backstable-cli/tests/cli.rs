use std::process::{Command, Output};

use backstable::gkm::LocalizedClass;
use backstable::homology::DualSeries;
use backstable_cli::suites::SuiteReport;

fn backstable(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_backstable")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn single_schubert_of_s1() {
    let o = backstable(&["schubert", "--perm", "s:1", "--single"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "x_1\n");
}

#[test]
fn negative_window_is_accepted() {
    let o = backstable(&["schubert", "--perm", "s:0", "--window", "-1", "2"]);
    assert_eq!(stdout(&o), "x_-1 + x_0\n");
}

#[test]
fn renders_square_dreams() {
    let o = backstable(&["pipedreams", "--perm", "1:2,1,4,3", "--square", "--render"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.matches("wt = ").count(), 3);
    assert!(out.ends_with("3 pipedreams\n"));
}

#[test]
fn verify_all_passes() {
    let o = backstable(&["verify", "--suite", "all", "--size", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 17);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(backstable(&["schubert"]).status.code(), Some(2));
    assert_eq!(backstable(&["schubert", "--perm", "nonsense"]).status.code(), Some(2));
    assert_eq!(backstable(&["verify", "--suite", "nope", "--size", "2"]).status.code(), Some(2));
    assert_eq!(backstable(&["pipedreams", "--perm", "s:1"]).status.code(), Some(2));
}

#[test]
fn bad_thread_count_exits_2() {
    let o = Command::new(env!("CARGO_BIN_EXE_backstable"))
        .args(["verify", "--suite", "kl", "--size", "1"])
        .env("BACKSTABLE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_round_trips() {
    let o = backstable(&["localize", "--perm", "s:2,1", "--window", "1", "3", "--json"]);
    let c: LocalizedClass = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(serde_json::to_string_pretty(&c).unwrap() + "\n", stdout(&o));

    let o = backstable(&["dual-schur", "--partition", "1,1", "--cap", "4", "--json"]);
    let f: DualSeries = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(f, backstable::homology::dual_schur(&"1,1".parse().unwrap(), 4));

    let o = backstable(&["verify", "--suite", "monk", "--size", "2", "--json"]);
    let r: Vec<SuiteReport> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.len(), 1);
    assert!(r[0].failures.is_empty());
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--suite", "localization", "--size", "3", "--json"];
    let one = Command::new(env!("CARGO_BIN_EXE_backstable")).args(args).env("BACKSTABLE_THREADS", "1").output().unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_backstable")).args(args).env("BACKSTABLE_THREADS", "4").output().unwrap();
    assert_eq!(one.stdout, many.stdout);
    let a = backstable(&["nilhecke", "--perm", "s:1,2,1"]);
    let b = backstable(&["nilhecke", "--perm", "s:1,2,1"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn size_zero_is_trivial() {
    let o = backstable(&["verify", "--suite", "all", "--size", "0"]);
    assert_eq!(o.status.code(), Some(0));
}
