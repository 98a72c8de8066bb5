use std::path::PathBuf;
use std::process::{Command, Output};

fn argact(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_argact")).args(args).output().expect("argact runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit status")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_domain(name: &str, text: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn solve_bundled_domain_exits_zero() {
    let o = argact(&["solve", "yale"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("yale: 1 extension (plausible)"));
}

#[test]
fn bundled_name_accepts_ad_suffix() {
    assert_eq!(code(&argact(&["solve", "yale.ad"])), 0);
}

#[test]
fn negative_answers_exit_one() {
    let o = argact(&["entail", "roulette", "--formula", "[1] loaded"]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
    assert!(stdout(&o).contains("NO"));
    let o = argact(&["trans", "relay-loop"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("DIVERGED"));
    assert_eq!(code(&argact(&["verify", "murder-mystery", "--theorem", "3"])), 1);
}

#[test]
fn syntax_errors_exit_two() {
    let p = write_domain("broken.ad", "domain d;\nfluents f;\nhorizon 1;\nfact [0 f;\n");
    let o = argact(&["solve", p.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("4:"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&argact(&["solve", "no-such-domain"])), 2);
    assert_eq!(code(&argact(&["verify", "yale", "--theorem", "9"])), 2);
    assert_eq!(code(&argact(&["entail", "yale", "--formula", "[2] ghost"])), 2);
}

#[test]
fn inconsistent_theory_exits_three() {
    let p = write_domain("inconsistent.ad", "domain d; fluents f; horizon 1; fact [0] f; fact -[0] f;\n");
    assert_eq!(code(&argact(&["solve", p.to_str().unwrap()])), 3);
}

#[test]
fn exceeded_bound_exits_four() {
    let o = Command::new(env!("CARGO_BIN_EXE_argact"))
        .args(["solve", "yale"])
        .env("ARGACT_MAX_ASSUMPTIONS", "1")
        .output()
        .unwrap();
    assert_eq!(code(&o), 4);
}

#[test]
fn json_output_is_tagged_by_command() {
    let o = argact(&["--format", "json", "solve", "potato", "--select-min-lr-aq"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["command"], "solve");
    assert_eq!(v["extensions"].as_array().unwrap().len(), 1);
}

#[test]
fn corpus_list_and_run() {
    let o = argact(&["corpus", "list"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 10);
    let o = argact(&["corpus", "run"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("MATCH ")));
}
