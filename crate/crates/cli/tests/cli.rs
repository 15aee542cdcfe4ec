use std::process::{Command, Output};

use serde_json::Value;

const F4: [&str; 6] = ["--case", "sigma", "--p", "2", "--tower", "g^2+g+1"];
const F9: [&str; 6] = ["--case", "sigma", "--p", "3", "--tower", "g^2-g-1"];

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orenorm")).args(args).env_remove("ORENORM_SEED").output().unwrap()
}

fn with(sub: &[&str], ring: &[&str], rest: &[&str]) -> Output {
    let args: Vec<&str> = sub.iter().chain(ring).chain(rest).copied().collect();
    run(&args)
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn norm_of_t_plus_g() {
    let out = run(&["norm", "--case", "sigma", "--p", "2", "--tower", "g^2+g+1", "--sigma-power", "1", "--poly", "t+g"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "x + 1\n");
}

#[test]
fn norm_shows_rho() {
    let out = with(&["norm"], &F4, &["--poly", "t+g", "--show-rho", "--json"]);
    let v = json(&out);
    assert_eq!(v["norm"], "x + 1");
    assert_eq!(v["rho"][1][0], "x");
    assert_eq!(v["rho"][0][1], "1");
}

#[test]
fn mclm_and_bound() {
    for sub in ["mclm", "bound"] {
        let out = with(&[sub], &F4, &["--poly", "t^2+g"]);
        assert_eq!(stdout(&out), "x^2 + x + 1\n");
        let out = with(&[sub], &F4, &["--poly", "t^2+1"]);
        assert_eq!(stdout(&out), "x + 1\n");
    }
}

#[test]
fn f9_quadratic_has_two_factorizations() {
    let out = with(&["factor", "--all-orderings"], &F9, &["--poly", "t^2+(2*g+2)*t+g", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["count"], 2);
    let first = &v["factorizations"][0];
    assert_eq!(first["unit"], "1");
    assert_eq!(first["factors"].as_array().unwrap().len(), 2);
}

#[test]
fn ordering_selects_the_decomposition() {
    let a = stdout(&with(&["factor", "--ordering", "0,1"], &F9, &["--poly", "t^2+(2*g+2)*t+g"]));
    let b = stdout(&with(&["factor", "--ordering", "1,0"], &F9, &["--poly", "t^2+(2*g+2)*t+g"]));
    assert_ne!(a, b);
    assert!([a.as_str(), b.as_str()].contains(&"(t + 1) * (t + g)\n"));
    let bad = with(&["factor", "--ordering", "0,0"], &F9, &["--poly", "t^2+(2*g+2)*t+g"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("InvalidOrdering"));
}

#[test]
fn factor_falls_back_to_the_oracle_on_request() {
    let out = with(&["factor"], &F4, &["--poly", "t^2+1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("CriterionNotSatisfied"));
    let out = with(&["factor", "--oracle", "--all-orderings"], &F4, &["--poly", "t^2+1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 3);
}

#[test]
fn irreducible_verdicts_and_exit_codes() {
    let out = with(&["irreducible"], &F4, &["--poly", "t^2+g", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "irreducible");
    assert_eq!(v["route"], "norm-irreducible");

    let out = with(&["irreducible"], &F4, &["--poly", "t^2+1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).starts_with("inconclusive"));
    let out = with(&["irreducible", "--oracle"], &F4, &["--poly", "t^2+1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("reducible"));
}

#[test]
fn delta_case_is_inconclusive_without_extra_knowledge() {
    let out = run(&["irreducible", "--case", "delta", "--p", "3", "--delta", "du", "--poly", "t^2+u"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).starts_with("inconclusive"));
}

#[test]
fn delta_norms() {
    let out = run(&["norm", "--case", "delta", "--p", "3", "--poly", "t^3+u"]);
    assert_eq!(stdout(&out), "x^3 + u^3\n");
    let out = run(&["norm", "--case", "delta", "--p", "5", "--tower", "g^2-2", "--delta", "g*u*du", "--poly", "t^4+u"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "x^4 + u^5\n");
}

#[test]
fn oracle_subcommand() {
    let out = with(&["oracle", "factor"], &F4, &["--poly", "t^2+1"]);
    assert_eq!(stdout(&out).lines().count(), 3);
    let out = with(&["oracle", "irreducible"], &F4, &["--poly", "t^2+g"]);
    assert_eq!(stdout(&out), "irreducible\n");
    let out = with(&["oracle", "irreducible", "--budget", "2"], &F9, &["--poly", "t^4+g"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("BudgetExceeded"));
}

#[test]
fn ring_file_matches_flags() {
    let dir = std::env::temp_dir().join(format!("orenorm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ring.json");
    std::fs::write(&path, r#"{"case": "sigma", "p": 2, "tower": "g^2+g+1", "sigma_power": 1}"#).unwrap();
    let out = run(&["norm", "--ring", path.to_str().unwrap(), "--poly", "t+g"]);
    assert_eq!(stdout(&out), "x + 1\n");
    std::fs::write(&path, r#"{"case": "sigma", "p": 2, "tower": "g^2"}"#).unwrap();
    let out = run(&["norm", "--ring", path.to_str().unwrap(), "--poly", "t+g"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ReducibleModulus"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn errors_name_their_variant() {
    let out = with(&["norm"], &F4, &["--poly", "t+", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"], "ParseError");
    let out = run(&["norm", "--case", "sigma", "--p", "4", "--tower", "g^2+g+1", "--poly", "t"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("NonPrimeCharacteristic"));
    let out = run(&["norm", "--case", "sigma", "--p", "2", "--tower", "g^2+g+1", "--sigma-power", "2", "--poly", "t"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("TrivialTwist"));
}

#[test]
fn csa_verify_passes() {
    let out = run(&["csa-verify", "--q", "3", "--n", "3", "--d", "2", "--a", "1", "--u", "2", "--trials", "5", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).ends_with("6/6 checks passed\n"));
}

#[test]
fn verify_suites() {
    let out = run(&["verify", "--suite", "sigma-terms", "--trials", "20", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = run(&["verify", "--suite", "csa", "--trials", "5", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = run(&["verify", "--suite", "oracle-agreement", "--trials", "50", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = run(&["verify", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn seeds_give_identical_output() {
    let args = ["verify", "--suite", "sigma-terms", "--trials", "10", "--json"];
    let a = Command::new(env!("CARGO_BIN_EXE_orenorm")).args(args).env("ORENORM_SEED", "5").output().unwrap();
    let b = run(&[&args[..], &["--seed", "5"]].concat());
    assert_eq!(a.stdout, b.stdout);
}
