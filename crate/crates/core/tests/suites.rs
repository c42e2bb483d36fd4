use hplane_core::par::Exec;
use hplane_core::report::{Check, Report, Status};
use hplane_core::suites::{run_suite, Config, DEFAULT_SEED, SUITES};

fn cfg(exec: Exec) -> Config {
    Config { seed: DEFAULT_SEED, exec }
}

#[test]
fn json_is_byte_identical_across_runs() {
    let a = run_suite("sigma-braid", &Config::default()).unwrap().to_json();
    let b = run_suite("sigma-braid", &Config::default()).unwrap().to_json();
    assert_eq!(a, b);
}

#[test]
fn execution_mode_does_not_change_output() {
    let seq = run_suite("climit", &cfg(Exec::Sequential)).unwrap().to_json();
    let par = run_suite("climit", &cfg(Exec::Parallel)).unwrap().to_json();
    assert_eq!(seq, par);
}

#[test]
fn seed_changes_samples_not_verdicts() {
    let other = Config { seed: 7, exec: Exec::default() };
    let a = run_suite("plane-calculus", &Config::default()).unwrap();
    let b = run_suite("plane-calculus", &other).unwrap();
    assert!(a.all_ok() && b.all_ok());
    assert_eq!(a.checks.len(), b.checks.len());
}

#[test]
fn unknown_suite_is_an_error() {
    assert!(run_suite("unknown", &Config::default()).is_err());
}

#[test]
fn suites_are_listed() {
    assert!(SUITES.contains(&"all"));
    assert_eq!(SUITES.len(), 9);
}

#[test]
fn empty_report_json() {
    let r = Report::new("empty", vec![]);
    assert_eq!(r.to_json(), r#"{"suite":"empty","checks":[],"passed":0,"failed":0,"reported":0}"#);
}

#[test]
fn counts_match_tallies() {
    let checks = vec![
        Check::new("b", "two", Status::Fail, "1".into(), "0".into(), "1".into()),
        Check::new("a", "one", Status::Pass, "0".into(), "0".into(), "0".into()),
        Check::new("c", "three", Status::Reported, "1".into(), "0".into(), "1".into()),
    ];
    let r = Report::new("mixed", checks);
    assert_eq!((r.passed, r.failed, r.reported), (1, 1, 1));
    let ids: Vec<&str> = r.checks.iter().map(|c| c.check_id.as_str()).collect();
    assert_eq!(ids, ["a", "b", "c"]);
    assert!(!r.all_ok());
    let single = Report::new("one", vec![Check::new("a", "one", Status::Pass, "0".into(), "0".into(), "0".into())]);
    assert_eq!((single.passed, single.failed, single.reported), (1, 0, 0));
}

#[test]
fn extended_suite_reports_curvature() {
    let r = run_suite("extended", &Config::default()).unwrap();
    let g = r.checks.iter().find(|c| c.check_id == "extended.levicivita.gaussian").unwrap();
    assert_eq!(g.status, Status::Pass);
}
