use std::process::{Command, Output};

fn hplane(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hplane")).args(args).env_remove("HPLANE_SEED").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn reduce_golden() {
    let cases = [
        (&["reduce", "y*x"][..], "x*y - h*y^2\n"),
        (&["reduce", "[x, y]"], "h*y^2\n"),
        (&["reduce", "x*xi"], "xi*(x - h*y) + eta*(h*x + h^2*y)\n"),
        (&["reduce", "xi*xi"], "xi/\\eta*(h)\n"),
        (&["reduce", "kappa*kappa"], "0\n"),
        (&["reduce", "--context", "ext", "y^-1*x"], "x*y^-1 + h\n"),
        (&["reduce", "-c", "uv", "v*u"], "u*v + 2h*v\n"),
        (&["reduce", "-c", "ext2", "t1*t2 + t2*t1"], "0\n"),
        (&["reduce", "-c", "qgroup", "[A, C]"], "h*C^2\n"),
        (&["reduce", "1/2 + h*i"], "1/2 + i*h\n"),
    ];
    for (args, want) in cases {
        let o = hplane(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        assert_eq!(stdout(&o), want, "{args:?}");
    }
}

#[test]
fn reduce_is_idempotent() {
    for (ctx, e) in [("plane", "x*xi (x) eta"), ("ext", "y^-2*x^2 - [x, y^-1]"), ("ext3", "u*t3*w")] {
        let once = stdout(&hplane(&["reduce", "-c", ctx, e]));
        let twice = stdout(&hplane(&["reduce", "-c", ctx, once.trim()]));
        assert_eq!(once, twice, "{ctx}: {e}");
    }
}

#[test]
fn reduce_json() {
    let o = hplane(&["reduce", "-c", "uv", "[u,v]", "--format", "json"]);
    assert_eq!(stdout(&o), "{\"context\":\"uv\",\"input\":\"[u,v]\",\"kind\":\"element\",\"normal_form\":\"-2h*v\"}\n");
}

#[test]
fn parse_errors_exit_2_with_position() {
    let o = hplane(&["reduce", "y^-1*x"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("at position 1: `y` is not invertible"), "{}", stderr(&o));
    let o = hplane(&["reduce", "x + q"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("at position 4: unknown symbol `q`"));
    let o = hplane(&["reduce", "-c", "nowhere", "x"]);
    assert_eq!(o.status.code(), Some(2));
    let o = hplane(&["reduce", "xi*eta*xi (x) x"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(hplane(&["verify", "unknown"]).status.code(), Some(2));
    assert_eq!(hplane(&["table", "unknown"]).status.code(), Some(2));
    assert_eq!(hplane(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hplane(&["verify", "sigma-braid", "--format", "yaml"]).status.code(), Some(2));
    assert_eq!(hplane(&["connection", "--mu", "x", "--rho", "0", "--check", "torsion"]).status.code(), Some(2));
}

#[test]
fn verify_passes_and_is_deterministic() {
    let a = hplane(&["verify", "sigma-braid", "--format", "json"]);
    let b = hplane(&["verify", "sigma-braid", "--format", "json", "--sequential"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&hplane(&["verify", "sigma-braid"]));
    assert!(text.lines().any(|l| l == "[PASS] sigma.ybe.one-parameter (quantum Yang-Baxter equation)"));
    assert!(text.ends_with("sigma-braid: 23 passed, 0 failed, 0 reported\n"));
}

#[test]
fn seed_from_environment() {
    let flag = hplane(&["verify", "plane-calculus", "--format", "json", "--seed", "11"]);
    let env = Command::new(env!("CARGO_BIN_EXE_hplane"))
        .args(["verify", "plane-calculus", "--format", "json"])
        .env("HPLANE_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(flag.status.code(), Some(0));
    assert_eq!(flag.stdout, env.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_hplane"))
        .args(["verify", "climit"])
        .env("HPLANE_SEED", "abc")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn connection_checks() {
    let o = hplane(&["connection", "--mu", "1/2", "--rho", "-3", "--check", "torsion"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "connection mu=1/2 rho=-3 check=torsion\n  Theta(xi) = 0\n  Theta(eta) = 0\nPASS\n");
    assert_eq!(hplane(&["connection", "--mu", "2", "--rho", "0", "--check", "curvature"]).status.code(), Some(0));
    assert_eq!(hplane(&["connection", "--mu", "3", "--rho", "0", "--check", "compat"]).status.code(), Some(0));
    let o = hplane(&["connection", "--mu", "0", "--rho", "1", "--check", "compat", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("\"pass\":false"));
}

#[test]
fn tables() {
    let o = hplane(&["table", "fields"]);
    assert_eq!(o.status.code(), Some(0));
    let t = stdout(&o);
    assert!(t.starts_with("field | d_u"));
    assert!(t.contains("X'3   | -1/2*u^2 + 1/2*v^2      | -u*v"));
    let o = hplane(&["table", "sigma"]);
    assert!(stdout(&o).contains("xi(x)eta  | eta(x)xi + eta(x)eta*(h)"));
}
