use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use hplane_cli::{parse_expr, Context, Value};
use hplane_core::calculus::Form;
use hplane_core::geometry::{omega_expected, BilinearForm, Connection};
use hplane_core::par::Exec;
use hplane_core::scalar::Scalar;
use hplane_core::suites::{run_suite, table, Config, DEFAULT_SEED, SUITES, TABLES};
use serde_json::json;

/// Exact verification of the differential geometry of the h-deformed plane.
#[derive(Parser)]
#[command(name = "hplane", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, env = "HPLANE_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Run every check on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Torsion,
    Curvature,
    Compat,
}

#[derive(Subcommand)]
enum Command {
    /// Print the normal form of an expression.
    Reduce {
        expr: String,
        /// One of plane, plane2, ext, ext2, ext3, uv, qgroup.
        #[arg(long, short, default_value = "plane")]
        context: String,
    },
    /// Run a verification suite.
    Verify { suite: String },
    /// Print a table of computed data.
    Table { name: String },
    /// Check the plane connection family at given parameters.
    Connection {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        rho: String,
        #[arg(long, value_enum)]
        check: CheckKind,
    },
}

/// A failure to understand the request, as opposed to a failed check.
struct Usage(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<bool, Usage> {
    match &cli.command {
        Command::Reduce { expr, context } => reduce(cli.format, expr, context),
        Command::Verify { suite } => verify(cli, suite),
        Command::Table { name } => {
            if !TABLES.contains(&name.as_str()) {
                return Err(anyhow!("unknown table `{name}` (expected one of {})", TABLES.join(", ")).into());
            }
            let text = table(name)?;
            match cli.format {
                Format::Text => print!("{text}"),
                Format::Json => println!("{}", json!({ "table": name, "text": text })),
            }
            Ok(true)
        }
        Command::Connection { mu, rho, check } => connection(cli.format, mu, rho, *check),
    }
}

fn parse_in(input: &str, ctx: &Context) -> Result<Value> {
    let e = parse_expr(input, ctx).map_err(|e| anyhow!("{}", e.annotate(input)))?;
    ctx.eval(&e)
}

fn reduce(format: Format, input: &str, context: &str) -> Result<bool, Usage> {
    let ctx = Context::named(context)?;
    let value = parse_in(input, &ctx)?;
    match format {
        Format::Text => println!("{value}"),
        Format::Json => println!(
            "{}",
            json!({ "context": context, "input": input, "kind": value.kind(), "normal_form": value.to_string() })
        ),
    }
    Ok(true)
}

fn verify(cli: &Cli, suite: &str) -> Result<bool, Usage> {
    if !SUITES.contains(&suite) {
        return Err(anyhow!("unknown suite `{suite}` (expected one of {})", SUITES.join(", ")).into());
    }
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    let start = Instant::now();
    let report = run_suite(suite, &Config { seed: cli.seed, exec })?;
    match cli.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    eprintln!("wall time: {:.3}s", start.elapsed().as_secs_f64());
    Ok(report.all_ok())
}

fn scalar_arg(name: &str, input: &str) -> Result<Scalar> {
    match parse_in(input, &Context::named("plane")?)? {
        Value::Scalar(c) => Ok(c),
        other => bail!("--{name} must be a scalar, got the {} {other}", other.kind()),
    }
}

fn connection(format: Format, mu: &str, rho: &str, check: CheckKind) -> Result<bool, Usage> {
    let (mu, rho) = (scalar_arg("mu", mu)?, scalar_arg("rho", rho)?);
    let conn = Connection::plane(&mu, &rho)?;
    let calc = conn.calculus().clone();
    let names = ["xi", "eta"];
    let mut rows: Vec<(String, String, bool)> = Vec::new();
    match check {
        CheckKind::Torsion => {
            for (a, n) in names.iter().enumerate() {
                let t = conn.torsion(&Form::cogen(&calc, a))?;
                rows.push((format!("Theta({n})"), t.to_string(), t.is_zero()));
            }
        }
        CheckKind::Curvature => {
            let expected = omega_expected(&mu)?;
            for (a, n) in names.iter().enumerate() {
                let r = conn.curvature(&Form::cogen(&calc, a))?;
                let defect = r.try_add(&expected[a])?;
                rows.push((format!("pi12 D^2 {n} + Omega"), defect.to_string(), defect.is_zero()));
            }
        }
        CheckKind::Compat => {
            for (key, f) in BilinearForm::lambda(&calc).compat_defects(&conn)? {
                let label = format!("(1 (x) Lambda) D({} (x) {})", names[key[0]], names[key[1]]);
                rows.push((label, f.to_string(), f.is_zero()));
            }
        }
    }
    let ok = rows.iter().all(|r| r.2);
    let check_name = match check {
        CheckKind::Torsion => "torsion",
        CheckKind::Curvature => "curvature",
        CheckKind::Compat => "compat",
    };
    match format {
        Format::Text => {
            println!("connection mu={mu} rho={rho} check={check_name}");
            for (label, value, _) in &rows {
                println!("  {label} = {value}");
            }
            println!("{}", if ok { "PASS" } else { "FAIL" });
        }
        Format::Json => {
            let values: Vec<_> = rows.iter().map(|(l, v, z)| json!({ "label": l, "value": v, "zero": z })).collect();
            println!(
                "{}",
                json!({ "mu": mu.to_string(), "rho": rho.to_string(), "check": check_name, "values": values, "pass": ok })
            );
        }
    }
    Ok(ok)
}
