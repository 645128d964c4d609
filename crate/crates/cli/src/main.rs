//! `dyson`: command-line front end for dyson-core.

mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use dyson_core::dse::{
    check_coideal, check_core_theorem, check_dead_equivalence, check_fdb, check_foissy_interpretation,
    core_pushforward, equation_preset, green_function, paired_equation, solve_bk, solve_foissy, BKEquation,
    Equation, FoissyEquation, FoissyF, FoissyKind,
};
use dyson_core::functor::{enumerate_bigraded, enumerate_ptrees, fixpoint_check, preset, FunctorSpec};
use dyson_core::hopf::{check_coassoc_ck, check_coassoc_op, check_cocycle_ck, check_cocycle_op};
use dyson_core::report::CheckReport;
use dyson_core::trees::Grading;

const ORDER_CEILING: usize = 12;

#[derive(Parser)]
#[command(name = "dyson", version, about = "Tree enumeration, bialgebra checks and Dyson-Schwinger solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a BK equation X = 1 + Σ wₘ α^m B₊(X^{m+1}).
    SolveBk(SolveArgs),
    /// Solve a Foissy equation X = B₊(f(X)).
    SolveFoissy(SolveArgs),
    /// List the P-trees of a functor up to a grade bound.
    Enumerate(EnumerateArgs),
    /// The Green function Σ T/|Aut T| graded by leaves.
    Green(SpecArgs),
    /// Push the Green function forward to core trees.
    Core(SpecArgs),
    /// Run a mechanical identity check.
    Check(CheckArgs),
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Raise the safety ceiling on --order and --bound.
    #[arg(long, value_name = "N")]
    max_order_override: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum GradeArg {
    Leaves,
    Nodes,
    Operadic,
}

impl From<GradeArg> for Grading {
    fn from(g: GradeArg) -> Self {
        match g {
            GradeArg::Leaves => Grading::Leaves,
            GradeArg::Nodes => Grading::Nodes,
            GradeArg::Operadic => Grading::Operadic,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    /// Equation file.
    #[arg(long, value_name = "PATH", conflicts_with = "preset", required_unless_present = "preset")]
    eq: Option<PathBuf>,
    /// Bundled equation.
    #[arg(long, value_name = "NAME")]
    preset: Option<String>,
    /// Highest grade to solve for; defaults to the equation's own order.
    #[arg(long, value_name = "N")]
    order: Option<usize>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct SpecSource {
    /// Functor spec file.
    #[arg(long, value_name = "PATH", conflicts_with = "preset", required_unless_present = "preset")]
    spec: Option<PathBuf>,
    /// Bundled functor spec.
    #[arg(long, value_name = "NAME")]
    preset: Option<String>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    source: SpecSource,
    #[arg(long, value_enum, default_value_t = GradeArg::Leaves)]
    grade: GradeArg,
    #[arg(long, value_name = "N", default_value_t = 6)]
    bound: usize,
    /// Print only the number of trees in each grade.
    #[arg(long)]
    counts: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct SpecArgs {
    #[command(flatten)]
    source: SpecSource,
    #[arg(long, value_name = "N", default_value_t = 4)]
    order: usize,
    #[command(flatten)]
    out: Output,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Fdb,
    Fixpoint,
    Coassoc,
    Cocycle,
    CoreTheorem,
    Dead,
    Coideal,
    FoissyInterp,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(value_enum)]
    kind: CheckKind,
    /// Functor spec file.
    #[arg(long, value_name = "PATH", conflicts_with = "preset")]
    spec: Option<PathBuf>,
    /// Bundled functor spec; for foissy-interp, the equation (exp or geometric).
    #[arg(long, value_name = "NAME")]
    preset: Option<String>,
    /// Equation file or bundled equation name, for core-theorem.
    #[arg(long, value_name = "PATH")]
    eq: Option<String>,
    /// Check the Connes-Kreimer algebra instead of a functor (coassoc, cocycle).
    #[arg(long, conflicts_with_all = ["spec", "preset"])]
    ck: bool,
    #[arg(long, value_name = "N", default_value_t = 4)]
    order: usize,
    #[command(flatten)]
    out: Output,
}

/// What a command produced: its rendering and whether a check failed.
struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, passed: true }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: Command) -> Result<Outcome, String> {
    match cmd {
        Command::SolveBk(a) => {
            let eq = load_equation(a.eq.as_deref(), a.preset.as_deref())?;
            let Equation::Bk(mut eq) = eq else {
                return Err("solve-bk needs a BK equation".into());
            };
            eq.order = ceiling(a.order.unwrap_or(eq.order), &a.out)?;
            let c = solve_bk(&eq);
            Ok(Outcome::ok(render::components("bk", &c, a.out.format)))
        }
        Command::SolveFoissy(a) => {
            let eq = load_equation(a.eq.as_deref(), a.preset.as_deref())?;
            let Equation::Foissy(mut eq) = eq else {
                return Err("solve-foissy needs a Foissy equation".into());
            };
            eq.order = ceiling(a.order.unwrap_or(eq.order), &a.out)?;
            let c = solve_foissy(&eq).map_err(|e| e.to_string())?;
            Ok(Outcome::ok(render::components("foissy", &c, a.out.format)))
        }
        Command::Enumerate(a) => {
            let spec = load_spec(&a.source)?;
            let bound = ceiling(a.bound, &a.out)?;
            let result = enumerate_ptrees(&spec, a.grade.into(), bound as i64, None).map_err(|e| e.to_string())?;
            Ok(Outcome::ok(render::enumeration(&result, a.counts, a.out.format)))
        }
        Command::Green(a) => {
            let spec = load_spec(&a.source)?;
            let g = green_function(&spec, ceiling(a.order, &a.out)?).map_err(|e| e.to_string())?;
            Ok(Outcome::ok(render::green(&g, a.out.format)))
        }
        Command::Core(a) => {
            let spec = load_spec(&a.source)?;
            let n = ceiling(a.order, &a.out)?;
            let c = core_pushforward(&green_function(&spec, n + 1).map_err(|e| e.to_string())?);
            Ok(Outcome::ok(render::components("core", &c, a.out.format)))
        }
        Command::Check(a) => {
            let report = run_check(&a)?;
            let text = match a.out.format {
                Format::Text => format!("{report}\n"),
                Format::Json => render::json_doc(&json!(report)),
            };
            Ok(Outcome {
                text,
                passed: report.passed,
            })
        }
    }
}

fn run_check(a: &CheckArgs) -> Result<CheckReport, String> {
    let n = ceiling(a.order, &a.out)?;
    let spec = || -> Result<FunctorSpec, String> {
        if a.spec.is_none() && a.preset.is_none() {
            return Err("this check needs --spec or --preset".into());
        }
        load_spec(&SpecSource {
            spec: a.spec.clone(),
            preset: a.preset.clone(),
        })
    };
    let err = |e: &dyn std::fmt::Display| e.to_string();
    match a.kind {
        CheckKind::Fdb => check_fdb(&spec()?, n).map_err(|e| err(&e)),
        CheckKind::Fixpoint => fixpoint_check(&spec()?, n).map_err(|e| err(&e)),
        CheckKind::Dead => check_dead_equivalence(&spec()?, n).map_err(|e| err(&e)),
        CheckKind::Coideal => Ok(check_coideal(&spec()?, n)),
        CheckKind::Coassoc if a.ck => Ok(check_coassoc_ck(n)),
        CheckKind::Cocycle if a.ck => Ok(check_cocycle_ck(n)),
        CheckKind::Coassoc => {
            let trees: Vec<_> = enumerate_bigraded(&spec()?, n, n).into_iter().map(|(t, _, _)| t).collect();
            let mut report = check_coassoc_op(&trees);
            report.note(format!("trees with at most {n} nodes and {n} leaves"));
            Ok(report)
        }
        CheckKind::Cocycle => {
            let spec = spec()?;
            let pool: Vec<_> = enumerate_bigraded(&spec, n, n).into_iter().map(|(t, _, _)| t).collect();
            let mut report = check_cocycle_op(&spec.instantiate_ops(n), &pool, n, n);
            report.note(format!("fillings with at most {n} nodes and {n} leaves"));
            Ok(report)
        }
        CheckKind::CoreTheorem => {
            let s = spec()?;
            let eq = match &a.eq {
                Some(e) => match load_equation_arg(e)? {
                    Equation::Bk(eq) => eq,
                    Equation::Foissy(_) => return Err("core-theorem needs a BK equation".into()),
                },
                None => a
                    .preset
                    .as_deref()
                    .and_then(paired_equation)
                    .ok_or("no BK equation is paired with this spec; pass --eq")?,
            };
            check_core_theorem(&s, &BKEquation { order: n, ..eq }, n).map_err(|e| err(&e))
        }
        CheckKind::FoissyInterp => {
            let eq = match (&a.eq, &a.preset) {
                (Some(e), _) => load_equation_arg(e)?,
                (None, Some(p)) => equation_preset(p).map_err(|e| err(&e))?,
                (None, None) => return Err("foissy-interp needs --preset exp|geometric or --eq".into()),
            };
            let kind = match eq {
                Equation::Foissy(FoissyEquation { f: FoissyF::Exp, .. }) => FoissyKind::Exp,
                Equation::Foissy(FoissyEquation {
                    f: FoissyF::Geometric, ..
                }) => FoissyKind::Geometric,
                _ => return Err("foissy-interp covers the exp and geometric equations only".into()),
            };
            Ok(check_foissy_interpretation(kind, n))
        }
    }
}

fn ceiling(order: usize, out: &Output) -> Result<usize, String> {
    let max = out.max_order_override.unwrap_or(ORDER_CEILING);
    if order > max {
        return Err(format!(
            "order {order} is above the safety ceiling {max}; pass --max-order-override to raise it"
        ));
    }
    Ok(order)
}

fn load_spec(source: &SpecSource) -> Result<FunctorSpec, String> {
    match (&source.spec, &source.preset) {
        (Some(path), _) => FunctorSpec::load(path).map_err(|e| e.to_string()),
        (None, Some(name)) => preset(name).map_err(|e| e.to_string()),
        (None, None) => Err("pass --spec or --preset".into()),
    }
}

fn load_equation(path: Option<&Path>, name: Option<&str>) -> Result<Equation, String> {
    match (path, name) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            Equation::from_json(&text).map_err(|e| e.to_string())
        }
        (None, Some(name)) => match equation_preset(name) {
            Ok(eq) => Ok(eq),
            Err(e) => paired_equation(name).map(Equation::Bk).ok_or_else(|| e.to_string()),
        },
        (None, None) => Err("pass --eq or --preset".into()),
    }
}

/// `--eq` on `check` takes a file, or failing that a bundled equation name.
fn load_equation_arg(arg: &str) -> Result<Equation, String> {
    let path = Path::new(arg);
    if path.exists() {
        load_equation(Some(path), None)
    } else {
        load_equation(None, Some(arg))
    }
}
