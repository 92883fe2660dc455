//! `spinrot`: conversions between SU(2), SO(3) and Bloch-sphere data, a
//! rotation DSL evaluator, and the randomized identity checker.
//!
//! Exit codes: 0 success, 2 bad input or parse error, 3 domain error,
//! 4 identity check failure.

mod input;
mod text;

use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use spinrot::bloch::{eig_down, eig_up, overlap_prob, QubitState};
use spinrot::cover::{decompose_to_reflections, ReflectionPair};
use spinrot::script::{self, ScriptError};
use spinrot::so3::So3Rot;
use spinrot::verify::{run_identity_suite, CHECKS};
use spinrot::{su2, ApproxEq, AxisAngle, Error, Su2Op, Tolerance, UnitVec3, Vec3};

use input::{operator_from_str, operators_from_str, parse_vec3, Operator};

#[derive(Parser)]
#[command(
    name = "spinrot",
    version,
    about = "Spin-1/2 rotations: SU(2), SO(3) and the Bloch sphere"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Comparison tolerance; also the residual bound for `check`.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol: f64,
    /// Seed for `check`.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Samples per identity for `check`.
    #[arg(long, global = true, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Su2,
    So3,
    Axisangle,
    Bloch,
}

#[derive(clap::Args)]
struct AxisAngleArgs {
    /// Rotation axis `x,y,z` (normalized); the operator is read from stdin
    /// when omitted.
    #[arg(long, allow_hyphen_values = true, requires = "theta")]
    axis: Option<String>,
    /// Rotation angle in radians.
    #[arg(long, allow_hyphen_values = true, requires = "axis")]
    theta: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Convert an operator to another representation.
    Convert {
        #[command(flatten)]
        op: AxisAngleArgs,
        #[arg(long, value_enum)]
        to: Target,
    },
    /// Matrix product of operators, leftmost first (the rightmost acts first).
    Compose {
        /// JSON operators; a JSON array is read from stdin when none are given.
        operators: Vec<String>,
    },
    /// Write an operator as a product of two axial symmetries.
    Decompose {
        #[command(flatten)]
        op: AxisAngleArgs,
    },
    /// Eigenvectors of n⋄σ.
    Eigvec {
        #[arg(long, allow_hyphen_values = true)]
        axis: String,
    },
    /// Probability |⟨↑_k|↑_n⟩|².
    Prob {
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long, allow_hyphen_values = true)]
        n: String,
    },
    /// Evaluate a rotation expression, e.g. "RX(pi/2) * R([1,1,0], pi/3)".
    Eval { script: String },
    /// Run the randomized identity suite.
    Check,
}

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Script { text: String, err: ScriptError },
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Script {
                err: ScriptError::Eval(_),
                ..
            } => 3,
            Failure::Script { .. } => 2,
            Failure::Domain(_) => 3,
        }
    }

    fn render(&self) -> String {
        match self {
            Failure::Input(m) => format!("error: {m}"),
            Failure::Domain(e) => format!("error: {e}"),
            Failure::Script { text, err } => match err.pos() {
                Some(pos) => {
                    let caret = text.get(..pos).map_or(pos, |p| p.chars().count());
                    format!("error: {err}\n  {text}\n  {}^", " ".repeat(caret))
                }
                None => format!("error: {err}"),
            },
        }
    }
}

struct Ctx {
    format: Format,
    tol: Tolerance,
}

impl Ctx {
    fn emit<S: Serialize>(&self, value: &S, text: impl FnOnce() -> String) -> String {
        match self.format {
            Format::Json => serde_json::to_string_pretty(value).expect("output is serializable"),
            Format::Text => text(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, code)) => {
            let mut stdout = io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = writeln!(stdout, "{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("{}", f.render());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: Cli) -> Result<(String, u8), Failure> {
    if !(cli.tol.is_finite() && cli.tol > 0.0 && cli.tol < 1.0) {
        return Err(Failure::Input(format!(
            "--tol must be in (0, 1), got {}",
            cli.tol
        )));
    }
    let default = Tolerance::default();
    let tol = Tolerance::new(default.eps_unit.max(cli.tol), cli.tol)
        .map_err(|e| Failure::Input(e.to_string()))?;
    let ctx = Ctx {
        format: cli.format,
        tol,
    };
    let out = match cli.command {
        Command::Convert { op, to } => convert(&ctx, read_operator(&op, &ctx.tol)?, to),
        Command::Compose { operators } => compose(&ctx, operators)?,
        Command::Decompose { op } => decompose(&ctx, read_operator(&op, &ctx.tol)?)?,
        Command::Eigvec { axis } => eigvec(&ctx, &axis)?,
        Command::Prob { k, n } => prob(&ctx, &k, &n)?,
        Command::Eval { script } => eval(&ctx, script)?,
        Command::Check => return Ok(check(&ctx, cli.samples, cli.seed, cli.tol)),
    };
    Ok((out, 0))
}

fn read_stdin() -> Result<String, Failure> {
    let mut s = String::new();
    io::stdin()
        .read_to_string(&mut s)
        .map_err(|e| Failure::Input(format!("reading stdin: {e}")))?;
    Ok(s)
}

fn vector_arg(flag: &str, s: &str) -> Result<Vec3, Failure> {
    parse_vec3(s).map_err(|e| Failure::Input(format!("--{flag}: {e}")))
}

fn unit_arg(flag: &str, s: &str, tol: &Tolerance) -> Result<UnitVec3, Failure> {
    let v = vector_arg(flag, s)?;
    if !v.is_finite() {
        return Err(Error::NonFinite("axis").into());
    }
    Ok(UnitVec3::normalize(v, tol)?)
}

fn read_operator(args: &AxisAngleArgs, tol: &Tolerance) -> Result<Operator, Failure> {
    match (&args.axis, args.theta) {
        (Some(axis), Some(theta)) => {
            let n = unit_arg("axis", axis, tol)?;
            if !theta.is_finite() {
                return Err(Error::NonFinite("theta").into());
            }
            Ok(Operator::Su2(su2::from_axis_angle(n, theta)))
        }
        _ => operator_from_str(&read_stdin()?, tol),
    }
}

#[derive(Serialize)]
struct BlochOut {
    image: UnitVec3,
    state: QubitState<f64>,
}

fn convert(ctx: &Ctx, op: Operator, to: Target) -> String {
    match to {
        Target::Su2 => {
            let v = op.su2(&ctx.tol);
            ctx.emit(&v, || text::su2(&v))
        }
        Target::So3 => {
            let r = op.so3();
            ctx.emit(&r, || text::so3(&r))
        }
        Target::Axisangle => {
            let aa = match op {
                Operator::Su2(v) => v.to_axis_angle(&ctx.tol),
                Operator::So3(r) => r.to_axis_angle(&ctx.tol),
            };
            ctx.emit(&aa, || text::axis_angle(&aa))
        }
        Target::Bloch => {
            let image = UnitVec3::normalize(op.so3().apply(Vec3::new(0.0, 0.0, 1.0)), &ctx.tol)
                .expect("rotations preserve length");
            let out = BlochOut {
                image,
                state: eig_up(image, &ctx.tol),
            };
            ctx.emit(&out, || {
                format!(
                    "image: {}\nstate: {}",
                    text::vec3(image.vec()),
                    text::state(&out.state)
                )
            })
        }
    }
}

#[derive(Serialize)]
struct OperatorOut {
    su2: Su2Op,
    so3: So3Rot<f64>,
    axis_angle: AxisAngle,
}

impl OperatorOut {
    fn new(su2: Su2Op, tol: &Tolerance) -> Self {
        Self {
            so3: spinrot::cover::project(&su2),
            axis_angle: su2.to_axis_angle(tol),
            su2,
        }
    }

    fn text(&self) -> String {
        format!(
            "{}\n{}\n{}",
            text::su2(&self.su2),
            text::so3(&self.so3),
            text::axis_angle(&self.axis_angle)
        )
    }
}

fn compose(ctx: &Ctx, operators: Vec<String>) -> Result<String, Failure> {
    let ops = if operators.is_empty() {
        operators_from_str(&read_stdin()?, &ctx.tol)?
    } else {
        operators
            .iter()
            .map(|s| operator_from_str(s, &ctx.tol))
            .collect::<Result<_, _>>()?
    };
    let product = ops
        .iter()
        .map(|op| op.su2(&ctx.tol))
        .reduce(|acc, v| acc.mul_with(&v, &ctx.tol))
        .expect("at least one operator");
    let out = OperatorOut::new(product, &ctx.tol);
    Ok(ctx.emit(&out, || out.text()))
}

#[derive(Serialize)]
struct DecomposeOut {
    pair: ReflectionPair<f64>,
    sign: i32,
    separation: f64,
    residual: f64,
}

fn decompose(ctx: &Ctx, op: Operator) -> Result<String, Failure> {
    let v = op.su2(&ctx.tol);
    let d = decompose_to_reflections(&v, &ctx.tol)?;
    let target = if d.sign < 0 { -v } else { v };
    let out = DecomposeOut {
        pair: d.pair,
        sign: d.sign,
        separation: d
            .pair
            .first
            .dot(d.pair.second.vec())
            .clamp(-1.0, 1.0)
            .acos(),
        residual: d.pair.compose().max_abs_diff(&target),
    };
    Ok(ctx.emit(&out, || {
        format!(
            "first:      {}\nsecond:     {}\nsign:       {}\nseparation: {}\nresidual:   {}",
            text::vec3(out.pair.first.vec()),
            text::vec3(out.pair.second.vec()),
            out.sign,
            text::num(out.separation),
            text::num(out.residual),
        )
    }))
}

#[derive(Serialize)]
struct EigvecOut {
    axis: UnitVec3,
    up: QubitState<f64>,
    down: QubitState<f64>,
}

fn eigvec(ctx: &Ctx, axis: &str) -> Result<String, Failure> {
    let n = unit_arg("axis", axis, &ctx.tol)?;
    let out = EigvecOut {
        axis: n,
        up: eig_up(n, &ctx.tol),
        down: eig_down(n, &ctx.tol),
    };
    Ok(ctx.emit(&out, || {
        format!(
            "axis: {}\nup:   {}\ndown: {}",
            text::vec3(n.vec()),
            text::state(&out.up),
            text::state(&out.down)
        )
    }))
}

#[derive(Serialize)]
struct ProbOut {
    k: UnitVec3,
    n: UnitVec3,
    probability: f64,
}

fn prob(ctx: &Ctx, k: &str, n: &str) -> Result<String, Failure> {
    let k = unit_arg("k", k, &ctx.tol)?;
    let n = unit_arg("n", n, &ctx.tol)?;
    let out = ProbOut {
        k,
        n,
        probability: overlap_prob(k, n, &ctx.tol),
    };
    Ok(ctx.emit(&out, || text::num(out.probability)))
}

fn eval(ctx: &Ctx, text_in: String) -> Result<String, Failure> {
    let r = script::run(&text_in, &ctx.tol).map_err(|err| Failure::Script {
        text: text_in.clone(),
        err,
    })?;
    Ok(ctx.emit(&r, || {
        format!(
            "script: {}\n{}\n{}\n{}\nbloch_image: {}",
            r.script,
            text::su2(&r.su2),
            text::so3(&r.so3),
            text::axis_angle(&r.axis_angle),
            text::vec3(r.bloch_image.vec())
        )
    }))
}

fn check(ctx: &Ctx, samples: u64, seed: u64, tol: f64) -> (String, u8) {
    let r = run_identity_suite(samples, seed, tol);
    let out = ctx.emit(&r, || {
        let mut lines: Vec<String> = r
            .reports
            .iter()
            .zip(CHECKS)
            .map(|(nr, c)| {
                let status = if nr.report.passed() { "PASS" } else { "FAIL" };
                format!(
                    "{status}  {:<30} max residual {:<12} failures {}/{}  {}",
                    nr.name,
                    text::num(nr.report.max_residual),
                    nr.report.failures,
                    nr.report.samples,
                    c.statement
                )
            })
            .collect();
        lines.push(format!(
            "{} ({} checks, {} samples each, seed {}, tol {:e}, {:.2}s)",
            if r.pass {
                "all checks passed"
            } else {
                "CHECK FAILED"
            },
            r.reports.len(),
            samples,
            seed,
            tol,
            r.elapsed_s
        ));
        lines.join("\n")
    });
    (out, if r.pass { 0 } else { 4 })
}
