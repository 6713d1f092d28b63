//! The `qharm` command line.
//!
//! Exit status: 0 on success, 1 when a verification check fails, 2 on usage,
//! parse or domain errors. Results go to stdout as JSON unless `--out` or
//! `--csv` redirect them.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::classes::{
    coeff_functional, convex_combination, growth_bounds, member_t_iff, satisfies_sufficient,
    sharpness_witness, ClassParams, CoanalyticSign, ExtremeKind, ExtremePoint,
};
use crate::error::Error;
use crate::qcore::{q_integer, q_integer_pow, QParam};
use crate::salagean::{
    class_transform, class_transform_at, d_q_m_harmonic, q_diff, OperatorParams, TransformVariant,
};
use crate::series::{HarmonicFunction, Polynomial, DEFAULT_TRUNC};
use crate::verify::{
    counterexample_scan_with, default_r_sequence, growth_bound_check_with,
    injectivity_sample_check_with, margin_table, necessity_probe, re_condition_margin_with,
    sense_preserving_margin_with, CheckConfig, DiskGrid, ScanConfig, TailModel, DEFAULT_TOLERANCE,
};

/// Environment variable overriding the default check tolerance.
pub const TOLERANCE_ENV: &str = "QHARM_TOL";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "qharm",
    version,
    about = "Harmonic univalent functions under the Salagean q-differential operator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// q-integer [u]_q, or [u]_q^m with --m
    Qint {
        #[arg(long)]
        u: usize,
        #[arg(long, value_parser = parse_q)]
        q: f64,
        #[arg(long)]
        m: Option<u32>,
    },
    /// q-difference of both parts of a function
    Dq {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_parser = parse_q)]
        q: f64,
    },
    /// Salagean operator D_q^m applied to a harmonic function
    Salagean {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        op: OpArgs,
    },
    /// (D_q^m h + D_q^m g)/z as a series, or its value at --at
    Transform {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        op: OpArgs,
        #[arg(long, value_enum, default_value = "literal")]
        variant: VariantArg,
        /// Evaluation point `re,im`
        #[arg(long, value_parser = parse_complex)]
        at: Option<Complex64>,
    },
    /// Coefficient functional and membership criteria
    Check {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        class: ClassArgs,
    },
    /// Extreme point h_u or g_u
    Extremal {
        #[arg(long)]
        u: usize,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_enum, default_value = "printed")]
        sign: SignArg,
        #[arg(long, default_value_t = DEFAULT_TRUNC)]
        trunc: usize,
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convex combination of extreme points, `--point analytic:2=0.4 --point coanalytic:1:t-form=0.6`
    Combine {
        #[arg(long = "point", required = true, value_parser = parse_point)]
        points: Vec<(ExtremePoint, f64)>,
        #[arg(long, default_value_t = DEFAULT_TRUNC)]
        trunc: usize,
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sharpness witness, `--x 2:0.5 --y 1:0.3,0.4` (u:re[,im])
    Witness {
        #[arg(long = "x", value_parser = parse_indexed)]
        x: Vec<(usize, Complex64)>,
        #[arg(long = "y", value_parser = parse_indexed)]
        y: Vec<(usize, Complex64)>,
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Growth bounds at radius r
    Growth {
        #[arg(long)]
        b1: f64,
        #[arg(long)]
        r: f64,
        #[command(flatten)]
        class: ClassArgs,
    },
    /// Disc-sampled checks on a function
    Verify {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        class: ClassArgs,
        /// `default` or `r1,r2,...:angles[:noaxis]`
        #[arg(long, default_value = "default")]
        grid: String,
        #[arg(long, default_value_t = 4096)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "literal")]
        variant: VariantArg,
        /// Write per-point margins as CSV
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Positive-axis necessity probe for a T-form function
    Probe {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        class: ClassArgs,
        /// Comma-separated increasing radii
        #[arg(long, value_delimiter = ',')]
        r: Vec<f64>,
    },
    /// Seeded randomized scan for functions that pass sampled checks while violating the coefficient condition
    Scan {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct Io {
    /// Series JSON input
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OpArgs {
    #[arg(long)]
    m: u32,
    #[arg(long, value_parser = parse_q)]
    q: f64,
    /// Use weights u^m instead of [u]_q^m
    #[arg(long)]
    classical: bool,
}

#[derive(Debug, Args)]
struct ClassArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    alpha: f64,
    #[arg(long, value_parser = parse_q)]
    q: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantArg {
    Literal,
    Signed,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Analytic,
    Coanalytic,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SignArg {
    Printed,
    TForm,
}

impl From<VariantArg> for TransformVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Literal => TransformVariant::Literal,
            VariantArg::Signed => TransformVariant::HarmonicSigned,
        }
    }
}

impl From<KindArg> for ExtremeKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Analytic => ExtremeKind::Analytic,
            KindArg::Coanalytic => ExtremeKind::Coanalytic,
        }
    }
}

impl From<SignArg> for CoanalyticSign {
    fn from(s: SignArg) -> Self {
        match s {
            SignArg::Printed => CoanalyticSign::AsPrinted,
            SignArg::TForm => CoanalyticSign::TForm,
        }
    }
}

fn parse_q(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    QParam::new(v).map(QParam::get).map_err(|e| e.to_string())
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let mut it = s.split(',');
    let re = it.next().unwrap_or_default().trim();
    let re: f64 = re.parse().map_err(|_| format!("bad real part `{re}`"))?;
    let im = match it.next() {
        Some(t) => t
            .trim()
            .parse()
            .map_err(|_| format!("bad imaginary part `{t}`"))?,
        None => 0.0,
    };
    if it.next().is_some() {
        return Err(format!("`{s}`: expected re[,im]"));
    }
    Ok(Complex64::new(re, im))
}

fn parse_indexed(s: &str) -> Result<(usize, Complex64), String> {
    let (u, c) = s
        .split_once(':')
        .ok_or_else(|| format!("`{s}`: expected u:re[,im]"))?;
    let u: usize = u.trim().parse().map_err(|_| format!("bad index `{u}`"))?;
    Ok((u, parse_complex(c)?))
}

fn parse_point(s: &str) -> Result<(ExtremePoint, f64), String> {
    let (spec, w) = s
        .split_once('=')
        .ok_or_else(|| format!("`{s}`: expected kind:u[:sign]=weight"))?;
    let w: f64 = w.trim().parse().map_err(|_| format!("bad weight `{w}`"))?;
    let parts: Vec<&str> = spec.split(':').collect();
    let (kind, u, sign) = match parts.as_slice() {
        [k, u] => (*k, *u, "printed"),
        [k, u, s] => (*k, *u, *s),
        _ => return Err(format!("`{s}`: expected kind:u[:sign]=weight")),
    };
    let u: usize = u.trim().parse().map_err(|_| format!("bad index `{u}`"))?;
    let sign = match sign {
        "printed" => CoanalyticSign::AsPrinted,
        "t-form" => CoanalyticSign::TForm,
        other => return Err(format!("unknown sign `{other}`")),
    };
    let point = match kind {
        "analytic" => ExtremePoint::analytic(u),
        "coanalytic" => ExtremePoint::coanalytic(u, sign),
        other => return Err(format!("unknown kind `{other}`")),
    };
    Ok((point, w))
}

/// Failure inside a subcommand, mapped to an exit status.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<i32, Failure>;

fn q_of(q: f64) -> QParam {
    QParam::new(q).expect("validated by the argument parser")
}

impl ClassArgs {
    fn params(&self) -> Result<ClassParams, Error> {
        ClassParams::new(self.m, self.alpha, q_of(self.q))
    }
}

impl OpArgs {
    fn params(&self) -> OperatorParams {
        OperatorParams {
            m: self.m,
            q: q_of(self.q),
            classical: self.classical,
        }
    }
}

fn read_function(path: &Path) -> Result<HarmonicFunction, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    HarmonicFunction::from_json_str(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn poly_json(p: &Polynomial) -> Value {
    json!(p.coeffs().iter().map(|c| [c.re, c.im]).collect::<Vec<_>>())
}

fn emit(value: &Value, out: Option<&Path>, stdout: &mut dyn Write) -> Result<(), Failure> {
    let text = value.to_string();
    match out {
        Some(path) => fs::write(path, text + "\n")
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => writeln!(stdout, "{text}").map_err(|e| Failure::Io(e.to_string())),
    }
}

fn tolerance_from_env() -> Result<f64, String> {
    match std::env::var(TOLERANCE_ENV) {
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_TOLERANCE),
        Err(e) => Err(format!("{TOLERANCE_ENV}: {e}")),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(v) if v.is_finite() && v >= 0.0 => Ok(v),
            _ => Err(format!(
                "{TOLERANCE_ENV}=`{s}` is not a non-negative real number"
            )),
        },
    }
}

/// Runs with process stdout/stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
            } else {
                let _ = write!(stdout, "{text}");
            }
            return code;
        }
    };
    let tolerance = match tolerance_from_env() {
        Ok(t) => t,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    match dispatch(cli.command, tolerance, stdout) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Command, tolerance: f64, stdout: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Qint { u, q, m } => {
            let v = match m {
                Some(m) => q_integer_pow(u, q_of(q), m)?,
                None => q_integer(u, q_of(q))?,
            };
            writeln!(stdout, "{v}").map_err(|e| Failure::Io(e.to_string()))?;
            Ok(EXIT_OK)
        }
        Command::Dq { io, q } => {
            let f = read_function(&io.input)?;
            let v = json!({
                "h": poly_json(&q_diff(f.h(), q_of(q))),
                "g": poly_json(&q_diff(f.g(), q_of(q))),
            });
            emit(&v, io.out.as_deref(), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Salagean { io, op } => {
            let f = read_function(&io.input)?;
            let image = d_q_m_harmonic(&f, &op.params()).into_harmonic()?;
            emit(&image.to_json_value(), io.out.as_deref(), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Transform {
            io,
            op,
            variant,
            at,
        } => {
            let f = read_function(&io.input)?;
            let p = op.params();
            let variant = TransformVariant::from(variant);
            let v = match (at, variant) {
                (Some(z), _) => {
                    let w = class_transform_at(&f, &p, z, variant);
                    json!({ "at": [z.re, z.im], "value": [w.re, w.im], "inside_disc": z.norm() < 1.0 })
                }
                (None, TransformVariant::Literal) => {
                    json!({ "series": poly_json(&class_transform(&f, &p)) })
                }
                (None, TransformVariant::HarmonicSigned) => {
                    return Err(Failure::Usage(
                        "the signed variant is not a power series; pass --at".into(),
                    ))
                }
            };
            emit(&v, io.out.as_deref(), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Check { io, class } => {
            let f = read_function(&io.input)?;
            let p = class.params()?;
            let sufficient = satisfies_sufficient(&f, &p);
            let v = json!({
                "functional": coeff_functional(&f, &p),
                "sufficient": sufficient,
                "t_form": f.t_form(),
                "member_t_iff": member_t_iff(&f, &p).ok(),
            });
            emit(&v, io.out.as_deref(), stdout)?;
            Ok(if sufficient {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Command::Extremal {
            u,
            kind,
            sign,
            trunc,
            class,
            out,
        } => {
            let p = class.params()?;
            let point = ExtremePoint {
                u,
                kind: kind.into(),
                sign: sign.into(),
            };
            let f = point.build(&p, trunc.max(u))?;
            emit(&f.to_json_value(), out.as_deref(), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Combine {
            points,
            trunc,
            class,
            out,
        } => {
            let p = class.params()?;
            let f = convex_combination(&points, &p, trunc)?;
            emit(&f.to_json_value(), out.as_deref(), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Witness { x, y, class, out } => {
            let p = class.params()?;
            let x = dense(&x, 2)?;
            let y = dense(&y, 1)?;
            let f = sharpness_witness(&x, &y, &p)?;
            emit(&f.to_json_value(), out.as_deref(), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Growth { b1, r, class } => {
            let p = class.params()?;
            let b = growth_bounds(b1, r, &p)?;
            let v = json!({ "upper": b.upper, "lower": b.lower, "radius": b.radius });
            emit(&v, None, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            io,
            class,
            grid,
            pairs,
            seed,
            variant,
            csv,
        } => {
            let f = read_function(&io.input)?;
            let p = class.params()?;
            let grid = DiskGrid::parse(&grid)?;
            let cfg = CheckConfig {
                tolerance,
                tail: TailModel::Unknown,
                variant: variant.into(),
                seed,
            };
            let mut reports = vec![
                re_condition_margin_with(&f, &p, &grid, &cfg),
                sense_preserving_margin_with(&f, &grid, &cfg),
                injectivity_sample_check_with(&f, &grid, pairs, &cfg),
            ];
            if member_t_iff(&f, &p) == Ok(true) {
                let g = growth_bound_check_with(&f, &p, &grid, &cfg)?;
                reports.push(g.upper);
                reports.push(g.lower);
            }
            let passed = reports.iter().all(|r| r.passed);
            if let Some(path) = csv {
                let table = margin_table(&f, &p, &grid, &cfg);
                let file = fs::File::create(&path)
                    .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))?;
                table
                    .write_csv(file)
                    .map_err(|e| Failure::Io(e.to_string()))?;
            }
            let v = json!({
                "function": f.to_json_value(),
                "reports": reports,
                "passed": passed,
            });
            emit(&v, io.out.as_deref(), stdout)?;
            Ok(if passed { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        Command::Probe { io, class, r } => {
            let f = read_function(&io.input)?;
            let p = class.params()?;
            let seq = if r.is_empty() {
                default_r_sequence()
            } else {
                r
            };
            let rep = necessity_probe(&f, &p, &seq)?;
            let v = json!({
                "r": rep.r_values,
                "margins": rep.margins,
                "first_failure": rep.first_failure,
                "final_margin": rep.final_margin,
                "min_margin": rep.min_margin,
                "non_increasing": rep.non_increasing,
                "passed": rep.passed,
            });
            emit(&v, io.out.as_deref(), stdout)?;
            Ok(if rep.passed {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Command::Scan {
            class,
            trials,
            seed,
            out,
        } => {
            let p = class.params()?;
            if trials == 0 {
                return Err(Failure::Usage("--trials must be at least 1".into()));
            }
            let mut cfg = ScanConfig::new(trials, seed);
            cfg.checks.tolerance = tolerance;
            let rep = counterexample_scan_with(&p, &cfg);
            let v = serde_json::to_value(&rep).map_err(|e| Failure::Io(e.to_string()))?;
            emit(&v, out.as_deref(), stdout)?;
            Ok(EXIT_OK)
        }
    }
}

/// Dense weight vector starting at power `first` from sparse `u:value` pairs.
fn dense(terms: &[(usize, Complex64)], first: usize) -> Result<Vec<Complex64>, Failure> {
    let len = terms
        .iter()
        .map(|(u, _)| u + 1)
        .max()
        .unwrap_or(first)
        .saturating_sub(first);
    let mut out = vec![Complex64::new(0.0, 0.0); len];
    for &(u, c) in terms {
        if u < first {
            return Err(Failure::Usage(format!("index {u} below {first}")));
        }
        out[u - first] += c;
    }
    Ok(out)
}
