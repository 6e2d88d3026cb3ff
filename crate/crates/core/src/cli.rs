//! Command-line front end.
//!
//! Exit codes: 0 success, 1 the checked condition fails or the bound does not
//! apply, 2 usage or input error, 3 a proved statement failed an exact check.

use std::io::Read;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::families::{gen_f, gen_g_with, gen_h, verify_substitution_identity};
use crate::geometry::{
    convex_hull_vertices, max_convex_chain_with, minkowski_sum, parse_point_csv, to_point_csv, upper_envelope,
    LogPoint, PointJson, PointSet, Tau, VertexReport,
};
use crate::limits::Limits;
use crate::oracle::{search_extremal_kurtz, ExperimentConfig};
use crate::polynomials::{
    check_kurtz, check_newton, check_strong_with, parse_terms, sturm_distinct_real_roots, Coefficient, Polynomial,
};
use crate::selftest::{run_all, DEFAULT_SEED};
use crate::sps::{
    bounds_report, build_lifting_with, parse_sps_json, sparse_factor_witness_with, split_products_with, to_sps_json,
    verify_lifting, verify_theorem2_with, SpsExpression,
};

#[derive(Parser, Debug)]
#[command(name = "logsps", version, about = "Exact checks for log-concave sums of products of sparse polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Input file, `-` for standard input.
    path: String,
}

#[derive(Args, Debug)]
struct TauArg {
    /// Rational `tau > 1`, overriding any value in the input.
    #[arg(long)]
    tau: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Newton's inequalities on a polynomial file.
    CheckNewton(Input),
    /// `a_i^2 > 4 a_(i-1) a_(i+1)` with positive `a_1..a_d`.
    CheckKurtz(Input),
    /// `a_i^2 > d^(2d) a_(i-1) a_(i+1)` with positive `a_1..a_d`.
    CheckStrong(Input),
    /// Count distinct real roots; signed coefficients are allowed.
    Sturm(Input),
    /// Expand an SPS file into the polynomial text format.
    Expand(Input),
    /// k, m, t and d of an SPS file.
    Params(Input),
    /// Check `d <= k m t` when the strong condition holds.
    VerifyThm2(Input),
    /// Extract a factor with at least `d/(km)` terms.
    Witness(Input),
    /// Build the lifting artifacts of a two-factor SPS file.
    Lift {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        tau: TauArg,
    },
    /// Build and verify the lifting artifacts.
    VerifyLift {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        tau: TauArg,
    },
    /// Regroup every product into two expanded halves.
    Split(Input),
    /// Trivial, kmt and shape bounds next to the actual degree.
    Bounds(Input),
    /// Convex hull vertices of a point CSV.
    Hull {
        #[command(flatten)]
        input: Input,
        /// Only the upper envelope.
        #[arg(long)]
        upper: bool,
        #[command(flatten)]
        tau: TauArg,
    },
    /// Minkowski sum of two point CSVs, as CSV.
    Minkowski {
        a: String,
        b: String,
    },
    /// Largest subset in strict convex position.
    Chain {
        #[command(flatten)]
        input: Input,
        /// Use the Minkowski sum of the input with this set.
        #[arg(long)]
        plus: Option<String>,
        #[command(flatten)]
        tau: TauArg,
        #[arg(long)]
        sequential: bool,
    },
    /// `g_{n,s}` in the polynomial text format.
    GenG {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: BigInt,
    },
    /// `f_n = g_{n, n 2^(n+1)}`.
    GenF {
        #[arg(long)]
        n: u32,
    },
    /// Monomials of the multilinear `h_n`.
    GenH {
        #[arg(long)]
        n: u32,
    },
    /// Substitute into `h_n` and compare with `f_n`.
    VerifyIdentity {
        #[arg(long)]
        n: u32,
    },
    /// Random search for Kurtz SPS expressions of large degree (JSON lines).
    Search {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        instances: usize,
        #[arg(long, default_value_t = 3)]
        k_max: usize,
        #[arg(long, default_value_t = 3)]
        m_max: usize,
        #[arg(long, default_value_t = 4)]
        t_max: usize,
        #[arg(long, default_value_t = 8)]
        exp_max: u64,
        #[arg(long)]
        sequential: bool,
    },
    /// Run every acceptance criterion.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        sequential: bool,
    },
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self::with_code(0, stdout)
    }

    fn with_code(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::FatalInconsistency(_) => 3,
        Error::PreconditionFailed(_) => 1,
        _ => 2,
    }
}

/// Parse `argv` (program name first) and run; standard input is read only for
/// `-` paths.
pub fn run<I, S>(argv: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match dispatch(cli.command, stdin) {
        Ok(out) => out,
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<String> {
    let mut text = String::new();
    if path == "-" {
        stdin.read_to_string(&mut text).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    }
    Ok(text)
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn parse_tau(s: &str) -> Result<BigRational> {
    s.trim().parse().map_err(|_| Error::InvalidTau(format!("cannot parse {s:?}")))
}

/// `--tau`, else the file's `tau`, else 4.
fn pick_tau(flag: &TauArg, from_file: Option<BigRational>, limits: &Limits) -> Result<Tau> {
    let tau = match &flag.tau {
        Some(s) => parse_tau(s)?,
        None => from_file.unwrap_or_else(|| BigRational::from_integer(4.into())),
    };
    Ok(Tau::new(tau)?.with_exponent_cap(limits.exponent_cap))
}

/// Exponent form `2^e` for every coefficient.
fn power_text(p: &Polynomial) -> String {
    p.coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| format!("{i} 2^{}\n", c.pow2()))
        .collect()
}

fn condition_outcome<T: Serialize>(report: &T, holds: bool) -> Outcome {
    Outcome::with_code(if holds { 0 } else { 1 }, to_json(report))
}

fn vertex_report(points: &[LogPoint], tau: &Tau) -> String {
    to_json(&VertexReport {
        size: points.len(),
        vertices: points.iter().map(|p| PointJson::new(p, tau)).collect(),
    })
}

fn exec_for(sequential: bool) -> Exec {
    if sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    }
}

fn dispatch(command: Command, stdin: &mut dyn Read) -> Result<Outcome> {
    let limits = Limits::from_env();
    let poly = |path: &str, stdin: &mut dyn Read| -> Result<Polynomial> {
        Polynomial::from_text(&read_input(path, stdin)?)
    };
    let sps = |path: &str, stdin: &mut dyn Read| -> Result<(SpsExpression, Option<BigRational>)> {
        parse_sps_json(&read_input(path, stdin)?)
    };
    Ok(match command {
        Command::CheckNewton(i) => {
            let r = check_newton(&poly(&i.path, stdin)?)?;
            let holds = r.holds_weak;
            condition_outcome(&r, holds)
        }
        Command::CheckKurtz(i) => {
            let r = check_kurtz(&poly(&i.path, stdin)?)?;
            let holds = r.holds;
            condition_outcome(&r, holds)
        }
        Command::CheckStrong(i) => {
            let r = check_strong_with(&poly(&i.path, stdin)?, &limits)?;
            let holds = r.holds;
            condition_outcome(&r, holds)
        }
        Command::Sturm(i) => {
            let terms = parse_terms(&read_input(&i.path, stdin)?)?;
            let degree = terms.iter().map(|(e, _)| *e).max().unwrap_or(0);
            if degree > limits.max_dense_degree {
                return Err(Error::ResourceLimit(format!("degree {degree} exceeds the dense cap")));
            }
            let mut coeffs = vec![Coefficient::zero(); degree + 1];
            for (e, c) in terms {
                coeffs[e] = c;
            }
            let roots = sturm_distinct_real_roots(&coeffs)?;
            Outcome::ok(to_json(&json!({ "degree": degree, "distinct_real_roots": roots })))
        }
        Command::Expand(i) => Outcome::ok(sps(&i.path, stdin)?.0.expand_with(&limits)?.to_text()),
        Command::Params(i) => {
            let e = sps(&i.path, stdin)?.0;
            let d = e.expand_with(&limits)?.degree();
            Outcome::ok(to_json(&json!({ "k": e.k(), "m": e.m(), "t": e.t(), "d": d })))
        }
        Command::VerifyThm2(i) => {
            let v = verify_theorem2_with(&sps(&i.path, stdin)?.0, &limits)?;
            let code = if v.applicable { 0 } else { 1 };
            Outcome::with_code(code, to_json(&v))
        }
        Command::Witness(i) => Outcome::ok(to_json(&sparse_factor_witness_with(&sps(&i.path, stdin)?.0, &limits)?)),
        Command::Lift { input, tau } => {
            let (e, file_tau) = sps(&input.path, stdin)?;
            let tau = pick_tau(&tau, file_tau, &limits)?;
            let a = build_lifting_with(&e, &tau, &limits)?;
            Outcome::ok(serde_json::to_string_pretty(&a.to_json()).expect("serializable") + "\n")
        }
        Command::VerifyLift { input, tau } => {
            let (e, file_tau) = sps(&input.path, stdin)?;
            let tau = pick_tau(&tau, file_tau, &limits)?;
            let a = build_lifting_with(&e, &tau, &limits)?;
            Outcome::ok(to_json(&verify_lifting(&a)?))
        }
        Command::Split(i) => {
            let (e, tau) = sps(&i.path, stdin)?;
            Outcome::ok(to_sps_json(&split_products_with(&e, &limits)?, tau.as_ref()) + "\n")
        }
        Command::Bounds(i) => Outcome::ok(to_json(&bounds_report(&sps(&i.path, stdin)?.0)?)),
        Command::Hull { input, upper, tau } => {
            let a = parse_point_csv(&read_input(&input.path, stdin)?)?;
            let tau = pick_tau(&tau, None, &limits)?;
            let vertices = if upper {
                upper_envelope(&a, &tau)?
            } else {
                convex_hull_vertices(&a, &tau)?
            };
            Outcome::ok(vertex_report(&vertices, &tau))
        }
        Command::Minkowski { a, b } => {
            let a = parse_point_csv(&read_input(&a, stdin)?)?;
            let b = parse_point_csv(&read_input(&b, stdin)?)?;
            Outcome::ok(to_point_csv(&minkowski_sum(&a, &b)))
        }
        Command::Chain {
            input,
            plus,
            tau,
            sequential,
        } => {
            let a = parse_point_csv(&read_input(&input.path, stdin)?)?;
            let tau = pick_tau(&tau, None, &limits)?;
            let exec = exec_for(sequential);
            match plus {
                None => {
                    let c = max_convex_chain_with(&a, &tau, limits.chain_cap, exec)?;
                    let pts: Vec<LogPoint> = c.witness.iter().cloned().collect();
                    Outcome::ok(vertex_report(&pts, &tau))
                }
                Some(b) => {
                    let b: PointSet = parse_point_csv(&read_input(&b, stdin)?)?;
                    let sum = minkowski_sum(&a, &b);
                    let c = max_convex_chain_with(&sum, &tau, limits.chain_cap, exec)?;
                    let (r, s) = (a.len() as f64, b.len() as f64);
                    Outcome::ok(to_json(&json!({
                        "size": c.size,
                        "r": a.len(),
                        "s": b.len(),
                        "shape_approx": (r * s).powf(2.0 / 3.0) + r + s,
                        "vertices": c.witness.iter().map(|p| PointJson::new(p, &tau)).collect::<Vec<_>>(),
                    })))
                }
            }
        }
        Command::GenG { n, s } => Outcome::ok(power_text(&gen_g_with(n, &s, &limits)?)),
        Command::GenF { n } => Outcome::ok(power_text(&gen_f(n)?)),
        Command::GenH { n } => Outcome::ok(to_json(&gen_h(n)?.monomials_json())),
        Command::VerifyIdentity { n } => Outcome::ok(to_json(&verify_substitution_identity(n)?)),
        Command::Search {
            seed,
            instances,
            k_max,
            m_max,
            t_max,
            exp_max,
            sequential,
        } => {
            if k_max == 0 || m_max == 0 || t_max == 0 || t_max as u64 > exp_max + 1 {
                return Err(Error::ShapeError("caps must be positive and t_max <= exp_max + 1".into()));
            }
            let cfg = ExperimentConfig {
                seed,
                instances,
                k_max,
                m_max,
                t_max,
                exp_max,
                ..ExperimentConfig::default()
            };
            let report = search_extremal_kurtz(&cfg, exec_for(sequential))?;
            let summary = json!({ "config": report.config, "best": report.best });
            Outcome::ok(report.to_jsonl() + &serde_json::to_string(&summary).expect("serializable") + "\n")
        }
        Command::Selftest { seed, sequential } => {
            let results = run_all(seed, exec_for(sequential));
            let all = results.iter().all(|r| r.passed);
            let text: String = results.iter().map(|r| r.line() + "\n").collect();
            Outcome::with_code(if all { 0 } else { 1 }, text)
        }
    })
}
