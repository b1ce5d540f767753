//! Command-line front end: compute rules, compare them against the
//! Golub-Welsch baseline, report iteration statistics and check exactness.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gaussjacobi::{
    compare_rules, exactness_check, golub_welsch, jacobi_rule, make_params, JacobiOptions,
    Normalization, QuadError, QuadParams, QuadratureRule, Refine, RunStats, Scheme,
};
use serde::Serialize;

const EXIT_USAGE: u8 = 1;
const EXIT_NUMERICAL: u8 = 2;
const EXIT_CHECK: u8 = 3;

const CHECK_MAX_N: usize = 40;
const CHECK_DEFAULT_TOL: f64 = 1e-10;

#[derive(Parser, Debug)]
#[command(
    name = "gaussjacobi",
    version,
    about = "Gauss-Jacobi quadrature nodes and weights"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the nodes and weights of one rule.
    Compute(Request),
    /// Node and weight errors of the fixed-point rule against Golub-Welsch.
    Compare(Request),
    /// Iterations and Taylor terms per node.
    Stats(Request),
    /// Largest moment defect up to degree 2n-1.
    Check(Request),
}

#[derive(clap::Args, Debug)]
struct Request {
    /// Number of nodes.
    #[arg(long)]
    n: usize,
    /// Exponent of (1-x).
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    /// Exponent of (1+x).
    #[arg(long, allow_negative_numbers = true)]
    beta: f64,
    #[arg(long, value_enum, default_value_t = Method::Fixedpoint)]
    method: Method,
    #[arg(long, value_enum, default_value_t = RefineArg::Auto)]
    refine: RefineArg,
    #[arg(long, value_enum, default_value_t = NormArg::Auto)]
    normalization: NormArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Pass threshold for `check` and `compare`.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Method {
    Fixedpoint,
    Gw,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum RefineArg {
    Auto,
    On,
    Off,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum NormArg {
    Auto,
    Mu0,
    Moments,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

enum Failure {
    Usage(String),
    Numerical(QuadError),
}

impl From<QuadError> for Failure {
    fn from(e: QuadError) -> Self {
        Failure::Numerical(e)
    }
}

type Outcome = Result<(String, bool), Failure>;

struct Computed {
    rule: QuadratureRule,
    scheme: Option<Scheme>,
    stats: Option<RunStats>,
    flushed: usize,
}

impl Request {
    fn options(&self) -> JacobiOptions {
        JacobiOptions {
            refine: match self.refine {
                RefineArg::Auto => Refine::Auto,
                RefineArg::On => Refine::On,
                RefineArg::Off => Refine::Off,
            },
            normalization: match self.normalization {
                NormArg::Auto => Normalization::Auto,
                NormArg::Mu0 => Normalization::Mu0,
                NormArg::Moments => Normalization::Moments,
            },
            ..JacobiOptions::default()
        }
    }

    fn params(&self) -> Result<QuadParams, Failure> {
        make_params(self.n, self.alpha, self.beta).map_err(|e| Failure::Usage(e.to_string()))
    }

    fn compute(&self, method: Method) -> Result<Computed, Failure> {
        match method {
            Method::Fixedpoint => {
                let r = jacobi_rule(self.n, self.alpha, self.beta, &self.options())?;
                Ok(Computed {
                    rule: r.rule,
                    scheme: Some(r.scheme),
                    stats: Some(r.stats),
                    flushed: r.flushed_underflow_count,
                })
            }
            Method::Gw => {
                let rule = golub_welsch(&self.params()?)?;
                Ok(Computed {
                    rule,
                    scheme: None,
                    stats: None,
                    flushed: 0,
                })
            }
        }
    }
}

// Shortest decimal that reads back to the same binary64 value.
fn num(v: f64) -> String {
    format!("{v:?}")
}

#[derive(Serialize)]
struct StatsJson {
    mean_iters: f64,
    max_iters: usize,
    mean_terms: f64,
    max_terms: usize,
}

impl From<RunStats> for StatsJson {
    fn from(s: RunStats) -> Self {
        StatsJson {
            mean_iters: s.mean_iters,
            max_iters: s.max_iters,
            mean_terms: s.mean_terms,
            max_terms: s.max_terms,
        }
    }
}

#[derive(Serialize)]
struct RuleJson<'a> {
    n: usize,
    alpha: f64,
    beta: f64,
    method: Method,
    scheme: Option<&'static str>,
    nodes: &'a [f64],
    weights: &'a [f64],
    stats: Option<StatsJson>,
    flushed_underflow_count: usize,
}

fn scheme_name(s: Scheme) -> &'static str {
    match s {
        Scheme::Mu0WithExplicitK => "mu0",
        Scheme::ThreeMoments => "moments",
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

fn run_compute(req: &Request) -> Outcome {
    req.params()?;
    let c = req.compute(req.method)?;
    let (x, w) = (&c.rule.nodes, &c.rule.weights);
    let mut out = String::new();
    match req.format {
        Format::Text => {
            for (a, b) in x.iter().zip(w) {
                writeln!(out, "{} {}", num(*a), num(*b)).unwrap();
            }
        }
        Format::Csv => {
            out.push_str("x,w\n");
            for (a, b) in x.iter().zip(w) {
                writeln!(out, "{},{}", num(*a), num(*b)).unwrap();
            }
        }
        Format::Json => {
            out = to_json(&RuleJson {
                n: req.n,
                alpha: req.alpha,
                beta: req.beta,
                method: req.method,
                scheme: c.scheme.map(scheme_name),
                nodes: x,
                weights: w,
                stats: c.stats.map(StatsJson::from),
                flushed_underflow_count: c.flushed,
            });
        }
    }
    Ok((out, true))
}

#[derive(Serialize)]
struct CompareJson {
    eps_mr_nodes: f64,
    eps_rm_weights: f64,
    eps_mr_weights: f64,
}

fn run_compare(req: &Request) -> Outcome {
    req.params()?;
    let ours = req.compute(Method::Fixedpoint)?;
    let base = req.compute(Method::Gw)?;
    let e = compare_rules(&ours.rule, &base.rule)?;
    let ok = req
        .tol
        .is_none_or(|t| e.nodes_mr.max(e.weights_rm).max(e.weights_mr) <= t);
    let out = match req.format {
        Format::Text => format!("{:e} {:e} {:e}\n", e.nodes_mr, e.weights_rm, e.weights_mr),
        Format::Csv => format!(
            "eps_mr_nodes,eps_rm_weights,eps_mr_weights\n{},{},{}\n",
            num(e.nodes_mr),
            num(e.weights_rm),
            num(e.weights_mr)
        ),
        Format::Json => to_json(&CompareJson {
            eps_mr_nodes: e.nodes_mr,
            eps_rm_weights: e.weights_rm,
            eps_mr_weights: e.weights_mr,
        }),
    };
    Ok((out, ok))
}

fn run_stats(req: &Request) -> Outcome {
    if req.method != Method::Fixedpoint {
        return Err(Failure::Usage("stats needs --method fixedpoint".into()));
    }
    req.params()?;
    let s = req.compute(Method::Fixedpoint)?.stats.unwrap_or_default();
    let out = match req.format {
        Format::Text => format!(
            "mean_iters {}\nmax_iters {}\nmean_terms {}\nmax_terms {}\n",
            num(s.mean_iters),
            s.max_iters,
            num(s.mean_terms),
            s.max_terms
        ),
        Format::Csv => format!(
            "mean_iters,max_iters,mean_terms,max_terms\n{},{},{},{}\n",
            num(s.mean_iters),
            s.max_iters,
            num(s.mean_terms),
            s.max_terms
        ),
        Format::Json => to_json(&StatsJson::from(s)),
    };
    Ok((out, true))
}

#[derive(Serialize)]
struct CheckJson {
    kmax: usize,
    defect: f64,
    tol: f64,
    pass: bool,
}

fn run_check(req: &Request) -> Outcome {
    let p = req.params()?;
    if req.n > CHECK_MAX_N {
        return Err(Failure::Usage(format!(
            "check supports n <= {CHECK_MAX_N}, got {}",
            req.n
        )));
    }
    let c = req.compute(req.method)?;
    let kmax = 2 * req.n - 1;
    let defect = exactness_check(&c.rule, &p, kmax);
    let tol = req.tol.unwrap_or(CHECK_DEFAULT_TOL);
    let pass = defect <= tol;
    let out = match req.format {
        Format::Text => format!("{defect:e}\n"),
        Format::Csv => format!(
            "kmax,defect,tol,pass\n{kmax},{},{},{pass}\n",
            num(defect),
            num(tol)
        ),
        Format::Json => to_json(&CheckJson {
            kmax,
            defect,
            tol,
            pass,
        }),
    };
    Ok((out, pass))
}

// Variant name of the error, e.g. `CountMismatch`.
fn error_case(e: &QuadError) -> String {
    let d = format!("{e:?}");
    d.split(|c: char| !c.is_alphanumeric())
        .next()
        .unwrap_or_default()
        .to_string()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (req, result) = match &cli.command {
        Command::Compute(r) => (r, run_compute(r)),
        Command::Compare(r) => (r, run_compare(r)),
        Command::Stats(r) => (r, run_stats(r)),
        Command::Check(r) => (r, run_check(r)),
    };
    match result {
        Ok((text, ok)) => {
            let written = match &req.out {
                Some(path) => std::fs::write(path, text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("check failed: above tolerance");
                ExitCode::from(EXIT_CHECK)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Numerical(e)) => {
            eprintln!("error ({}): {e}", error_case(&e));
            ExitCode::from(EXIT_NUMERICAL)
        }
    }
}
