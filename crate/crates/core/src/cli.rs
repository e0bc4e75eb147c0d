//! The `taildep` command line.
//!
//! Exit codes: 0 success or feasible, 3 a structured negative answer
//! (infeasible, not realizable, not a line metric), 2 malformed input or
//! usage, 1 internal error. Negative answers print a machine-readable
//! witness on stdout.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::coeffs::{self, Kind};
use crate::error::Error;
use crate::io::{self, CutDecompositionJson, MatrixJson, OutcomeJson, SubsetFnJson, TmModelJson};
use crate::rational::{self, Rational};
use crate::realize::{self, Instance, SdrScale};
use crate::simulate::{self, Target};
use crate::spectral::{self, LineDetection};
use crate::subset::{nonempty_subsets, Subset};
use crate::tm;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_NEGATIVE: i32 = 3;

const FORMATS: &str = "\
FILE FORMATS
  Coefficient system (JSON): {\"p\": 3, \"kind\": \"beta|lambda|theta\",
      \"entries\": [{\"set\": [1, 2], \"value\": \"1/2\"}]}; omitted subsets are 0.
  Model (JSON): {\"p\": 3, \"beta\": [{\"set\": [1], \"value\": \"1/2\"}]}.
  Subset pmf (JSON): {\"p\": 2, \"masses\": [{\"set\": [], \"value\": \"1/4\"}, ...]}.
  Matrix: CSV with p rows of p rationals (\"1/2\") or decimals, '#' comments,
      or JSON {\"p\": 2, \"lam\": [[...]]} / {\"p\": 2, \"d\": [[...]]}.
  Targets (JSON): {\"lambda\": [[1, 3]], \"theta\": [[1, 2]]}.
  Samples (binary): \"TDSIM1\", p as u16, n as u64, then n*p f64 row-major,
      all little-endian.
  Exact values are written as \"num/den\" strings; subsets as sorted 1-based
  index arrays.

EXIT CODES
  0 success / feasible, 3 infeasible or not realizable, 2 malformed input,
  1 internal error.

ENVIRONMENT
  TAILDEP_MAX_P overrides the dimension guard (default 16, 14 for realize).";

#[derive(Debug, Parser)]
#[command(name = "taildep", version, about = "Tail-dependence coefficients, Tawn-Molchanov models and realizability", after_long_help = FORMATS)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convert between beta, lambda and theta systems.
    Invert(InvertArgs),
    /// Tawn-Molchanov model operations.
    #[command(subcommand)]
    Tm(TmCommand),
    /// Spectral distances and cut decompositions.
    #[command(subcommand)]
    Spectral(SpectralCommand),
    /// Detect a line metric and build its rigid model.
    Linemetric(LinemetricArgs),
    /// Exact realizability deciders.
    #[command(subcommand)]
    Realize(RealizeCommand),
    /// Monte-Carlo estimation against the exact law.
    Simulate(SimulateArgs),
    /// Summary tables for a model.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Beta,
    Lambda,
    Theta,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Beta => Kind::Beta,
            KindArg::Lambda => Kind::Lambda,
            KindArg::Theta => Kind::Theta,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct InvertArgs {
    #[arg(long, value_enum)]
    pub from: KindArg,
    #[arg(long, value_enum)]
    pub to: KindArg,
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum TmCommand {
    /// Synthesize a model from a lambda or theta system.
    Synth {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate P[X <= x].
    Cdf {
        #[arg(long)]
        model: PathBuf,
        /// Comma-separated positive point.
        #[arg(long)]
        x: String,
    },
    /// Exact joint exceedance probability P[min_{i in L} X_i > u].
    Exceed {
        #[arg(long)]
        model: PathBuf,
        /// Comma-separated 1-based indices.
        #[arg(long)]
        set: String,
        #[arg(long)]
        u: f64,
    },
    /// Law of the limiting exceedance set.
    Exceedance {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bernoulli-compatible tensor lambda/c of order k.
    Tensor {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value_t = 2)]
        order: usize,
        /// `auto` (theta([p])) or a rational scale.
        #[arg(long, default_value = "auto")]
        scale: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Model whose coefficients are the product moments of a 0/1 vector.
    FromBernoulli {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum SpectralCommand {
    /// Spectral distance of a TD matrix.
    Distance {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: MatrixFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the semimetric axioms and triangle inequalities.
    Validate {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Cut decomposition of a model.
    Cuts {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Probe the uniqueness of a cut decomposition.
    Probe {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
}

#[derive(Debug, Args)]
pub struct LinemetricArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Comma-separated marginal scales lambda(1..p).
    #[arg(long)]
    pub marginals: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum RealizeCommand {
    /// Is a unit-diagonal matrix a tail-dependence matrix?
    Td {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Is a matrix a realizable spectral distance with identical margins?
    Sdr {
        #[arg(long = "in")]
        input: PathBuf,
        /// `auto` for (2^p - 2) max d, or a rational marginal scale.
        #[arg(long, default_value = "auto")]
        scale: String,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long, default_value_t = 1_000_000)]
    pub n: usize,
    /// Threshold; defaults to 100 times the largest marginal scale.
    #[arg(long)]
    pub u: Option<f64>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long)]
    pub targets: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the raw samples as a TDSIM1 binary stream.
    #[arg(long)]
    pub samples: Option<PathBuf>,
    /// Significant digits of reported floats.
    #[arg(long, default_value_t = 6)]
    pub precision: usize,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long)]
    pub model: PathBuf,
}

/// Outcome of a subcommand: exit code and stdout text.
struct Output {
    code: i32,
    stdout: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { code: EXIT_OK, stdout }
    }

    fn negative(stdout: String) -> Self {
        Output {
            code: EXIT_NEGATIVE,
            stdout,
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::CertificateRejected(_) => EXIT_INTERNAL,
        Error::NotRealizable(_) | Error::NotRealizableAtTheseMarginals(_) | Error::NotInCutCone => {
            EXIT_NEGATIVE
        }
        _ => EXIT_MALFORMED,
    }
}

fn pretty<T: Serialize>(v: &T) -> crate::Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

/// Writes to `out` if given, otherwise returns the text for stdout.
fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> crate::Result<String> {
    match out {
        Some(path) => {
            io::write_json(path, value)?;
            Ok(String::new())
        }
        None => pretty(value),
    }
}

fn parse_set(s: &str, p: usize) -> crate::Result<Subset> {
    let ix = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad index {t:?}"))))
        .collect::<crate::Result<Vec<_>>>()?;
    let set = Subset::from_one_based(&ix, p)?;
    if set.is_empty() {
        return Err(Error::MalformedInput("empty subset".into()));
    }
    Ok(set)
}

fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .unwrap_or(x)
}

fn cmd_invert(a: &InvertArgs) -> crate::Result<Output> {
    let f = io::read_subset_fn(&a.input)?;
    let from: Kind = a.from.into();
    if f.kind() != from {
        return Err(Error::WrongKind {
            expected: from.name(),
            found: f.kind().name(),
        });
    }
    let to: Kind = a.to.into();
    let beta = match from {
        Kind::Beta => f.clone(),
        Kind::Lambda => coeffs::beta_from_lambda(&f)?,
        Kind::Theta => coeffs::beta_from_theta(&f)?,
        Kind::Raw => unreachable!("not selectable"),
    };
    let result = match (from, to) {
        (a, b) if a == b => f.clone(),
        (_, Kind::Beta) => beta,
        (Kind::Lambda, Kind::Theta) => coeffs::theta_from_lambda(&f)?,
        (Kind::Theta, Kind::Lambda) => coeffs::lambda_from_theta(&f)?,
        (Kind::Beta, Kind::Lambda) => coeffs::lambda_from_beta(&f)?,
        (Kind::Beta, Kind::Theta) => coeffs::theta_from_beta(&f)?,
        _ => unreachable!("all kind pairs covered"),
    };
    let result_json = SubsetFnJson::from_fn(&result);
    if result.is_valid() {
        return Ok(Output::ok(emit(&result_json, a.out.as_deref())?));
    }
    let mut witness = json!({
        "realizable": false,
        "negative": io::negative_atoms_json(&result.negative_entries()),
    });
    match &a.out {
        Some(path) => io::write_json(path, &result_json)?,
        None => witness["result"] = serde_json::to_value(&result_json)?,
    }
    Ok(Output::negative(pretty(&witness)?))
}

fn cmd_tm(c: &TmCommand) -> crate::Result<Output> {
    match c {
        TmCommand::Synth { input, out } => {
            let f = io::read_subset_fn(input)?;
            match tm::synthesize(&f) {
                Ok(model) => Ok(Output::ok(emit(&TmModelJson::from_model(&model), out.as_deref())?)),
                Err(Error::NotRealizable(atoms)) => Ok(Output::negative(pretty(&json!({
                    "realizable": false,
                    "negative": io::negative_atoms_json(&atoms),
                }))?)),
                Err(e) => Err(e),
            }
        }
        TmCommand::Cdf { model, x } => {
            let m = io::read_model(model)?;
            let exact = io::parse_list(x)?;
            let exponent = tm::cdf_exponent(&m, &exact)?;
            let x: Vec<f64> = exact.iter().map(rational::to_f64).collect();
            let v = tm::cdf(&m, &x)?;
            Ok(Output::ok(pretty(&json!({
                "x": x,
                "exponent": rational::format(&exponent),
                "cdf": v,
            }))?))
        }
        TmCommand::Exceed { model, set, u } => {
            let m = io::read_model(model)?;
            let l = parse_set(set, m.p())?;
            let prob = tm::exact_joint_exceedance(&m, l, *u)?;
            Ok(Output::ok(pretty(&json!({
                "set": l.to_one_based(),
                "u": u,
                "probability": prob,
                "scaled": u * prob,
                "lambda": rational::format(m.lambda().get(l)),
            }))?))
        }
        TmCommand::Exceedance { model, out } => {
            let m = io::read_model(model)?;
            let dist = tm::exceedance_set_dist(&m)?;
            let pmf: Vec<_> = dist
                .pmf()
                .iter()
                .map(|(s, v)| json!({ "set": s.to_one_based(), "value": rational::format(v) }))
                .collect();
            let value = json!({
                "p": m.p(),
                "normalizer": rational::format(dist.normalizer()),
                "pmf": pmf,
            });
            Ok(Output::ok(emit(&value, out.as_deref())?))
        }
        TmCommand::Tensor { model, order, scale, out } => {
            let m = io::read_model(model)?;
            let c = if scale == "auto" {
                m.total_mass()
            } else {
                rational::parse(scale)?
            };
            let t = tm::tensor_from_model(&m, *order, &c)?;
            let values: Vec<_> = nonempty_subsets(m.p())
                .filter_map(|s| t.on_set(s).map(|v| json!({ "set": s.to_one_based(), "value": rational::format(v) })))
                .collect();
            let value = json!({
                "p": m.p(),
                "order": order,
                "scale": rational::format(&c),
                "values": values,
                "mechanism": io::BernoulliPmfJson::from_pmf(t.mechanism()),
            });
            Ok(Output::ok(emit(&value, out.as_deref())?))
        }
        TmCommand::FromBernoulli { input, out } => {
            let pmf: io::BernoulliPmfJson = serde_json::from_str(&io::read_to_string(input)?)?;
            let bm = tm::model_from_bernoulli(&pmf.to_pmf()?)?;
            let text = emit(&TmModelJson::from_model(&bm.model), out.as_deref())?;
            Ok(Output::ok(text))
        }
    }
}

fn metric_report_json(d: &spectral::SemiMetric) -> serde_json::Value {
    let r = d.validate();
    let violations: Vec<_> = r
        .violations
        .iter()
        .map(|&(i, j, k)| [i + 1, j + 1, k + 1])
        .collect();
    json!({
        "is_semimetric": r.is_semimetric,
        "is_metric": r.is_metric,
        "violations": violations,
    })
}

fn cmd_spectral(c: &SpectralCommand) -> crate::Result<Output> {
    match c {
        SpectralCommand::Distance { input, format, out } => {
            let td = io::read_td_matrix(input)?;
            let d = spectral::distance_from_td(&td);
            let text = match format {
                MatrixFormat::Csv => {
                    let csv = io::matrix_csv(d.rows());
                    match out {
                        Some(p) => {
                            std::fs::write(p, csv)?;
                            String::new()
                        }
                        None => csv,
                    }
                }
                MatrixFormat::Json => emit(&MatrixJson::from_metric(&d), out.as_deref())?,
            };
            Ok(Output::ok(text))
        }
        SpectralCommand::Validate { input } => {
            let d = io::read_semimetric(input)?;
            let report = metric_report_json(&d);
            let ok = d.validate().is_semimetric;
            let text = pretty(&report)?;
            Ok(if ok { Output::ok(text) } else { Output::negative(text) })
        }
        SpectralCommand::Cuts { model, out } => {
            let m = io::read_model(model)?;
            let cuts = spectral::cut_decomposition(&m);
            Ok(Output::ok(emit(&CutDecompositionJson::from_decomposition(&cuts), out.as_deref())?))
        }
        SpectralCommand::Probe { input, trials } => {
            let d = io::read_semimetric(input)?;
            match spectral::rigidity_probe(&d, *trials) {
                Ok(r) => {
                    let ranges: Vec<_> = r
                        .ranges
                        .iter()
                        .map(|c| {
                            json!({
                                "cut": c.cut.to_one_based(),
                                "min": rational::format(&c.min),
                                "max": rational::format(&c.max),
                            })
                        })
                        .collect();
                    let witness = r.witness.as_ref().map(|(a, b)| {
                        [
                            CutDecompositionJson::from_decomposition(a),
                            CutDecompositionJson::from_decomposition(b),
                        ]
                    });
                    Ok(Output::ok(pretty(&json!({
                        "objectives": r.objectives,
                        "rigid_consistent": r.rigid_consistent(),
                        "ranges": ranges,
                        "witness": witness,
                    }))?))
                }
                Err(Error::NotInCutCone) => Ok(Output::negative(pretty(&json!({
                    "embeddable": false,
                }))?)),
                Err(e) => Err(e),
            }
        }
    }
}

fn cmd_linemetric(a: &LinemetricArgs) -> crate::Result<Output> {
    let d = io::read_semimetric(&a.input)?;
    let cert = match spectral::detect_line_metric(&d) {
        LineDetection::Line(cert) => cert,
        LineDetection::NotLine { pair } => {
            return Ok(Output::negative(pretty(&json!({
                "line": false,
                "failing_pair": [pair.0 + 1, pair.1 + 1],
            }))?))
        }
    };
    let mut cert_json = json!({
        "line": true,
        "order": cert.perm.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "weights": cert.weights.iter().map(rational::format).collect::<Vec<_>>(),
    });
    let Some(marginals) = &a.marginals else {
        return Ok(Output::ok(pretty(&cert_json)?));
    };
    let marginals = io::parse_list(marginals)?;
    match spectral::line_tm_model(&cert, &marginals) {
        Ok(line) => {
            let model_json = TmModelJson::from_model(&line.model);
            match &a.out {
                Some(path) => io::write_json(path, &model_json)?,
                None => cert_json["model"] = serde_json::to_value(&model_json)?,
            }
            Ok(Output::ok(pretty(&cert_json)?))
        }
        Err(Error::NotRealizableAtTheseMarginals(atoms)) => Ok(Output::negative(pretty(&json!({
            "line": true,
            "realizable": false,
            "negative": io::negative_atoms_json(&atoms),
        }))?)),
        Err(e) => Err(e),
    }
}

fn cmd_realize(c: &RealizeCommand) -> crate::Result<Output> {
    let (outcome, rows, witness_path) = match c {
        RealizeCommand::Td { input, witness } => {
            let td = io::read_td_matrix(input)?;
            if (0..td.p()).any(|i| (0..td.p()).any(|j| *td.get(i, j) > rational::one())) {
                return Err(Error::MalformedInput("entries must not exceed 1".into()));
            }
            let outcome = realize::decide_tdr(&td)?;
            realize::verify_certificate(&outcome, Instance::Td(&td))?;
            (outcome, realize::td_rows(td.p()), witness)
        }
        RealizeCommand::Sdr { input, scale, witness } => {
            let d = io::read_semimetric(input)?;
            let scale = if scale == "auto" {
                SdrScale::Auto
            } else {
                SdrScale::Fixed(rational::parse(scale)?)
            };
            let outcome = realize::decide_sdr(&d, &scale)?;
            realize::verify_certificate(&outcome, Instance::Sdr { d: &d, scale: &scale })?;
            let rows = match scale {
                SdrScale::Auto => realize::cut_rows(d.p()),
                SdrScale::Fixed(_) => realize::td_rows(d.p()),
            };
            (outcome, rows, witness)
        }
    };
    let json = OutcomeJson::from_outcome(&outcome, &rows);
    if let Some(path) = witness_path {
        io::write_json(path, &json)?;
    }
    let text = pretty(&json)?;
    Ok(if outcome.is_feasible() {
        Output::ok(text)
    } else {
        Output::negative(text)
    })
}

#[derive(Debug, serde::Deserialize, Default)]
struct TargetsJson {
    #[serde(default)]
    lambda: Vec<Vec<usize>>,
    #[serde(default)]
    theta: Vec<Vec<usize>>,
}

fn cmd_simulate(a: &SimulateArgs) -> crate::Result<Output> {
    let model = io::read_model(&a.model)?;
    let p = model.p();
    let u = a.u.unwrap_or_else(|| simulate::SimConfig::default_threshold(&model));
    let config = simulate::SimConfig::new(a.n, u, a.seed)?;
    let targets: Vec<Target> = match &a.targets {
        Some(path) => {
            let t: TargetsJson = serde_json::from_str(&io::read_to_string(path)?)?;
            let mut out = Vec::new();
            for s in &t.lambda {
                out.push(Target::Lambda(Subset::from_one_based(s, p)?));
            }
            for s in &t.theta {
                out.push(Target::Theta(Subset::from_one_based(s, p)?));
            }
            if out.iter().any(|t| matches!(t, Target::Lambda(s) | Target::Theta(s) if s.is_empty())) {
                return Err(Error::MalformedInput("empty target set".into()));
            }
            out
        }
        None => nonempty_subsets(p)
            .map(Target::Lambda)
            .chain(nonempty_subsets(p).map(Target::Theta))
            .collect(),
    };
    let samples = simulate::sample(&model, config.n_samples, config.seed)?;
    if let Some(path) = &a.samples {
        let file = std::io::BufWriter::new(std::fs::File::create(path)?);
        samples.write_binary(file)?;
    }
    let report = simulate::estimate(&model, &samples, &targets, config.threshold)?;
    let hist = simulate::exceedance_set_histogram(&samples, config.threshold)?;
    let limit = tm::exceedance_set_dist(&model)?;
    let r = |x: f64| round_sig(x, a.precision);
    let rows: Vec<_> = report
        .rows
        .iter()
        .map(|row| {
            let (kind, set) = match row.target {
                Target::Lambda(s) => ("lambda", s),
                Target::Theta(s) => ("theta", s),
            };
            json!({
                "target": kind,
                "set": set.to_one_based(),
                "empirical": r(row.empirical),
                "exact_finite_u": r(row.exact_finite),
                "asymptotic": r(row.asymptotic),
                "std_error": r(row.std_error),
                "count": row.count,
            })
        })
        .collect();
    let histogram: Vec<_> = hist
        .pmf()
        .iter()
        .map(|(s, v)| json!({ "set": s.to_one_based(), "frequency": r(*v) }))
        .collect();
    let value = json!({
        "n": config.n_samples,
        "u": config.threshold,
        "seed": config.seed,
        "estimates": rows,
        "exceedance_sets": {
            "nonempty": hist.nonempty,
            "histogram": histogram,
            "tv_to_limit": r(hist.tv_distance(&limit)),
        },
    });
    Ok(Output::ok(emit(&value, a.out.as_deref())?))
}

fn cmd_report(a: &ReportArgs) -> crate::Result<Output> {
    let m = io::read_model(&a.model)?;
    let p = m.p();
    if p > 6 {
        return Err(Error::DimensionTooLarge { p, limit: 6 });
    }
    let theta = m.theta();
    let lambda = m.lambda();
    let mut s = String::new();
    let _ = writeln!(s, "model on p = {p} components, theta([p]) = {}", m.total_mass());
    let _ = writeln!(s, "\n{:<16} {:>12} {:>12} {:>12} {:>12}", "set", "beta", "lambda", "theta", "P[Θ = J]");
    let dist = tm::exceedance_set_dist(&m).ok();
    for j in nonempty_subsets(p) {
        let pmf = dist
            .as_ref()
            .map(|d| d.prob(j).to_string())
            .unwrap_or_else(|| "-".into());
        let _ = writeln!(
            s,
            "{:<16} {:>12} {:>12} {:>12} {:>12}",
            j.to_string(),
            m.beta().get(j).to_string(),
            lambda.get(j).to_string(),
            theta.get(j).to_string(),
            pmf
        );
    }
    let d = m.spectral_distance();
    let _ = writeln!(s, "\nspectral distance d(i,j)");
    for row in d.rows() {
        let cells: Vec<String> = row.iter().map(|v: &Rational| format!("{v:>8}")).collect();
        let _ = writeln!(s, "{}", cells.join(" "));
    }
    Ok(Output::ok(s))
}

fn dispatch(cli: &Cli) -> crate::Result<Output> {
    match &cli.command {
        Command::Invert(a) => cmd_invert(a),
        Command::Tm(c) => cmd_tm(c),
        Command::Spectral(c) => cmd_spectral(c),
        Command::Linemetric(a) => cmd_linemetric(a),
        Command::Realize(c) => cmd_realize(c),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Report(a) => cmd_report(a),
    }
}

/// Runs the command line and returns `(exit code, stdout, stderr)`.
pub fn run_captured<I, T>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                (code, String::new(), text)
            } else {
                (code, text, String::new())
            };
        }
    };
    let result = std::panic::catch_unwind(|| dispatch(&cli));
    match result {
        Ok(Ok(out)) => (out.code, out.stdout, String::new()),
        Ok(Err(e)) => (exit_code_for(&e), String::new(), format!("error: {e}\n")),
        Err(_) => (EXIT_INTERNAL, String::new(), "error: internal failure\n".into()),
    }
}

/// Runs the command line, printing to stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (code, out, err) = run_captured(argv);
    print!("{out}");
    eprint!("{err}");
    code
}
