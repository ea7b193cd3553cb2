//! The `sprawl` command line: argument parsing, dispatch and report formats.
//!
//! Every JSON report has the shape `{config, warnings, result}`, where
//! `config` is the parsed [`RunConfig`]. Rationals are `[numerator,
//! denominator]` pairs and floats carry 17 significant digits, so running the
//! same configuration twice gives byte-identical output.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::cayley::{empirical_sprawl, EmpiricalSprawl, FreeAbelian, FreeGroup, Group, Lamplighter, PairMode, DEFAULT_BUDGET};
use crate::closed_forms::{asymptotic_gap, hexagon_formula, hexagon_grid, sprawl_formula, ShapeSpec};
use crate::convex::{approximate_circle_with_angles, default_circle_angles, hexagon_xy, hull, Perimeter, PerimeterJson};
use crate::cutline::sprawl_exact;
use crate::error::SprawlError;
use crate::interval::Interval;
use crate::lattice::{parse_gens, GeneratorSet};
use crate::mahler::mahler_report;
use crate::mc::{average_distance_volume, sprawl_mc, sprawl_mc_sphere, SprawlEstimate};
use crate::rational::{pairs, parse_rational, to_decimal, ExactRational, RationalPair};

/// Parsed command line. Embedded verbatim in every JSON report.
#[derive(Debug, Clone, PartialEq, Eq, Parser, Serialize, Deserialize)]
#[command(name = "sprawl", version, about = "Sprawl of word metrics and convex perimeters")]
pub struct RunConfig {
    /// Worker threads (default: available parallelism). Results do not depend on it.
    #[arg(long, env = "SPRAWL_THREADS", global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Exact sprawl of a planar polygon by the cutline algorithm.
    Exact(ExactArgs),
    /// Monte Carlo sprawl in any dimension.
    Mc(McArgs),
    /// Word-metric sprawl E_n on a Cayley graph.
    Cayley(CayleyArgs),
    /// Closed-form sprawl of a named shape.
    ClosedForm(ClosedFormArgs),
    /// Polar body, Mahler volume and the Kuperberg and Santaló bounds.
    Mahler(MahlerArgs),
    /// Exact sprawl over a rational grid of hexagons H_{x,y}.
    ScanHexagon(ScanHexagonArgs),
    /// Exact sprawl of an integer polygon approximating the circle.
    ApproxCircle(ApproxCircleArgs),
}

/// One of a generating-set file, a perimeter JSON file or a shape.
#[derive(Debug, Clone, PartialEq, Eq, Args, Serialize, Deserialize)]
#[group(required = true, multiple = false)]
pub struct InputArgs {
    /// Generating-set file (one integer vector per line).
    #[arg(long, value_name = "FILE")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gens: Option<PathBuf>,
    /// Perimeter JSON file.
    #[arg(long, value_name = "FILE")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perimeter: Option<PathBuf>,
    /// Shape spec: pgon:X, circle, hexagon:X,Y, sphere:D, cube:D or orthoplex:D.
    #[arg(long, value_name = "SPEC")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Args, Serialize, Deserialize)]
pub struct ExactArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Emit the JSON report (the default unless --decimal is given alone).
    #[arg(long)]
    pub json: bool,
    /// Decimal places; on its own, prints only the decimal value.
    #[arg(long, value_name = "PREC")]
    pub decimal: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Args, Serialize, Deserialize)]
pub struct McArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub samples: u64,
    #[arg(long)]
    pub seed: u64,
    /// Average over the solid body instead of the boundary.
    #[arg(long)]
    pub body: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Args, Serialize, Deserialize)]
pub struct CayleyArgs {
    /// zd:D, free:K or lamplighter:M.
    #[arg(long)]
    pub group: String,
    /// Generator file, or `default` for the standard generators.
    #[arg(long, default_value = "default")]
    pub gens: String,
    /// Largest radius.
    #[arg(long)]
    pub radius: usize,
    /// Smallest radius reported.
    #[arg(long, default_value_t = 1)]
    pub from: usize,
    /// `exact` for all pairs or `sample:K` for K random pairs per radius.
    #[arg(long, default_value = "exact")]
    pub pairs: String,
    /// Required with sampled pairs.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Emit the JSON report instead of CSV.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Args, Serialize, Deserialize)]
pub struct ClosedFormArgs {
    #[arg(long)]
    pub shape: String,
    #[arg(long, default_value_t = 30)]
    pub digits: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Args, Serialize, Deserialize)]
pub struct MahlerArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Args, Serialize, Deserialize)]
pub struct ScanHexagonArgs {
    /// Grid step; its reciprocal must be a positive integer.
    #[arg(long, default_value = "1/20")]
    pub step: String,
    /// CSV destination; without it the CSV goes to standard output.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq, Args, Serialize, Deserialize)]
pub struct ApproxCircleArgs {
    /// Radius of the circle being approximated.
    #[arg(long)]
    pub scale: u64,
    /// Number of grid angles (default grows like the cube root of the scale).
    #[arg(long)]
    pub angles: Option<usize>,
    /// Also write the polygon as perimeter JSON.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

/// Failure of a CLI run.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Sprawl(#[from] SprawlError),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Sprawl(e) => e.kind(),
            CliError::Io { .. } => "Io",
            CliError::Usage(_) => "Usage",
        }
    }

    /// `{"error": {"kind": ..., "message": ...}}`.
    pub fn to_json(&self) -> String {
        serde_json::json!({"error": {"kind": self.kind(), "message": self.to_string()}}).to_string()
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// What a run prints: the main output and any warnings for standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub warnings: Vec<String>,
}

/// Standard report envelope.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report<T> {
    pub config: RunConfig,
    pub warnings: Vec<String>,
    pub result: T,
}

impl<T: Serialize + DeserializeOwned> Report<T> {
    pub fn to_json(&self) -> String {
        to_json_text(self)
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("bad report: {e}")))
    }
}

/// Indented JSON with short object-free arrays (rationals, points) kept on
/// one line, newline-terminated.
pub fn to_json_text<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report serializes");
    let mut out = String::new();
    write_json(&v, 0, &mut out);
    out.push('\n');
    out
}

fn write_json(v: &serde_json::Value, depth: usize, out: &mut String) {
    use serde_json::Value;
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (k, (key, val)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_json(val, depth + 1, out);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        Value::Array(items) if !items.is_empty() => {
            if let Some(inline) = inline_array(items).filter(|s| s.len() <= 76) {
                out.push_str(&inline);
                return;
            }
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_json(item, depth + 1, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        _ => out.push_str(&v.to_string()),
    }
}

/// `[a, b, [c, d]]`, or `None` if an object occurs inside.
fn inline_array(items: &[serde_json::Value]) -> Option<String> {
    let parts = items
        .iter()
        .map(|x| match x {
            serde_json::Value::Object(_) => None,
            serde_json::Value::Array(inner) => inline_array(inner),
            _ => Some(x.to_string()),
        })
        .collect::<Option<Vec<_>>>()?;
    Some(format!("[{}]", parts.join(", ")))
}

/// Floats as JSON numbers with exactly 17 significant digits.
mod float17 {
    use serde::{de, ser, Deserialize, Deserializer, Serialize, Serializer};

    pub fn number(x: f64) -> Result<serde_json::Number, String> {
        if !x.is_finite() {
            return Err(format!("non-finite float {x}"));
        }
        format!("{x:.16e}").parse().map_err(|e| format!("{e}"))
    }

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        number(*x).map_err(ser::Error::custom)?.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        n.to_string().parse().map_err(de::Error::custom)
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
            match x {
                Some(v) => super::serialize(v, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
            let n = Option::<serde_json::Number>::deserialize(d)?;
            n.map(|n| n.to_string().parse().map_err(de::Error::custom)).transpose()
        }
    }
}

/// 17 significant digits, as in the JSON reports.
pub fn format_float(x: f64) -> String {
    float17::number(x).map(|n| n.to_string()).unwrap_or_else(|_| x.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactResult {
    pub value: RationalPair,
    pub decimal: String,
    pub vertices: Vec<Vec<RationalPair>>,
    pub weights: Vec<RationalPair>,
    pub side_pair_matrix: Vec<Vec<RationalPair>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McResult {
    #[serde(with = "float17")]
    pub mean: f64,
    #[serde(with = "float17")]
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
    pub shape: String,
}

impl From<SprawlEstimate> for McResult {
    fn from(e: SprawlEstimate) -> Self {
        McResult {
            mean: e.mean,
            stderr: e.stderr,
            samples: e.samples,
            seed: e.seed,
            shape: e.shape,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CayleyRow {
    pub n: usize,
    pub sphere_size: usize,
    #[serde(with = "float17")]
    pub value: f64,
    /// Present in exact mode.
    pub exact: Option<RationalPair>,
    #[serde(with = "float17::option")]
    pub stderr: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CayleyResult {
    pub group: String,
    pub generators: usize,
    pub mode: PairMode,
    pub rows: Vec<CayleyRow>,
}

impl From<EmpiricalSprawl> for CayleyResult {
    fn from(e: EmpiricalSprawl) -> Self {
        CayleyResult {
            group: e.group,
            generators: e.generators,
            mode: e.mode,
            rows: e
                .rows
                .into_iter()
                .map(|r| CayleyRow {
                    n: r.n,
                    sphere_size: r.sphere_size,
                    value: r.value,
                    exact: r.exact.map(RationalPair),
                    stderr: r.stderr,
                })
                .collect(),
        }
    }
}

impl CayleyResult {
    /// `n,sphere_size,E_n,stderr` with an empty stderr in exact mode.
    pub fn to_csv(&self) -> CliResult<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| CliError::Usage(e.to_string());
        w.write_record(["n", "sphere_size", "E_n", "stderr"]).map_err(csv_err)?;
        for r in &self.rows {
            w.write_record([
                r.n.to_string(),
                r.sphere_size.to_string(),
                format_float(r.value),
                r.stderr.map(format_float).unwrap_or_default(),
            ])
            .map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}

/// Enclosure of an irrational value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enclosure {
    pub lower: RationalPair,
    pub upper: RationalPair,
}

impl From<&Interval> for Enclosure {
    fn from(iv: &Interval) -> Self {
        Enclosure {
            lower: RationalPair(iv.lo().clone()),
            upper: RationalPair(iv.hi().clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Asymptotics {
    pub limit: String,
    #[serde(with = "float17")]
    pub gap: f64,
    #[serde(with = "float17")]
    pub leading_term: f64,
    #[serde(with = "float17")]
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormResult {
    pub shape: String,
    pub exact: Option<RationalPair>,
    pub enclosure: Enclosure,
    pub decimal: String,
    pub asymptotics: Option<Asymptotics>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MahlerResult {
    pub dimension: usize,
    pub volume: RationalPair,
    pub polar_volume: RationalPair,
    pub mahler: RationalPair,
    pub polar_vertices: Vec<Vec<RationalPair>>,
    pub kuperberg_bound: String,
    pub santalo_bound: String,
    pub kuperberg_holds: bool,
    pub santalo_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub points: usize,
    pub min: RationalPair,
    pub max: RationalPair,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproxCircleResult {
    pub scale: u64,
    pub angles: usize,
    pub vertices: usize,
    pub value: RationalPair,
    pub decimal: String,
    /// `E - 4/π`.
    #[serde(with = "float17")]
    pub error: f64,
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn load_gens(path: &Path, warnings: &mut Vec<String>) -> CliResult<GeneratorSet> {
    let (set, corrected) = parse_gens(&read(path)?)?;
    if corrected {
        warnings.push(format!(
            "{}: generating set was not symmetric; added the missing negatives",
            path.display()
        ));
    }
    Ok(set)
}

enum Body {
    Polytope(Perimeter),
    Sphere(usize),
}

fn load_body(input: &InputArgs, warnings: &mut Vec<String>) -> CliResult<Body> {
    if let Some(path) = &input.gens {
        return Ok(Body::Polytope(hull(&load_gens(path, warnings)?)?));
    }
    if let Some(path) = &input.perimeter {
        let json: PerimeterJson = serde_json::from_str(&read(path)?)
            .map_err(|e| SprawlError::InvalidInput(format!("{}: {e}", path.display())))?;
        return Ok(Body::Polytope(Perimeter::from_json(&json)?));
    }
    let spec: ShapeSpec = input
        .shape
        .as_deref()
        .ok_or_else(|| CliError::Usage("one of --gens, --perimeter or --shape is required".into()))?
        .parse()?;
    Ok(match spec {
        ShapeSpec::Sphere(d) => Body::Sphere(d as usize),
        ShapeSpec::Circle => Body::Sphere(2),
        s => Body::Polytope(s.perimeter()?),
    })
}

fn load_polytope(input: &InputArgs, warnings: &mut Vec<String>) -> CliResult<Perimeter> {
    match load_body(input, warnings)? {
        Body::Polytope(p) => Ok(p),
        Body::Sphere(d) => Err(SprawlError::UnsupportedParameter(format!(
            "sphere:{d} has no exact polytope; use `sprawl closed-form` or `sprawl mc`"
        ))
        .into()),
    }
}

fn envelope<T: Serialize + DeserializeOwned>(config: &RunConfig, warnings: &[String], result: T) -> String {
    Report {
        config: config.clone(),
        warnings: warnings.to_vec(),
        result,
    }
    .to_json()
}

/// Runs one command; the caller owns the thread pool.
pub fn run(config: &RunConfig) -> CliResult<Outcome> {
    let mut warnings = Vec::new();
    let stdout = match &config.command {
        Command::Exact(a) => run_exact(config, a, &mut warnings)?,
        Command::Mc(a) => run_mc(config, a, &mut warnings)?,
        Command::Cayley(a) => run_cayley(config, a, &mut warnings)?,
        Command::ClosedForm(a) => run_closed_form(config, a)?,
        Command::Mahler(a) => run_mahler(config, a, &mut warnings)?,
        Command::ScanHexagon(a) => run_scan_hexagon(config, a)?,
        Command::ApproxCircle(a) => run_approx_circle(config, a)?,
    };
    Ok(Outcome { stdout, warnings })
}

fn run_exact(config: &RunConfig, a: &ExactArgs, warnings: &mut Vec<String>) -> CliResult<String> {
    let l = load_polytope(&a.input, warnings)?;
    let e = sprawl_exact(&l)?;
    let digits = a.decimal.unwrap_or(20);
    let decimal = to_decimal(&e.value, digits);
    if a.decimal.is_some() && !a.json {
        return Ok(format!("{decimal}\n"));
    }
    let result = ExactResult {
        value: RationalPair(e.value),
        decimal,
        vertices: l.vertices().iter().map(|v| pairs(v)).collect(),
        weights: pairs(&e.weights),
        side_pair_matrix: e.side_pair_matrix.iter().map(|r| pairs(r)).collect(),
    };
    Ok(envelope(config, warnings, result))
}

fn run_mc(config: &RunConfig, a: &McArgs, warnings: &mut Vec<String>) -> CliResult<String> {
    let est = match load_body(&a.input, warnings)? {
        Body::Polytope(l) if a.body => average_distance_volume(&l, a.samples, a.seed)?,
        Body::Polytope(l) => sprawl_mc(&l, a.samples, a.seed)?,
        Body::Sphere(_) if a.body => {
            return Err(SprawlError::UnsupportedParameter("--body needs a polytope".into()).into())
        }
        Body::Sphere(d) => sprawl_mc_sphere(d, a.samples, a.seed)?,
    };
    Ok(envelope(config, warnings, McResult::from(est)))
}

fn pair_mode(a: &CayleyArgs) -> CliResult<PairMode> {
    if a.pairs == "exact" {
        return Ok(PairMode::Exact);
    }
    let k = a
        .pairs
        .strip_prefix("sample:")
        .and_then(|k| k.parse::<u64>().ok())
        .ok_or_else(|| CliError::Usage(format!("--pairs must be `exact` or `sample:K`, got {:?}", a.pairs)))?;
    let seed = a
        .seed
        .ok_or_else(|| CliError::Usage("--seed is required with sampled pairs".into()))?;
    Ok(PairMode::Sampled { pairs: k, seed })
}

/// Free-group generators: one reduced word per line, letters as signed
/// 1-based generator indices.
fn parse_words(g: &FreeGroup, text: &str, warnings: &mut Vec<String>, path: &str) -> CliResult<Vec<Vec<i8>>> {
    let mut words = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut w = g.identity();
        for tok in line.split_whitespace() {
            let x: i8 = tok
                .parse()
                .ok()
                .filter(|&x: &i8| x != 0 && x.unsigned_abs() <= g.rank)
                .ok_or_else(|| SprawlError::InvalidInput(format!("{path} line {}: bad letter {tok:?}", k + 1)))?;
            w = g.mul(&w, &vec![x]);
        }
        if w.is_empty() {
            return Err(SprawlError::InvalidInput(format!("{path} line {}: word reduces to the identity", k + 1)).into());
        }
        words.push(w);
    }
    let missing: Vec<Vec<i8>> = words.iter().map(|w| g.inv(w)).filter(|w| !words.contains(w)).collect();
    if !missing.is_empty() {
        warnings.push(format!("{path}: generating set was not symmetric; added the missing inverses"));
        words.extend(missing);
    }
    words.sort();
    words.dedup();
    Ok(words)
}

fn run_cayley(config: &RunConfig, a: &CayleyArgs, warnings: &mut Vec<String>) -> CliResult<String> {
    let mode = pair_mode(a)?;
    if a.from == 0 || a.from > a.radius {
        return Err(CliError::Usage(format!("need 1 <= --from <= --radius, got {} and {}", a.from, a.radius)));
    }
    let radii: Vec<usize> = (a.from..=a.radius).collect();
    let (tag, arg) = a
        .group
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("unrecognised group {:?}", a.group)))?;
    let param: u32 = arg
        .parse()
        .map_err(|_| CliError::Usage(format!("unrecognised group {:?}", a.group)))?;
    let default = a.gens == "default";
    let result = match tag {
        "zd" => {
            let set = if default {
                GeneratorSet::standard(param as usize)
            } else {
                load_gens(Path::new(&a.gens), warnings)?
            };
            if set.dimension() != param as usize {
                return Err(SprawlError::DimensionMismatch {
                    expected: param as usize,
                    got: set.dimension(),
                }
                .into());
            }
            let g = FreeAbelian {
                dimension: param as usize,
            };
            empirical_sprawl(&g, &FreeAbelian::generators(&set), &radii, mode, DEFAULT_BUDGET)?
        }
        "free" => {
            let rank = u8::try_from(param)
                .ok()
                .filter(|&r| (1..=100).contains(&r))
                .ok_or_else(|| SprawlError::UnsupportedParameter(format!("free group rank {param}")))?;
            let g = FreeGroup { rank };
            let gens = if default {
                g.standard_generators()
            } else {
                parse_words(&g, &read(Path::new(&a.gens))?, warnings, &a.gens)?
            };
            empirical_sprawl(&g, &gens, &radii, mode, DEFAULT_BUDGET)?
        }
        "lamplighter" => {
            if param < 2 {
                return Err(SprawlError::UnsupportedParameter(format!("lamplighter needs m >= 2, got {param}")).into());
            }
            if !default {
                return Err(SprawlError::UnsupportedParameter(
                    "lamplighter groups only take the default generators".into(),
                )
                .into());
            }
            let g = Lamplighter { m: param };
            empirical_sprawl(&g, &g.default_generators(), &radii, mode, DEFAULT_BUDGET)?
        }
        _ => return Err(CliError::Usage(format!("unrecognised group {:?}", a.group))),
    };
    let result = CayleyResult::from(result);
    if a.json {
        Ok(envelope(config, warnings, result))
    } else {
        result.to_csv()
    }
}

fn run_closed_form(config: &RunConfig, a: &ClosedFormArgs) -> CliResult<String> {
    let spec: ShapeSpec = a.shape.parse()?;
    let v = sprawl_formula(&spec, a.digits)?;
    if !a.json {
        return Ok(format!("{}\n", v.decimal()));
    }
    let asymptotics = match asymptotic_gap(&spec) {
        Ok(g) => Some(Asymptotics {
            limit: g.limit.to_decimal(a.digits),
            gap: g.gap.to_f64(),
            leading_term: g.leading_term,
            ratio: g.ratio(),
        }),
        Err(SprawlError::NoAsymptoticKnown(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let result = ClosedFormResult {
        shape: spec.to_string(),
        exact: v.exact.clone().map(RationalPair),
        enclosure: Enclosure::from(&v.interval),
        decimal: v.decimal(),
        asymptotics,
    };
    Ok(envelope(config, &[], result))
}

fn run_mahler(config: &RunConfig, a: &MahlerArgs, warnings: &mut Vec<String>) -> CliResult<String> {
    let l = load_polytope(&a.input, warnings)?;
    let r = mahler_report(l.vrep())?;
    let digits = 30;
    let result = MahlerResult {
        dimension: r.dimension,
        volume: RationalPair(r.volume.clone()),
        polar_volume: RationalPair(r.polar_volume.clone()),
        mahler: RationalPair(r.mahler.clone()),
        polar_vertices: l.functionals().iter().map(|f| pairs(f)).collect(),
        kuperberg_bound: r.kuperberg_bound.to_decimal(digits),
        santalo_bound: r.santalo_bound.to_decimal(digits),
        kuperberg_holds: r.kuperberg_holds,
        santalo_holds: r.santalo_holds,
    };
    if a.json {
        return Ok(envelope(config, warnings, result));
    }
    Ok(format!(
        "volume        {}\npolar volume  {}\nmahler        {} = {}\nkuperberg     {} ({})\nsantalo       {} ({})\n",
        r.volume,
        r.polar_volume,
        r.mahler,
        to_decimal(&r.mahler, digits),
        result.kuperberg_bound,
        if r.kuperberg_holds { "holds" } else { "VIOLATED" },
        result.santalo_bound,
        if r.santalo_holds { "holds" } else { "VIOLATED" },
    ))
}

fn run_scan_hexagon(config: &RunConfig, a: &ScanHexagonArgs) -> CliResult<String> {
    let step = parse_rational(&a.step)?;
    let bad = || CliError::Usage(format!("--step must be 1/k for a positive integer k, got {}", a.step));
    if !num_traits::Signed::is_positive(&step) {
        return Err(bad());
    }
    let inv = step.recip();
    if !inv.is_integer() {
        return Err(bad());
    }
    let steps: i64 = inv
        .to_integer()
        .try_into()
        .map_err(|_| CliError::Usage("--step is too small".into()))?;
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Usage(e.to_string());
    w.write_record(["x", "y", "E", "E_decimal"]).map_err(csv_err)?;
    let grid = hexagon_grid(steps);
    let values: Vec<ExactRational> = {
        use rayon::prelude::*;
        grid.par_iter()
            .map(|(x, y)| Ok(sprawl_exact(&hexagon_xy(x, y)?)?.value))
            .collect::<crate::Result<_>>()?
    };
    for ((x, y), e) in grid.iter().zip(&values) {
        if *e != hexagon_formula(x, y) {
            return Err(SprawlError::InvalidInput(format!("cutline and formula disagree at H_({x},{y})")).into());
        }
        w.write_record([x.to_string(), y.to_string(), e.to_string(), to_decimal(e, 17)])
            .map_err(csv_err)?;
    }
    let text = String::from_utf8(w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?).expect("UTF-8");
    let Some(out) = &a.out else {
        return Ok(text);
    };
    write(out, &text)?;
    let summary = ScanSummary {
        points: grid.len(),
        min: RationalPair(values.iter().min().cloned().expect("grid is nonempty")),
        max: RationalPair(values.iter().max().cloned().expect("grid is nonempty")),
        out: Some(out.clone()),
    };
    Ok(envelope(config, &[], summary))
}

fn run_approx_circle(config: &RunConfig, a: &ApproxCircleArgs) -> CliResult<String> {
    let angles = a.angles.unwrap_or_else(|| default_circle_angles(a.scale));
    let l = approximate_circle_with_angles(a.scale, angles)?;
    if let Some(out) = &a.out {
        write(out, &to_json_text(&l.to_json()))?;
    }
    let e = sprawl_exact(&l)?.value;
    let result = ApproxCircleResult {
        scale: a.scale,
        angles,
        vertices: l.vertices().len(),
        decimal: to_decimal(&e, 20),
        error: crate::rational::to_f64(&e) - 4.0 / std::f64::consts::PI,
        value: RationalPair(e),
    };
    Ok(envelope(config, &[], result))
}

/// Parses `args`, runs in a pool of the requested size and writes the
/// outcome. Returns the process exit code: 0 on success, 1 for a failed
/// computation or input, 2 for a usage error.
pub fn main_with<I, T>(args: I, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            let _ = writeln!(err, "{}", CliError::Usage(first).to_json());
            return ExitCode::from(2);
        }
    };
    let result = run_in_pool(&config);
    match result {
        Ok(o) => {
            for w in &o.warnings {
                let _ = writeln!(err, "{}", serde_json::json!({ "warning": w }));
            }
            let _ = out.write_all(o.stdout.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            let _ = writeln!(err, "{}", e.to_json());
            ExitCode::from(if matches!(e, CliError::Usage(_)) { 2 } else { 1 })
        }
    }
}

/// [`run`] inside a rayon pool sized by `config.threads`.
pub fn run_in_pool(config: &RunConfig) -> CliResult<Outcome> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = config.threads {
        if t == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| CliError::Usage(e.to_string()))?;
    pool.install(|| run(config))
}

pub fn main() -> ExitCode {
    main_with(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> RunConfig {
        RunConfig::try_parse_from(std::iter::once("sprawl").chain(args.iter().copied())).unwrap()
    }

    fn gens_file(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
        let p = dir.path().join(name);
        fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_string()
    }

    #[test]
    fn exact_report_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let f = gens_file(&dir, "std2.gens", "# standard\n1 0\n0 1\n");
        let c = parse(&["exact", "--gens", &f]);
        let o = run(&c).unwrap();
        assert!(o.stdout.contains("\"value\": [4, 3],"), "{}", o.stdout);
        assert_eq!(o.warnings.len(), 1, "asymmetric file is corrected with a warning");
        let back: Report<ExactResult> = Report::from_json(&o.stdout).unwrap();
        assert_eq!(back.config, c);
        assert_eq!(back.result.value.0, crate::rational::rat(4, 3));
        assert_eq!(back.to_json(), o.stdout);
        let d = run(&parse(&["exact", "--gens", &f, "--decimal", "5"])).unwrap();
        assert_eq!(d.stdout, "1.33333\n");
    }

    #[test]
    fn mc_output_is_byte_identical() {
        let c = parse(&["mc", "--shape", "cube:3", "--samples", "20000", "--seed", "4"]);
        let one = run_in_pool(&RunConfig { threads: Some(1), ..c.clone() }).unwrap().stdout;
        let four = run_in_pool(&RunConfig { threads: Some(4), ..c.clone() }).unwrap().stdout;
        let strip = |s: &str| s.lines().filter(|l| !l.contains("\"threads\"")).collect::<Vec<_>>().join("\n");
        assert_eq!(strip(&one), strip(&four));
        assert_eq!(run(&c).unwrap().stdout, run(&c).unwrap().stdout);
        let back: Report<McResult> = Report::from_json(&one).unwrap();
        assert_eq!(back.to_json(), one);
        let mean = back.result.mean;
        assert!((mean - 64.0 / 45.0).abs() < 0.02);
    }

    #[test]
    fn float_format_has_17_digits() {
        assert_eq!(format_float(4.0 / 3.0), "1.3333333333333333e+0");
        assert_eq!(format_float(-2.5e-7), "-2.4999999999999999e-7");
        for x in [0.1, 1e300, 5e-324, std::f64::consts::PI] {
            assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn cayley_csv() {
        let o = run(&parse(&["cayley", "--group", "zd:1", "--radius", "3"])).unwrap();
        assert_eq!(
            o.stdout,
            "n,sphere_size,E_n,stderr\n1,2,1.0000000000000000e+0,\n2,2,1.0000000000000000e+0,\n3,2,1.0000000000000000e+0,\n"
        );
        let s = run(&parse(&["cayley", "--group", "zd:2", "--radius", "5", "--from", "5", "--pairs", "sample:1000", "--seed", "1", "--json"])).unwrap();
        let back: Report<CayleyResult> = Report::from_json(&s.stdout).unwrap();
        assert_eq!(back.result.rows.len(), 1);
        assert!(back.result.rows[0].stderr.is_some());
        assert_eq!(back.to_json(), s.stdout);
        let missing_seed = run(&parse(&["cayley", "--group", "zd:2", "--radius", "2", "--pairs", "sample:10"]));
        assert_eq!(missing_seed.unwrap_err().kind(), "Usage");
    }

    #[test]
    fn free_group_words_file() {
        let dir = tempfile::tempdir().unwrap();
        let f = gens_file(&dir, "f2.words", "1\n2\n");
        let o = run(&parse(&["cayley", "--group", "free:2", "--gens", &f, "--radius", "3", "--json"])).unwrap();
        let back: Report<CayleyResult> = Report::from_json(&o.stdout).unwrap();
        assert_eq!(back.result.generators, 4);
        assert_eq!(o.warnings.len(), 1);
        // 2 - (1/2)(1 + 1/3 + 1/9)/3 at n = 3
        let e3 = back.result.rows[2].exact.clone().unwrap().0;
        assert_eq!(e3, crate::rational::rat(2, 1) - crate::rational::rat(13, 54));
    }

    #[test]
    fn closed_form_and_mahler() {
        let o = run(&parse(&["closed-form", "--shape", "pgon:8", "--digits", "10"])).unwrap();
        assert_eq!(o.stdout, "1.2761423749\n");
        let j = run(&parse(&["closed-form", "--shape", "sphere:3", "--json"])).unwrap();
        let back: Report<ClosedFormResult> = Report::from_json(&j.stdout).unwrap();
        assert_eq!(back.result.exact.unwrap().0, crate::rational::rat(4, 3));
        assert!(back.result.asymptotics.is_some());
        let m = run(&parse(&["mahler", "--shape", "cube:2", "--json"])).unwrap();
        let back: Report<MahlerResult> = Report::from_json(&m.stdout).unwrap();
        assert_eq!(back.result.mahler.0, crate::rational::int(8));
        assert!(back.result.kuperberg_holds && back.result.santalo_holds);
        assert_eq!(back.to_json(), m.stdout);
    }

    #[test]
    fn scan_hexagon_extremes() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("hex.csv");
        let o = run(&parse(&["scan-hexagon", "--step", "1/20", "--out", out.to_str().unwrap()])).unwrap();
        let s: Report<ScanSummary> = Report::from_json(&o.stdout).unwrap();
        assert_eq!(s.result.points, 231);
        assert_eq!(s.result.min.0, crate::rational::rat(23, 18));
        assert_eq!(s.result.max.0, crate::rational::rat(4, 3));
        let csv = fs::read_to_string(&out).unwrap();
        assert_eq!(csv.lines().count(), 232);
        assert!(csv.starts_with("x,y,E,E_decimal\n1,0,4/3,1.33333333333333333\n"));
        assert_eq!(run(&parse(&["scan-hexagon", "--step", "0.3"])).unwrap_err().kind(), "Usage");
    }

    #[test]
    fn approx_circle_scale_50() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("circle.json");
        let o = run(&parse(&["approx-circle", "--scale", "50", "--out", out.to_str().unwrap()])).unwrap();
        let r: Report<ApproxCircleResult> = Report::from_json(&o.stdout).unwrap();
        assert!(r.result.error.abs() < 0.002, "{}", r.result.error);
        // the written perimeter reproduces the value
        let again = run(&parse(&["exact", "--perimeter", out.to_str().unwrap()])).unwrap();
        let e: Report<ExactResult> = Report::from_json(&again.stdout).unwrap();
        assert_eq!(e.result.value, r.result.value);
    }

    #[test]
    fn errors_are_machine_readable() {
        let dir = tempfile::tempdir().unwrap();
        let f = gens_file(&dir, "sub.gens", "2 0\n0 1\n");
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = main_with(["sprawl", "exact", "--gens", &f], &mut out, &mut err);
        assert_eq!(code, ExitCode::from(1));
        let v: serde_json::Value = serde_json::from_slice(&err).unwrap();
        assert_eq!(v["error"]["kind"], "NotGenerating");
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = main_with(["sprawl", "exact"], &mut out, &mut err);
        assert_eq!(code, ExitCode::from(2));
        let v: serde_json::Value = serde_json::from_slice(&err).unwrap();
        assert_eq!(v["error"]["kind"], "Usage");
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = main_with(["sprawl", "exact", "--gens", "/nonexistent/x.gens"], &mut out, &mut err);
        assert_eq!(code, ExitCode::from(1));
        assert!(String::from_utf8(err).unwrap().contains("\"Io\""));
    }

    #[test]
    fn threads_fall_back_to_environment() {
        // clap reads SPRAWL_THREADS when --threads is absent
        let cmd = <RunConfig as clap::CommandFactory>::command();
        let threads = cmd.get_arguments().find(|a| a.get_id() == "threads").unwrap();
        assert_eq!(threads.get_env(), Some(std::ffi::OsStr::new("SPRAWL_THREADS")));
        assert_eq!(parse(&["--threads", "3", "closed-form", "--shape", "circle"]).threads, Some(3));
    }
}
