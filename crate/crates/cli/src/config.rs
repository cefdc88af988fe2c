//! Job configuration: command-line flags layered over an optional JSON file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::curve_file::{parse_curve_json, CurveDef};
use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Sample the curve: curve.csv (t,x,y,s,kappa,rho), curve.json (sampled definition), curve.svg.
    Generate,
    /// Arc length, radius range and monotone-radius segments: summary.csv, segments.csv.
    Analyze,
    /// Logarithmic curvature histograms for each (M, N) pair: lch.csv, lch.svg.
    Lch,
    /// Logarithmic curvature graph: lcg.csv, lcg.svg.
    Lcg,
    /// Histogram errors against the graph density along an (M, N) grid: converge.csv, converge.svg.
    Converge,
    /// Self-affinity under parameter shifts in similarity geometry: msa.csv.
    VerifyMsa,
    /// Subcurves as affine images of the whole curve: hsa.csv.
    VerifyHsa,
    /// Constant equiaffine curvature and conic shift witnesses: esa.csv.
    VerifyEsa,
    /// Line, circle, LAC, conic or other: classify.csv, classify.json.
    Classify,
}

impl Command {
    pub const ALL: [Command; 9] = [
        Command::Generate,
        Command::Analyze,
        Command::Lch,
        Command::Lcg,
        Command::Converge,
        Command::VerifyMsa,
        Command::VerifyHsa,
        Command::VerifyEsa,
        Command::Classify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Generate => "generate",
            Command::Analyze => "analyze",
            Command::Lch => "lch",
            Command::Lcg => "lcg",
            Command::Converge => "converge",
            Command::VerifyMsa => "verify-msa",
            Command::VerifyHsa => "verify-hsa",
            Command::VerifyEsa => "verify-esa",
            Command::Classify => "classify",
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "aesth-curves",
    version,
    about = "Planar curve analysis: LCH/LCG, log-aesthetic curves and self-affinity checks."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub args: JobArgs,
}

/// Flags shared by all commands. Flags override values from `--config`.
#[derive(Debug, Default, Args)]
pub struct JobArgs {
    /// Curve definition: JSON (analytic or sampled) or CSV with t,x,y columns.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Inline JSON curve definition, used instead of --input.
    #[arg(long, global = true)]
    pub curve: Option<String>,
    /// JSON job file with input, output_dir, params, seed and strict.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory [default: .]
    #[arg(long = "out", short = 'o', global = true)]
    pub output_dir: Option<PathBuf>,
    /// Seed for randomized choices (the converge interval) [default: 0]
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Exit with status 1 when a verification does not hold.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Histogram bin counts, comma separated [lch: 10; converge: 10,30,80]
    #[arg(long = "M", value_delimiter = ',', global = true)]
    pub m: Option<Vec<usize>>,
    /// Sample counts paired with --M [lch: 120; converge: 120,240,1000]
    #[arg(long = "N", value_delimiter = ',', global = true)]
    pub n: Option<Vec<usize>>,
    /// Rate of the self-affine reparameterization [default: 1]
    #[arg(long, global = true)]
    pub beta: Option<f64>,
    /// Parameter shifts, comma separated [verify-msa: 0.05,0.2,0.5; verify-esa: 0.05,0.1]
    #[arg(long, value_delimiter = ',', global = true)]
    pub eps: Option<Vec<f64>>,
    /// Verification tolerance [verify-msa: 1e-6; verify-hsa: 1e-8; verify-esa: 1e-6]
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Sample count [generate: 400; lcg: 400]
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Interval [a,b) in X = log ρ for converge, as "a,b" [default: random from --seed]
    #[arg(long, value_delimiter = ',', global = true, allow_hyphen_values = true)]
    pub interval: Option<Vec<f64>>,
    /// Sub-intervals of the normalized domain [0,1] for verify-hsa, as "a,b;c,d" [default: 0,0.5;0.25,0.75;0.5,1]
    #[arg(long, global = true)]
    pub intervals: Option<String>,
    /// Similarity-stage tolerance for classify [default: 1e-4]
    #[arg(long, global = true)]
    pub msa_tol: Option<f64>,
    /// Equiaffine-stage tolerance for classify [default: 1e-3]
    #[arg(long, global = true)]
    pub esa_tol: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InputSpec {
    Path(PathBuf),
    Inline(CurveDef),
}

/// Contents of a `--config` file; every field is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub command: Option<Command>,
    pub input: Option<InputSpec>,
    pub output_dir: Option<PathBuf>,
    #[serde(default)]
    pub params: BTreeMap<String, Value>,
    pub seed: Option<u64>,
    pub strict: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JobConfig {
    pub command: Command,
    pub input: InputSpec,
    pub output_dir: PathBuf,
    pub params: BTreeMap<String, Value>,
    pub seed: u64,
    pub strict: bool,
}

impl ConfigFile {
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let mut cfg: ConfigFile = serde_json::from_str(&text).map_err(|e| CliError::Parse {
            origin: path.display().to_string(),
            line: e.line(),
            column: e.column(),
            msg: e.to_string(),
        })?;
        // Relative paths in the file are relative to the file.
        let dir = path.parent().unwrap_or(Path::new(""));
        if let Some(InputSpec::Path(p)) = &mut cfg.input {
            if p.is_relative() {
                *p = dir.join(&*p);
            }
        }
        if let Some(p) = &mut cfg.output_dir {
            if p.is_relative() {
                *p = dir.join(&*p);
            }
        }
        Ok(cfg)
    }
}

fn parse_intervals(text: &str) -> Result<Vec<[f64; 2]>> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let v: Vec<f64> = pair
                .split(',')
                .map(|x| x.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| CliError::Config(format!("--intervals: `{pair}` is not a pair of numbers")))?;
            match v[..] {
                [a, b] => Ok([a, b]),
                _ => Err(CliError::Config(format!("--intervals: `{pair}` is not a pair"))),
            }
        })
        .collect()
}

impl JobConfig {
    /// Merges flags over the config file named by `--config`, if any.
    pub fn from_cli(command: Command, args: &JobArgs) -> Result<Self> {
        let file = match &args.config {
            Some(p) => ConfigFile::read(p)?,
            None => ConfigFile::default(),
        };
        if let Some(c) = file.command {
            if c != command {
                return Err(CliError::Config(format!(
                    "config file is for `{}` but the command is `{}`",
                    c.name(),
                    command.name()
                )));
            }
        }
        let input = match (&args.curve, &args.input, file.input) {
            (Some(text), _, _) => InputSpec::Inline(parse_curve_json(text, "--curve")?),
            (None, Some(p), _) => InputSpec::Path(p.clone()),
            (None, None, Some(i)) => i,
            (None, None, None) => {
                return Err(CliError::Config(
                    "no input: pass --input, --curve or a config with `input`".into(),
                ))
            }
        };
        let mut params = file.params;
        let mut set = |k: &str, v: Value| {
            params.insert(k.to_string(), v);
        };
        if let Some(v) = &args.m {
            set("M", json!(v));
        }
        if let Some(v) = &args.n {
            set("N", json!(v));
        }
        if let Some(v) = args.beta {
            set("beta", json!(v));
        }
        if let Some(v) = &args.eps {
            set("eps", json!(v));
        }
        if let Some(v) = args.tol {
            set("tol", json!(v));
        }
        if let Some(v) = args.samples {
            set("samples", json!(v));
        }
        if let Some(v) = &args.interval {
            set("interval", json!(v));
        }
        if let Some(v) = &args.intervals {
            set("intervals", json!(parse_intervals(v)?));
        }
        if let Some(v) = args.msa_tol {
            set("msa_tol", json!(v));
        }
        if let Some(v) = args.esa_tol {
            set("esa_tol", json!(v));
        }
        Ok(JobConfig {
            command,
            input,
            output_dir: args
                .output_dir
                .clone()
                .or(file.output_dir)
                .unwrap_or_else(|| PathBuf::from(".")),
            params,
            seed: args.seed.or(file.seed).unwrap_or(0),
            strict: args.strict || file.strict.unwrap_or(false),
        })
    }
}

/// Typed, validated access to the `params` map.
pub struct Params<'a>(pub &'a BTreeMap<String, Value>);

impl Params<'_> {
    fn bad(key: &str, what: &str) -> CliError {
        CliError::Config(format!("params.{key}: expected {what}"))
    }

    pub fn f64(&self, key: &str, default: f64) -> Result<f64> {
        match self.0.get(key) {
            None => Ok(default),
            Some(v) => v.as_f64().ok_or_else(|| Self::bad(key, "a number")),
        }
    }

    /// A strictly positive finite number.
    pub fn positive(&self, key: &str, default: f64) -> Result<f64> {
        let v = self.f64(key, default)?;
        if v > 0.0 && v.is_finite() {
            Ok(v)
        } else {
            Err(Self::bad(key, "a positive number"))
        }
    }

    pub fn usize(&self, key: &str, default: usize) -> Result<usize> {
        match self.0.get(key) {
            None => Ok(default),
            Some(v) => v
                .as_u64()
                .map(|u| u as usize)
                .ok_or_else(|| Self::bad(key, "a non-negative integer")),
        }
    }

    /// A list of integers; a bare integer counts as a list of one.
    pub fn usize_list(&self, key: &str, default: &[usize]) -> Result<Vec<usize>> {
        match self.0.get(key) {
            None => Ok(default.to_vec()),
            Some(Value::Array(a)) => a
                .iter()
                .map(|v| v.as_u64().map(|u| u as usize))
                .collect::<Option<_>>()
                .ok_or_else(|| Self::bad(key, "a list of non-negative integers")),
            Some(v) => v
                .as_u64()
                .map(|u| vec![u as usize])
                .ok_or_else(|| Self::bad(key, "a list of non-negative integers")),
        }
    }

    /// A non-empty list of positive numbers; a bare number counts as a list of one.
    pub fn positive_list(&self, key: &str, default: &[f64]) -> Result<Vec<f64>> {
        let v = match self.0.get(key) {
            None => default.to_vec(),
            Some(Value::Array(a)) => a
                .iter()
                .map(Value::as_f64)
                .collect::<Option<_>>()
                .ok_or_else(|| Self::bad(key, "a list of numbers"))?,
            Some(v) => vec![v.as_f64().ok_or_else(|| Self::bad(key, "a list of numbers"))?],
        };
        if v.is_empty() || v.iter().any(|&x| !(x > 0.0 && x.is_finite())) {
            return Err(Self::bad(key, "a non-empty list of positive numbers"));
        }
        Ok(v)
    }

    /// A pair `[a, b]` with `a < b`.
    pub fn interval(&self, key: &str) -> Result<Option<(f64, f64)>> {
        let Some(v) = self.0.get(key) else {
            return Ok(None);
        };
        match pair(v) {
            Some((a, b)) if a < b => Ok(Some((a, b))),
            _ => Err(Self::bad(key, "a pair [a, b] with a < b")),
        }
    }

    pub fn intervals(&self, key: &str, default: &[(f64, f64)]) -> Result<Vec<(f64, f64)>> {
        let Some(v) = self.0.get(key) else {
            return Ok(default.to_vec());
        };
        let list = v
            .as_array()
            .and_then(|a| a.iter().map(pair).collect::<Option<Vec<_>>>())
            .filter(|l| !l.is_empty())
            .ok_or_else(|| Self::bad(key, "a non-empty list of pairs [a, b]"))?;
        Ok(list)
    }
}

fn pair(v: &Value) -> Option<(f64, f64)> {
    match v.as_array()?.as_slice() {
        [a, b] => Some((a.as_f64()?, b.as_f64()?)),
        _ => None,
    }
}
