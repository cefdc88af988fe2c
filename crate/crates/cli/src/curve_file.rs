//! Curve definition files: JSON (analytic or sampled) and `t,x,y` CSV.

use std::collections::BTreeMap;
use std::path::Path;

use aesthetic_curves::curve_core::{Analytic, Curve};
use aesthetic_curves::lac_msa::{generate_lac, LacParams};
use aesthetic_curves::{CurveError, Vec2};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Integration steps for `lac` definitions unless `params.steps` is given.
pub const DEFAULT_LAC_STEPS: usize = 2000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CurveDef {
    Analytic {
        name: String,
        #[serde(default)]
        params: BTreeMap<String, f64>,
        domain: [f64; 2],
        #[serde(default, skip_serializing_if = "Option::is_none")]
        base_point: Option<f64>,
    },
    Sampled {
        t: Vec<f64>,
        x: Vec<f64>,
        y: Vec<f64>,
    },
}

impl CurveDef {
    pub fn sampled(t: Vec<f64>, pts: &[Vec2<f64>]) -> Self {
        CurveDef::Sampled {
            t,
            x: pts.iter().map(|p| p.x).collect(),
            y: pts.iter().map(|p| p.y).collect(),
        }
    }

    /// Builds the curve; `origin` names the source in diagnostics.
    pub fn build(&self, origin: &str) -> Result<Curve<f64>> {
        match self {
            CurveDef::Analytic {
                name,
                params,
                domain,
                base_point,
            } => build_analytic(origin, name, params, *domain, *base_point),
            CurveDef::Sampled { t, x, y } => {
                if t.len() != x.len() || t.len() != y.len() {
                    return Err(CliError::Validation {
                        origin: origin.to_string(),
                        msg: format!("t, x, y have lengths {}, {}, {}", t.len(), x.len(), y.len()),
                    });
                }
                let pts = x.iter().zip(y).map(|(&a, &b)| Vec2::new(a, b)).collect();
                Curve::sampled(t.clone(), pts, None).map_err(|e| validation(origin, e))
            }
        }
    }
}

fn validation(origin: &str, e: CurveError) -> CliError {
    match e {
        CurveError::InvalidCurve(_)
        | CurveError::InsufficientSamples { .. }
        | CurveError::DegenerateCurve { .. }
        | CurveError::InvalidParams(_) => CliError::Validation {
            origin: origin.to_string(),
            msg: e.to_string(),
        },
        other => CliError::Curve(other),
    }
}

struct Params<'a> {
    origin: &'a str,
    map: &'a BTreeMap<String, f64>,
}

impl Params<'_> {
    fn get(&self, key: &str, default: Option<f64>) -> Result<f64> {
        match (self.map.get(key), default) {
            (Some(&v), _) if v.is_finite() => Ok(v),
            (Some(_), _) => Err(CliError::field(self.origin, &format!("params.{key}"), "must be finite")),
            (None, Some(d)) => Ok(d),
            (None, None) => Err(CliError::field(self.origin, &format!("params.{key}"), "missing")),
        }
    }

    fn only(&self, allowed: &[&str]) -> Result<()> {
        match self.map.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(CliError::field(
                self.origin,
                &format!("params.{k}"),
                format!("unknown parameter; expected one of {}", allowed.join(", ")),
            )),
            None => Ok(()),
        }
    }
}

fn build_analytic(
    origin: &str,
    name: &str,
    params: &BTreeMap<String, f64>,
    domain: [f64; 2],
    base_point: Option<f64>,
) -> Result<Curve<f64>> {
    let p = Params { origin, map: params };
    let (lo, hi) = (domain[0], domain[1]);
    let base = base_point.unwrap_or(lo);
    let pair = |a: &str, b: &str| -> Result<(f64, f64)> {
        p.only(&[a, b])?;
        Ok((p.get(a, None)?, p.get(b, None)?))
    };
    let analytic = match name {
        "circle" => {
            p.only(&["cx", "cy", "r"])?;
            Analytic::Circle {
                center: Vec2::new(p.get("cx", Some(0.0))?, p.get("cy", Some(0.0))?),
                radius: p.get("r", None)?,
            }
        }
        "line" => {
            p.only(&["x0", "y0", "dx", "dy"])?;
            Analytic::Line {
                origin: Vec2::new(p.get("x0", Some(0.0))?, p.get("y0", Some(0.0))?),
                direction: Vec2::new(p.get("dx", None)?, p.get("dy", None)?),
            }
        }
        "parabola" => {
            let (a, b) = pair("a", "b")?;
            Analytic::Parabola { a, b }
        }
        "ellipse" => {
            let (a, b) = pair("a", "b")?;
            Analytic::Ellipse { a, b }
        }
        "hyperbola" => {
            let (a, b) = pair("a", "b")?;
            Analytic::Hyperbola { a, b }
        }
        "log_spiral" => {
            let (a, b) = pair("a", "b")?;
            Analytic::LogSpiral { a, b }
        }
        "sine" => {
            let (amp, freq) = pair("amp", "freq")?;
            Analytic::Sine { amp, freq }
        }
        "clothoid" => {
            p.only(&["a"])?;
            Analytic::Clothoid { a: p.get("a", None)? }
        }
        "lac" => {
            p.only(&["alpha", "xi", "eta", "steps"])?;
            let steps = p.get("steps", Some(DEFAULT_LAC_STEPS as f64))?;
            if steps.fract() != 0.0 || steps < 0.0 {
                return Err(CliError::field(
                    origin,
                    "params.steps",
                    "must be a non-negative integer",
                ));
            }
            let lac = LacParams::new(p.get("alpha", None)?, p.get("xi", None)?, p.get("eta", None)?, (lo, hi))
                .map_err(|e| validation(origin, e))?;
            let curve = generate_lac(&lac, steps as usize).map_err(|e| validation(origin, e))?;
            return match base_point {
                Some(b) => curve.with_base_point(b).map_err(|e| validation(origin, e)),
                None => Ok(curve),
            };
        }
        other => {
            return Err(CliError::field(
                origin,
                "name",
                format!(
                    "unknown curve `{other}`; expected circle, line, parabola, ellipse, hyperbola, \
                     log_spiral, clothoid, lac or sine"
                ),
            ))
        }
    };
    Curve::analytic(analytic, (lo, hi), base).map_err(|e| validation(origin, e))
}

/// Parses a JSON curve definition.
pub fn parse_curve_json(text: &str, origin: &str) -> Result<CurveDef> {
    serde_json::from_str(text).map_err(|e| CliError::Parse {
        origin: origin.to_string(),
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })
}

/// Reads `t,x,y` columns (by header name; other columns are ignored).
pub fn parse_samples_csv(text: &str, origin: &str) -> Result<CurveDef> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = rdr.headers().map_err(|e| csv_error(origin, &e))?.clone();
    let col = |name: &str| {
        header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| CliError::field(origin, name, "missing column in header"))
    };
    let (it, ix, iy) = (col("t")?, col("x")?, col("y")?);
    let (mut t, mut x, mut y) = (Vec::new(), Vec::new(), Vec::new());
    for rec in rdr.records() {
        let rec = rec.map_err(|e| csv_error(origin, &e))?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let num = |i: usize, name: &str| -> Result<f64> {
            let raw = rec.get(i).unwrap_or("");
            raw.parse::<f64>().map_err(|_| CliError::Parse {
                origin: origin.to_string(),
                line,
                column: i + 1,
                msg: format!("field `{name}`: `{raw}` is not a number"),
            })
        };
        t.push(num(it, "t")?);
        x.push(num(ix, "x")?);
        y.push(num(iy, "y")?);
    }
    Ok(CurveDef::Sampled { t, x, y })
}

fn csv_error(origin: &str, e: &csv::Error) -> CliError {
    CliError::Parse {
        origin: origin.to_string(),
        line: e.position().map_or(0, |p| p.line() as usize),
        column: 0,
        msg: e.to_string(),
    }
}

/// Reads a curve definition: `.csv` files as samples, anything else as JSON.
pub fn read_curve_def(path: &Path) -> Result<CurveDef> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let origin = path.display().to_string();
    let is_csv = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    if is_csv {
        parse_samples_csv(&text, &origin)
    } else {
        parse_curve_json(&text, &origin)
    }
}

/// Reads and builds the curve in `path`.
pub fn parse_curve_file(path: &Path) -> Result<Curve<f64>> {
    read_curve_def(path)?.build(&path.display().to_string())
}
