//! One function per command; each writes its artifacts into the output directory.

use std::path::PathBuf;

use aesthetic_curves::curve_core::{ArcLengthCurve, Curve, Radius};
use aesthetic_curves::equiaffine_esa::{classify_curve, verify_esa, ClassifyTols, CurveClass};
use aesthetic_curves::hsa_affine::verify_hsa;
use aesthetic_curves::lac_msa::{verify_msa, LacFamily};
use aesthetic_curves::lch_lcg::{compute_lcg, compute_lch, convergence_report_with, monotone_segments};
use aesthetic_curves::numeric::linspace;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::config::{Command, InputSpec, JobConfig, Params};
use crate::curve_file::{read_curve_def, CurveDef};
use crate::error::{CliError, Result};
use crate::output::{num, opt_num, write_file, Table};
use crate::svg::{Plot, Series};

/// Environment variable capping worker threads (0 = sequential).
pub const THREADS_ENV: &str = "AESTH_CURVES_THREADS";

#[derive(Debug)]
pub struct JobOutcome {
    pub artifacts: Vec<PathBuf>,
    /// Verification verdict, for commands that verify something.
    pub holds: Option<bool>,
    /// One-line human summary.
    pub summary: String,
}

impl JobOutcome {
    /// Process exit status: 1 for a failed verification under `strict`.
    pub fn exit_code(&self, strict: bool) -> u8 {
        u8::from(strict && self.holds == Some(false))
    }
}

pub fn threads_from_env() -> Result<usize> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("{THREADS_ENV}={v} is not a non-negative integer"))),
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn load(input: &InputSpec) -> Result<Curve<f64>> {
    match input {
        InputSpec::Path(p) => read_curve_def(p)?.build(&p.display().to_string()),
        InputSpec::Inline(def) => def.build("--curve"),
    }
}

pub fn run_job(cfg: &JobConfig) -> Result<JobOutcome> {
    let curve = load(&cfg.input)?;
    std::fs::create_dir_all(&cfg.output_dir).map_err(|e| CliError::io(&cfg.output_dir, e))?;
    let p = Params(&cfg.params);
    let job = Job { cfg, curve: &curve, p };
    match cfg.command {
        Command::Generate => job.generate(),
        Command::Analyze => job.analyze(),
        Command::Lch => job.lch(),
        Command::Lcg => job.lcg(),
        Command::Converge => job.converge(),
        Command::VerifyMsa => job.verify_msa(),
        Command::VerifyHsa => job.verify_hsa(),
        Command::VerifyEsa => job.verify_esa(),
        Command::Classify => job.classify(),
    }
}

struct Job<'a> {
    cfg: &'a JobConfig,
    curve: &'a Curve<f64>,
    p: Params<'a>,
}

fn radius_pair(r: Radius<f64>) -> (f64, f64) {
    match r {
        Radius::Finite(r) => (1.0 / r, r),
        Radius::Infinite => (0.0, f64::INFINITY),
    }
}

impl Job<'_> {
    fn out(&self) -> &std::path::Path {
        &self.cfg.output_dir
    }

    fn arc(&self) -> Result<ArcLengthCurve<f64>> {
        Ok(ArcLengthCurve::new(self.curve)?)
    }

    fn svg(&self, name: &str, plot: &Plot) -> Result<PathBuf> {
        write_file(self.out(), name, plot.render().as_bytes())
    }

    fn generate(&self) -> Result<JobOutcome> {
        let n = self.p.usize("samples", 400)?;
        if n < 5 {
            return Err(CliError::Config("params.samples: need at least 5".into()));
        }
        let arc = self.arc()?;
        let (lo, hi) = self.curve.domain();
        let ts = linspace(lo, hi, n - 1);
        let pts: Vec<_> = ts.iter().map(|&t| self.curve.eval(t)).collect();
        let mut table = Table::new(&["t", "x", "y", "s", "kappa", "rho"]);
        for (&t, z) in ts.iter().zip(&pts) {
            let (kappa, rho) = radius_pair(self.curve.radius(t));
            table.push(vec![
                num(t),
                num(z.x),
                num(z.y),
                num(arc.s_of_t(t)),
                num(kappa),
                num(rho),
            ]);
        }
        let def = CurveDef::sampled(ts, &pts);
        let mut text = serde_json::to_string_pretty(&def).expect("sampled curves serialize");
        text.push('\n');
        let plot = Plot {
            title: "curve".into(),
            x_label: "x".into(),
            y_label: "y".into(),
            series: vec![Series {
                name: "γ".into(),
                points: pts.iter().map(|z| (z.x, z.y)).collect(),
            }],
        };
        Ok(JobOutcome {
            artifacts: vec![
                table.write(self.out(), "curve.csv")?,
                write_file(self.out(), "curve.json", text.as_bytes())?,
                self.svg("curve.svg", &plot)?,
            ],
            holds: None,
            summary: format!("{n} samples, arc length {}", arc.s_all()),
        })
    }

    fn analyze(&self) -> Result<JobOutcome> {
        let arc = self.arc()?;
        let (lo, hi) = self.curve.domain();
        let (mut rmin, mut rmax, mut inflections) = (f64::INFINITY, 0.0f64, 0usize);
        let mut prev_sign = 0.0;
        for t in self.curve.checkpoint_params(512) {
            let j = self.curve.jet(t);
            let det = j.d1.cross(j.d2);
            if det != 0.0 && prev_sign != 0.0 && det.signum() != prev_sign {
                inflections += 1;
            }
            if det != 0.0 {
                prev_sign = det.signum();
            }
            let r = radius_pair(self.curve.radius(t)).1.abs();
            rmin = rmin.min(r);
            rmax = rmax.max(r);
        }
        // Constant or infinite radius has no monotone segments.
        let segments = monotone_segments(&arc).unwrap_or_default();
        let mut summary = Table::new(&["quantity", "value"]);
        for (k, v) in [
            ("t_lo", num(lo)),
            ("t_hi", num(hi)),
            ("s_all", num(arc.s_all())),
            ("extent", num(self.curve.extent())),
            ("rho_min", num(rmin)),
            ("rho_max", num(rmax)),
            ("inflections", inflections.to_string()),
            ("monotone_segments", segments.len().to_string()),
        ] {
            summary.push(vec![k.to_string(), v]);
        }
        let mut seg = Table::new(&["segment", "s_lo", "s_hi"]);
        for (i, &(a, b)) in segments.iter().enumerate() {
            seg.push(vec![i.to_string(), num(a), num(b)]);
        }
        Ok(JobOutcome {
            artifacts: vec![
                summary.write(self.out(), "summary.csv")?,
                seg.write(self.out(), "segments.csv")?,
            ],
            holds: None,
            summary: format!(
                "arc length {}, {} monotone segment(s), {inflections} inflection(s)",
                arc.s_all(),
                segments.len()
            ),
        })
    }

    /// `(M, N)` pairs from equally long lists.
    fn grid(&self, m_default: &[usize], n_default: &[usize]) -> Result<Vec<(usize, usize)>> {
        let m = self.p.usize_list("M", m_default)?;
        let n = self.p.usize_list("N", n_default)?;
        if m.len() != n.len() || m.is_empty() {
            return Err(CliError::Config(format!(
                "M and N must be non-empty lists of equal length, got {} and {}",
                m.len(),
                n.len()
            )));
        }
        for (&a, &b) in m.iter().zip(&n) {
            if a < 2 || b < a {
                return Err(CliError::Config(format!(
                    "need M >= 2 and N >= M, got M = {a}, N = {b}"
                )));
            }
        }
        Ok(m.into_iter().zip(n).collect())
    }

    fn lch(&self) -> Result<JobOutcome> {
        let arc = self.arc()?;
        let grid = self.grid(&[10], &[120])?;
        let mut table = Table::new(&["M", "N", "bin_index", "X_left", "Y"]);
        let mut series = Vec::new();
        for &(m, n) in &grid {
            let h = compute_lch(&arc, m, n)?;
            let w = h.bin_width();
            let mut pts = Vec::new();
            for (i, b) in h.bins.iter().enumerate() {
                let y = b.y.map_or("empty".to_string(), num);
                table.push(vec![m.to_string(), n.to_string(), i.to_string(), num(b.x_left), y]);
                match b.y {
                    Some(y) => pts.extend([(b.x_left, y), (b.x_left + w, y)]),
                    None => pts.push((f64::NAN, f64::NAN)),
                }
            }
            series.push(Series {
                name: format!("M={m}, N={n}"),
                points: pts,
            });
        }
        let plot = Plot {
            title: "logarithmic curvature histogram".into(),
            x_label: "X = log ρ".into(),
            y_label: "Y".into(),
            series,
        };
        Ok(JobOutcome {
            artifacts: vec![table.write(self.out(), "lch.csv")?, self.svg("lch.svg", &plot)?],
            holds: None,
            summary: format!("{} histogram(s), {} bins", grid.len(), table.len()),
        })
    }

    fn lcg(&self) -> Result<JobOutcome> {
        let arc = self.arc()?;
        let n = self.p.usize("samples", 400)?;
        let plot = compute_lcg(&arc, n)?;
        let mut table = Table::new(&["s", "X", "Y", "grad"]);
        for q in &plot.samples {
            table.push(vec![num(q.s), num(q.x), num(q.y), num(q.grad)]);
        }
        let series = (0..plot.monotone_segments.len())
            .map(|k| Series {
                name: format!("segment {k}"),
                points: plot.segment(k).map(|q| (q.x, q.y)).collect(),
            })
            .collect();
        let svg = Plot {
            title: "logarithmic curvature graph".into(),
            x_label: "X = log ρ".into(),
            y_label: "Y = log |ds/d log ρ|".into(),
            series,
        };
        Ok(JobOutcome {
            artifacts: vec![table.write(self.out(), "lcg.csv")?, self.svg("lcg.svg", &svg)?],
            holds: None,
            summary: format!("{} samples on {} segment(s)", table.len(), plot.monotone_segments.len()),
        })
    }

    fn converge(&self) -> Result<JobOutcome> {
        let arc = self.arc()?;
        let grid = self.grid(&[10, 30, 80], &[120, 240, 1000])?;
        let interval = match self.p.interval("interval")? {
            Some(i) => i,
            None => {
                let (s0, s1) = arc.s_range();
                let x = |s: f64| arc.radius(s).finite().map(|r| r.abs().ln());
                let (Some(a), Some(b)) = (x(s0), x(s1)) else {
                    return Err(CliError::Config(
                        "radius is infinite at an end; pass params.interval".into(),
                    ));
                };
                let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed);
                let (u, v) = (rng.gen_range(a.min(b)..=a.max(b)), rng.gen_range(a.min(b)..=a.max(b)));
                (u.min(v), u.max(v))
            }
        };
        let report = convergence_report_with(&arc, &grid, interval, threads_from_env()?)?;
        let mut table = Table::new(&["M", "N", "interval_error", "tv_error"]);
        for r in &report.rows {
            table.push(vec![
                r.m.to_string(),
                r.n.to_string(),
                num(r.interval_error),
                num(r.tv_error),
            ]);
        }
        let lg = |v: f64| if v > 0.0 { v.log10() } else { f64::NAN };
        let xs: Vec<f64> = report.rows.iter().map(|r| (r.m as f64).log10()).collect();
        let plot = Plot {
            title: format!("histogram error, interval [{}, {})", num(interval.0), num(interval.1)),
            x_label: "log10 M".into(),
            y_label: "log10 error".into(),
            series: vec![
                Series {
                    name: "interval".into(),
                    points: xs
                        .iter()
                        .zip(&report.rows)
                        .map(|(&x, r)| (x, lg(r.interval_error)))
                        .collect(),
                },
                Series {
                    name: "total variation".into(),
                    points: xs.iter().zip(&report.rows).map(|(&x, r)| (x, lg(r.tv_error))).collect(),
                },
            ],
        };
        Ok(JobOutcome {
            artifacts: vec![
                table.write(self.out(), "converge.csv")?,
                self.svg("converge.svg", &plot)?,
            ],
            holds: Some(report.interval_decreasing),
            summary: format!(
                "interval [{}, {}): interval error decreasing = {}, total variation decreasing = {}",
                interval.0, interval.1, report.interval_decreasing, report.tv_decreasing
            ),
        })
    }

    fn verify_msa(&self) -> Result<JobOutcome> {
        let arc = self.arc()?;
        let beta = self.p.f64("beta", 1.0)?;
        let eps = self.p.positive_list("eps", &[0.05, 0.2, 0.5])?;
        let tol = self.p.positive("tol", 1e-6)?;
        let r = verify_msa(&arc, beta, &eps, tol)?;
        // A line admits any factors; a failed fit has none.
        let line = r.is_line();
        let factor = |v: Option<f64>| match v {
            Some(x) => num(x),
            None if line => "arbitrary".to_string(),
            None => String::new(),
        };
        let (alpha, xi, eta) = match r.fitted {
            Some(LacFamily::Lac(p)) => (num(p.alpha), num(p.xi), num(p.eta)),
            _ => (String::new(), String::new(), String::new()),
        };
        let mut table = Table::new(&["holds", "mu", "nu", "beta", "alpha", "xi", "eta", "residual"]);
        table.push(vec![
            r.holds.to_string(),
            factor(r.mu),
            factor(r.nu),
            num(r.beta),
            alpha,
            xi,
            eta,
            num(r.residual),
        ]);
        let family = match r.fitted {
            Some(LacFamily::Line) => "line".to_string(),
            Some(LacFamily::Circle { radius }) => format!("circle (radius {radius})"),
            Some(LacFamily::Lac(p)) => format!("lac (alpha {})", p.alpha),
            None => "none".to_string(),
        };
        Ok(JobOutcome {
            artifacts: vec![table.write(self.out(), "msa.csv")?],
            holds: Some(r.holds),
            summary: format!("holds = {}, fitted {family}, residual {}", r.holds, r.residual),
        })
    }

    fn verify_hsa(&self) -> Result<JobOutcome> {
        let intervals = self.p.intervals("intervals", &[(0.0, 0.5), (0.25, 0.75), (0.5, 1.0)])?;
        let tol = self.p.positive("tol", 1e-8)?;
        let r = verify_hsa(self.curve, &intervals, tol)?;
        let mut table = Table::new(&[
            "holds",
            "classification",
            "interval_lo",
            "interval_hi",
            "a11",
            "a12",
            "a21",
            "a22",
            "bx",
            "by",
            "residual",
        ]);
        let class = r.classification.name();
        for w in &r.witness_maps {
            let m = w.map.linear.rows;
            table.push(vec![
                r.holds.to_string(),
                class.to_string(),
                num(w.interval.0),
                num(w.interval.1),
                num(m[0][0]),
                num(m[0][1]),
                num(m[1][0]),
                num(m[1][1]),
                num(w.map.offset.x),
                num(w.map.offset.y),
                num(w.residual),
            ]);
        }
        if table.is_empty() {
            let mut row = vec![r.holds.to_string(), class.to_string()];
            row.extend(std::iter::repeat_n(String::new(), 8));
            row.push(num(r.max_residual));
            table.push(row);
        }
        Ok(JobOutcome {
            artifacts: vec![table.write(self.out(), "hsa.csv")?],
            holds: Some(r.holds),
            summary: format!(
                "holds = {}, classification {class}, residual {}",
                r.holds, r.max_residual
            ),
        })
    }

    fn verify_esa(&self) -> Result<JobOutcome> {
        let eps = self.p.positive_list("eps", &[0.05, 0.1])?;
        let tol = self.p.positive("tol", 1e-6)?;
        let r = verify_esa(self.curve, &eps, tol)?;
        let family = r.family.map_or("none", |f| f.name());
        let mut table = Table::new(&["holds", "family", "kappa_sa", "spread", "witness_residual"]);
        table.push(vec![
            r.holds.to_string(),
            family.to_string(),
            num(r.kappa_sa),
            num(r.kappa_sa_spread),
            num(r.witness_residual),
        ]);
        Ok(JobOutcome {
            artifacts: vec![table.write(self.out(), "esa.csv")?],
            holds: Some(r.holds),
            summary: format!("holds = {}, family {family}, kappa_sa {}", r.holds, r.kappa_sa),
        })
    }

    fn classify(&self) -> Result<JobOutcome> {
        let mut tols = ClassifyTols::default();
        tols.msa = self.p.positive("msa_tol", tols.msa)?;
        tols.esa = self.p.positive("esa_tol", tols.esa)?;
        let r = classify_curve(self.curve, &tols);
        let (alpha, xi, eta, radius) = match r.class {
            CurveClass::Lac(p) => (Some(p.alpha), Some(p.xi), Some(p.eta), None),
            CurveClass::Circle { radius } => (None, None, None, Some(radius)),
            _ => (None, None, None, None),
        };
        let msa_residual = r.msa.as_ref().map(|m| m.residual);
        let esa = r.esa.as_ref();
        let mut table = Table::new(&[
            "class",
            "alpha",
            "xi",
            "eta",
            "radius",
            "msa_residual",
            "esa_spread",
            "esa_witness_residual",
        ]);
        table.push(vec![
            r.class.name().to_string(),
            opt_num(alpha),
            opt_num(xi),
            opt_num(eta),
            opt_num(radius),
            opt_num(msa_residual),
            opt_num(esa.map(|e| e.invariant_spread())),
            opt_num(esa.map(|e| e.witness_residual)),
        ]);
        let record = json!({
            "class": r.class.name(),
            "params": { "alpha": alpha, "xi": xi, "eta": eta, "radius": radius },
            "scale": r.scale,
            "msa": r.msa.as_ref().map(|m| json!({
                "holds": m.holds,
                "residual": m.residual,
                "mu": m.mu,
                "nu": m.nu,
            })),
            "esa": esa.map(|e| json!({
                "holds": e.holds,
                "family": e.family.map(|f| f.name()),
                "kappa_sa": e.kappa_sa,
                "invariant_mean": e.invariant_mean(),
                "invariant_spread": e.invariant_spread(),
                "witness_residual": e.witness_residual,
            })),
            "notes": r.notes,
        });
        let mut text = serde_json::to_string_pretty(&record).expect("json values serialize");
        text.push('\n');
        Ok(JobOutcome {
            artifacts: vec![
                table.write(self.out(), "classify.csv")?,
                write_file(self.out(), "classify.json", text.as_bytes())?,
            ],
            holds: None,
            summary: r.class.name().to_string(),
        })
    }
}
