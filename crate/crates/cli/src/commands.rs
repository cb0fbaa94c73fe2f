use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use monocurv::dittmann::scal_with;
use monocurv::evidence::{andai_profile, conjecture_report, figure_grid, ReportConfig};
use monocurv::schur::Target;
use monocurv::simplex::{plane_curvature, simplex_scal_fd, SimplexChart};
use monocurv::{
    matrix_scal_fd, BlochPoint, MetricFamily, MetricScale, Spectrum, WydParam, VERSION,
};
use serde::Serialize;
use serde_json::json;

use crate::error::{CliError, CliResult};
use crate::{Cli, Command, OutArg, ScaleArg};

/// Figure data: file name and WYD exponent.
pub const FIGURES: [(&str, f64); 2] = [("figure1.csv", 1.0 + 1e-1), ("figure2.csv", 1.0 + 1e-6)];

struct Sink {
    path: Option<PathBuf>,
}

impl Sink {
    fn new(out: &OutArg, out_dir: Option<&Path>) -> Self {
        let path = out.out.as_ref().map(|p| match out_dir {
            Some(dir) if p.is_relative() => dir.join(p),
            _ => p.clone(),
        });
        Self { path }
    }

    fn write(&self, bytes: &[u8]) -> CliResult<()> {
        match &self.path {
            Some(p) => write_file(p, bytes),
            None => io::stdout()
                .write_all(bytes)
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                }),
        }
    }

    fn json<T: Serialize>(&self, value: &T) -> CliResult<()> {
        let mut s = serde_json::to_string_pretty(value)?;
        s.push('\n');
        self.write(s.as_bytes())
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let io_err = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io_err)?;
    }
    fs::write(path, bytes).map_err(io_err)
}

fn finite(v: f64, what: &str) -> CliResult<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Numerical(format!("{what} evaluated to {v}")))
    }
}

/// Two-column CSV with a header row.
fn csv_table(header: [&str; 2], rows: &[(f64, f64)]) -> CliResult<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for (a, b) in rows {
        w.write_record([a.to_string(), b.to_string()])?;
    }
    w.into_inner().map_err(|e| CliError::Io {
        path: "<csv buffer>".into(),
        source: e.into_error(),
    })
}

fn resolve_scale(scale: ScaleArg, family: &MetricFamily) -> MetricScale {
    match (scale, family) {
        (ScaleArg::Unit, _) => MetricScale::UNIT,
        (ScaleArg::Bures, _) | (ScaleArg::Auto, MetricFamily::Sld) => MetricScale::BURES,
        (ScaleArg::Auto, _) => MetricScale::UNIT,
    }
}

/// `r_p` on the figure grid as CSV bytes.
pub fn figure_csv(p: f64) -> CliResult<Vec<u8>> {
    let family = MetricFamily::wyd(WydParam::Finite(p))?;
    let rows = andai_profile(&family, &figure_grid())?;
    for (_, r) in &rows {
        finite(*r, "r(a)")?;
    }
    csv_table(["a", "r"], &rows)
}

pub fn run(cli: Cli) -> CliResult<()> {
    let out_dir = cli.out_dir.as_deref();
    match cli.command {
        Command::Plane { p, grid, out } => {
            let rows = grid
                .points()
                .into_iter()
                .map(|t| Ok((t, finite(plane_curvature(p, t)?, "c(theta)")?)))
                .collect::<CliResult<Vec<_>>>()?;
            Sink::new(&out, out_dir).write(&csv_table(["theta", "c"], &rows)?)
        }
        Command::Curvature {
            metric,
            eigs,
            convention,
            scale,
            out,
        } => {
            let spectrum = Spectrum::new(eigs.0.clone())?;
            let metric_scale = resolve_scale(scale, &metric);
            let report = scal_with(&metric, &spectrum, convention, metric_scale)?;
            finite(report.value, "curvature")?;
            Sink::new(&out, out_dir).json(&json!({
                "command": "curvature",
                "version": VERSION,
                "config": {
                    "metric": metric,
                    "eigs": eigs.0,
                    "convention": convention,
                    "scale": scale,
                },
                "report": report,
            }))
        }
        Command::Andai {
            p,
            metric,
            grid,
            out,
        } => {
            let family = match (p, metric) {
                (Some(p), _) => MetricFamily::wyd(p)?,
                (None, Some(m)) => m,
                (None, None) => {
                    return Err(CliError::Usage("one of --p or --metric is required".into()))
                }
            };
            let rows = andai_profile(&family, &grid)?;
            for (_, r) in &rows {
                finite(*r, "r(a)")?;
            }
            Sink::new(&out, out_dir).write(&csv_table(["a", "r"], &rows)?)
        }
        Command::Schur {
            target,
            n,
            samples,
            seed,
            tol,
            out,
        } => {
            let tol = tol.unwrap_or(target.default_tol());
            let verdict = target.classify_with_tol(n, samples, seed, tol)?;
            Sink::new(&out, out_dir).json(&json!({
                "command": "schur",
                "version": VERSION,
                "config": {
                    "target": target.to_string(),
                    "n": n,
                    "samples": samples,
                    "seed": seed,
                    "tol": tol,
                },
                "formula_path": formula_path(&target),
                "verdict": verdict,
            }))
        }
        Command::Simplex {
            p,
            n,
            rho,
            fd_step,
            out,
        } => {
            if let Some(n) = n.filter(|n| *n != rho.0.len()) {
                return Err(CliError::Usage(format!(
                    "--n {n} but --rho has {} entries",
                    rho.0.len()
                )));
            }
            let density = monocurv::DensityVector::new(rho.0.clone())?;
            let value = simplex_scal_fd(p, &SimplexChart::from_density(&density), fd_step)?;
            Sink::new(&out, out_dir).json(&json!({
                "command": "simplex",
                "version": VERSION,
                "config": { "p": p.to_string(), "n": rho.0.len(), "rho": rho.0, "fd_step": fd_step },
                "formula_path": "finite-difference",
                "value": finite(value, "scalar curvature")?,
            }))
        }
        Command::Matrix {
            p,
            bloch,
            fd_step,
            out,
        } => {
            let r: [f64; 3] = bloch.0.clone().try_into().map_err(|_| {
                CliError::Usage(format!("--bloch needs 3 components, got {}", bloch.0.len()))
            })?;
            let value = matrix_scal_fd(p, &BlochPoint::new(r)?, fd_step)?;
            Sink::new(&out, out_dir).json(&json!({
                "command": "matrix",
                "version": VERSION,
                "config": { "p": p.to_string(), "bloch": r, "fd_step": fd_step },
                "formula_path": "finite-difference",
                "value": finite(value, "scalar curvature")?,
            }))
        }
        Command::Figures => {
            let dir = out_dir
                .map(Path::to_path_buf)
                .unwrap_or_else(|| PathBuf::from("data"));
            for (name, p) in FIGURES {
                let path = dir.join(name);
                write_file(&path, &figure_csv(p)?)?;
                println!("{}", path.display());
            }
            Ok(())
        }
        Command::Report {
            seed,
            samples,
            radial_points,
            out,
        } => {
            if samples == 0 {
                return Err(CliError::Usage("--samples must be positive".into()));
            }
            if radial_points < 2 {
                return Err(CliError::Usage("--radial-points must be at least 2".into()));
            }
            let report = conjecture_report(ReportConfig {
                seed,
                samples,
                radial_points,
            })?;
            report.check_consistency().map_err(CliError::Numerical)?;
            Sink::new(&out, out_dir).json(&report)
        }
    }
}

fn formula_path(target: &Target) -> &'static str {
    match target {
        Target::Entropy | Target::NegEntropy => "closed-form",
        Target::Spectrum(_) => "h-sum",
        Target::Simplex(_) => "finite-difference",
        Target::Plane(_) => "plane-closed-form",
    }
}
