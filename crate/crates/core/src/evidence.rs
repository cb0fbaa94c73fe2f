//! Sweeps and the conjecture-evidence report.
//!
//! Nothing here asserts a conjectured outcome. Each section records what was
//! observed next to what the conjecture predicts; [`ConjectureReport::check_consistency`]
//! only checks that the report is well formed and agrees with its own data.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dittmann::andai_r;
use crate::error::{Error, Result};
use crate::matrix::{matrix_scal_fd, BlochPoint, CURVATURE_MAX_RADIUS, DEFAULT_FD_STEP};
use crate::metric::{MetricFamily, WydParam};
use crate::schur::{Classification, SchurVerdict, Target};
use crate::simplex::AlphaParameter;

/// Concavity slack on second differences.
pub const CONCAVITY_TOL: f64 = 1e-6;
/// Evenness tolerance `|r(a) − r(−a)|`.
pub const EVENNESS_TOL: f64 = 1e-9;
/// Relative slack for radial monotonicity of FD curvature.
pub const RADIAL_TOL: f64 = 1e-7;

/// Equally spaced grid `min:max:count`, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Grid {
    pub fn new(min: f64, max: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::InvalidArgument(format!(
                "grid needs at least 2 points, got {count}"
            )));
        }
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(Error::InvalidArgument(format!(
                "grid needs min < max, got {min}:{max}"
            )));
        }
        Ok(Self { min, max, count })
    }

    /// Grid points; `min = −max` yields an exactly antisymmetric grid.
    pub fn points(&self) -> Vec<f64> {
        let m = (self.count - 1) as f64;
        (0..self.count)
            .map(|k| match k {
                0 => self.min,
                k if k == self.count - 1 => self.max,
                k => {
                    let k = k as f64;
                    (self.min * (m - k) + self.max * k) / m
                }
            })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("grid {s:?} is not of the form min:max:count"));
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, count] = parts[..] else {
            return Err(bad());
        };
        Grid::new(
            min.trim().parse().map_err(|_| bad())?,
            max.trim().parse().map_err(|_| bad())?,
            count.trim().parse().map_err(|_| bad())?,
        )
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.min, self.max, self.count)
    }
}

/// `r_f(a)` on every grid point.
pub fn andai_profile(family: &MetricFamily, grid: &Grid) -> Result<Vec<(f64, f64)>> {
    grid.points()
        .into_iter()
        .map(|a| andai_r(family, a).map(|r| (a, r)))
        .collect()
}

/// Shape summary of a sampled profile `(a, r(a))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileShape {
    pub points: usize,
    /// Largest second difference; concave when `≤ CONCAVITY_TOL`.
    pub max_second_difference: f64,
    pub concave: bool,
    pub argmax: f64,
    pub argmax_at_zero: bool,
    /// Largest `|r(a_k) − r(a_{N−1−k})|`; meaningful on symmetric grids.
    pub max_asymmetry: f64,
    pub even: bool,
}

pub fn profile_shape(profile: &[(f64, f64)]) -> ProfileShape {
    let max_second_difference = profile
        .windows(3)
        .map(|w| w[0].1 - 2.0 * w[1].1 + w[2].1)
        .fold(f64::NEG_INFINITY, f64::max);
    let argmax = profile
        .iter()
        .fold((f64::NAN, f64::NEG_INFINITY), |best, &(a, r)| {
            if r > best.1 {
                (a, r)
            } else {
                best
            }
        })
        .0;
    let n = profile.len();
    let max_asymmetry = (0..n / 2)
        .map(|k| (profile[k].1 - profile[n - 1 - k].1).abs())
        .fold(0.0, f64::max);
    ProfileShape {
        points: n,
        max_second_difference,
        concave: max_second_difference <= CONCAVITY_TOL,
        argmax,
        argmax_at_zero: argmax.abs() < 1e-12,
        max_asymmetry,
        even: max_asymmetry <= EVENNESS_TOL,
    }
}

/// The grid `−0.99:0.99:199` used for `r_p` profiles.
pub fn figure_grid() -> Grid {
    Grid {
        min: -0.99,
        max: 0.99,
        count: 199,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    Constant,
    NonMonotone,
}

/// Monotonicity of a sequence with relative slack `tol`.
pub fn monotonicity(values: &[f64], tol: f64) -> Monotonicity {
    let mut up = false;
    let mut down = false;
    for w in values.windows(2) {
        let slack = tol * (1.0 + w[0].abs().max(w[1].abs()));
        let d = w[1] - w[0];
        up |= d > slack;
        down |= d < -slack;
    }
    match (up, down) {
        (false, false) => Monotonicity::Constant,
        (true, false) => Monotonicity::Increasing,
        (false, true) => Monotonicity::Decreasing,
        (true, true) => Monotonicity::NonMonotone,
    }
}

/// FD scalar curvature of the 2×2 α-geometry at `count` radii in
/// `[0, CURVATURE_MAX_RADIUS]` along the first Bloch axis.
pub fn matrix_radial_profile(p: AlphaParameter, count: usize) -> Result<Vec<(f64, f64)>> {
    let grid = Grid::new(0.0, CURVATURE_MAX_RADIUS, count)?;
    grid.points()
        .into_iter()
        .map(|r| {
            let point = BlochPoint::new([r, 0.0, 0.0])?;
            matrix_scal_fd(p, &point, DEFAULT_FD_STEP).map(|v| (r, v))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplexEvidence {
    pub p: String,
    pub n: usize,
    pub expected: Classification,
    pub verdict: SchurVerdict,
    pub matches_conjecture: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialEvidence {
    pub p: String,
    pub radii: usize,
    pub min_value: f64,
    pub max_value: f64,
    /// Behaviour in `|r|`; "more mixed" is smaller `|r|`.
    pub observed: Monotonicity,
    pub expected: Monotonicity,
    pub matches_conjecture: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WydEvidence {
    pub p: f64,
    pub shape: ProfileShape,
    pub r_at_zero: f64,
    pub matches_conjecture: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PetzEvidence {
    pub n: usize,
    pub verdict: SchurVerdict,
    pub matches_conjecture: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub seed: u64,
    pub samples: usize,
    pub radial_points: usize,
}

impl Default for ReportConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            samples: 200,
            radial_points: 100,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub version: String,
    pub config: ReportConfig,
    /// Simplex α-curvature: strictly Schur-increasing for `p > 2` and `p = ∞`,
    /// Schur-decreasing for `1 < p < 2`.
    pub simplex: Vec<SimplexEvidence>,
    /// 2×2 matrix α-curvature along the Bloch radius.
    pub matrix_radial: Vec<RadialEvidence>,
    /// `r_p` for `p = 1 + 10^{-k}`: concave with maximum at `a = 0`.
    pub wyd_scan: Vec<WydEvidence>,
    /// BKM curvature Schur-increasing.
    pub petz: Vec<PetzEvidence>,
}

pub const SIMPLEX_P: [WydParam; 3] = [
    WydParam::Finite(1.5),
    WydParam::Finite(3.0),
    WydParam::Infinity,
];
pub const SIMPLEX_N: [usize; 2] = [3, 4];
pub const MATRIX_P: [WydParam; 4] = [
    WydParam::Finite(1.5),
    WydParam::Finite(3.0),
    WydParam::Finite(10.0),
    WydParam::Infinity,
];

fn expected_for(p: WydParam) -> (Classification, Monotonicity) {
    match p {
        WydParam::Finite(v) if v < 2.0 => (Classification::Decreasing, Monotonicity::Increasing),
        _ => (Classification::Increasing, Monotonicity::Decreasing),
    }
}

/// Runs every sweep of the report.
pub fn conjecture_report(config: ReportConfig) -> Result<ConjectureReport> {
    let mut simplex = Vec::new();
    for p in SIMPLEX_P {
        let alpha = AlphaParameter::new(p)?;
        for n in SIMPLEX_N {
            let verdict = Target::Simplex(alpha).classify(n, config.samples, config.seed)?;
            let expected = expected_for(p).0;
            simplex.push(SimplexEvidence {
                p: p.to_string(),
                n,
                expected,
                matches_conjecture: verdict.classification == expected && verdict.strictness,
                verdict,
            });
        }
    }

    let mut matrix_radial = Vec::new();
    for p in MATRIX_P {
        let profile = matrix_radial_profile(AlphaParameter::new(p)?, config.radial_points)?;
        let values: Vec<f64> = profile.iter().map(|v| v.1).collect();
        let observed = monotonicity(&values, RADIAL_TOL);
        let expected = expected_for(p).1;
        matrix_radial.push(RadialEvidence {
            p: p.to_string(),
            radii: values.len(),
            min_value: values.iter().copied().fold(f64::INFINITY, f64::min),
            max_value: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            observed,
            expected,
            matches_conjecture: observed == expected,
        });
    }

    let mut wyd_scan = Vec::new();
    for k in 1..=6 {
        let p = 1.0 + 10f64.powi(-k);
        let family = MetricFamily::wyd(WydParam::Finite(p))?;
        let shape = profile_shape(&andai_profile(&family, &figure_grid())?);
        wyd_scan.push(WydEvidence {
            p,
            r_at_zero: andai_r(&family, 0.0)?,
            matches_conjecture: shape.concave && shape.argmax_at_zero,
            shape,
        });
    }

    let mut petz = Vec::new();
    for n in [2, 3] {
        let verdict =
            Target::Spectrum(MetricFamily::Bkm).classify(n, config.samples, config.seed)?;
        petz.push(PetzEvidence {
            n,
            matches_conjecture: verdict.classification == Classification::Increasing,
            verdict,
        });
    }

    Ok(ConjectureReport {
        version: crate::VERSION.to_string(),
        config,
        simplex,
        matrix_radial,
        wyd_scan,
        petz,
    })
}

impl ConjectureReport {
    /// Checks that every section is complete and agrees with its own data.
    pub fn check_consistency(&self) -> std::result::Result<(), String> {
        if self.simplex.len() != SIMPLEX_P.len() * SIMPLEX_N.len() {
            return Err(format!(
                "expected 6 simplex entries, got {}",
                self.simplex.len()
            ));
        }
        for e in &self.simplex {
            e.verdict
                .check_consistency()
                .map_err(|m| format!("simplex p={} n={}: {m}", e.p, e.n))?;
            let m = e.verdict.classification == e.expected && e.verdict.strictness;
            if m != e.matches_conjecture {
                return Err(format!(
                    "simplex p={} n={}: inconsistent match flag",
                    e.p, e.n
                ));
            }
        }
        if self.matrix_radial.len() != MATRIX_P.len() {
            return Err(format!(
                "expected 4 radial entries, got {}",
                self.matrix_radial.len()
            ));
        }
        for e in &self.matrix_radial {
            if e.radii != self.config.radial_points
                || !e.min_value.is_finite()
                || !e.max_value.is_finite()
                || e.min_value > e.max_value
            {
                return Err(format!("radial p={}: malformed", e.p));
            }
            if (e.observed == e.expected) != e.matches_conjecture {
                return Err(format!("radial p={}: inconsistent match flag", e.p));
            }
        }
        if self.wyd_scan.len() != 6 {
            return Err(format!(
                "expected 6 WYD entries, got {}",
                self.wyd_scan.len()
            ));
        }
        for e in &self.wyd_scan {
            let s = &e.shape;
            if s.concave != (s.max_second_difference <= CONCAVITY_TOL)
                || s.argmax_at_zero != (s.argmax.abs() < 1e-12)
                || e.matches_conjecture != (s.concave && s.argmax_at_zero)
                || !e.r_at_zero.is_finite()
            {
                return Err(format!("WYD p={}: inconsistent shape flags", e.p));
            }
        }
        for e in &self.petz {
            e.verdict
                .check_consistency()
                .map_err(|m| format!("petz n={}: {m}", e.n))?;
            if e.matches_conjecture != (e.verdict.classification == Classification::Increasing) {
                return Err(format!("petz n={}: inconsistent match flag", e.n));
            }
        }
        Ok(())
    }
}
