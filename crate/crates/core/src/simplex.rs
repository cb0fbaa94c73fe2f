//! Classical α-geometry on the probability simplex.
//!
//! The geometry is pulled back through `ρ ↦ p ρ^{1/p}` (`ρ ↦ ln ρ` at
//! `p = ∞`), with `α = 1 − 2/p`. On two points the image is a plane curve and
//! the natural object is its curvature as an embedded curve; for `n ≥ 3` it is
//! the intrinsic scalar curvature, computed here by finite differences of the
//! closed-form metric.

use std::f64::consts::FRAC_PI_2;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::majorization::DensityVector;
use crate::metric::WydParam;
use crate::riemann::scalar_curvature_fd;

/// Default finite-difference step for simplex curvature.
pub const DEFAULT_FD_STEP: f64 = 1e-4;

/// Embedding exponent `p = 2/(1 − α)`, nonzero, possibly infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaParameter(WydParam);

impl AlphaParameter {
    pub fn new(p: WydParam) -> Result<Self> {
        match p {
            WydParam::Finite(v) if v == 0.0 || !v.is_finite() => Err(Error::UndefinedParameter),
            _ => Ok(Self(p)),
        }
    }

    pub fn finite(p: f64) -> Result<Self> {
        Self::new(WydParam::Finite(p))
    }

    pub const INFINITY: AlphaParameter = AlphaParameter(WydParam::Infinity);

    pub fn from_alpha(alpha: f64) -> Result<Self> {
        if alpha == 1.0 {
            Ok(Self::INFINITY)
        } else {
            Self::finite(2.0 / (1.0 - alpha))
        }
    }

    pub fn p(&self) -> WydParam {
        self.0
    }

    pub fn alpha(&self) -> f64 {
        1.0 - 2.0 * self.0.reciprocal()
    }

    /// Exponent `2/p − 2` of the diagonal metric weights.
    fn weight_exponent(&self) -> f64 {
        2.0 * self.0.reciprocal() - 2.0
    }
}

impl std::fmt::Display for AlphaParameter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

impl std::str::FromStr for AlphaParameter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::new(s.parse()?)
    }
}

/// First `n − 1` coordinates of a point of the open simplex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplexChart {
    coords: Vec<f64>,
}

impl SimplexChart {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument(
                "chart needs at least one coordinate".into(),
            ));
        }
        let chart = Self { coords };
        let rho = chart.point();
        if rho.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::Domain(format!(
                "chart {rho:?} is not in the open simplex"
            )));
        }
        Ok(chart)
    }

    pub fn from_density(rho: &DensityVector) -> Self {
        let e = rho.entries();
        Self {
            coords: e[..e.len() - 1].to_vec(),
        }
    }

    /// Simplex dimension `n` (number of probabilities).
    pub fn n(&self) -> usize {
        self.coords.len() + 1
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// The full probability vector `(x₁, …, x_{n−1}, 1 − Σx)`.
    pub fn point(&self) -> Vec<f64> {
        implied_point(&self.coords)
    }
}

fn implied_point(coords: &[f64]) -> Vec<f64> {
    let mut rho = coords.to_vec();
    rho.push(1.0 - coords.iter().sum::<f64>());
    rho
}

/// Curvature of the image curve of the two-point simplex at
/// `ρ = (cos²θ, sin²θ)`.
///
/// `p = 1` returns the flat limit 0. For `p ∈ (0, 1)` the same expression is
/// returned with the absolute value of its leading constant.
pub fn plane_curvature(p: AlphaParameter, theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < FRAC_PI_2) {
        return Err(Error::Domain(format!("theta = {theta} outside (0, pi/2)")));
    }
    let (s, c) = theta.sin_cos();
    match p.p() {
        WydParam::Infinity => {
            let sc = s * c;
            Ok(sc * sc / (c.powi(4) + s.powi(4)).powf(1.5))
        }
        WydParam::Finite(1.0) => Ok(0.0),
        WydParam::Finite(p) => {
            let inv = 1.0 / p;
            let lead = ((p - 1.0) / p).abs() * 0.5f64.powf(2.0 * (1.0 - 2.0 * inv));
            let g = (2.0 * theta).sin().powf(2.0 - 4.0 * inv);
            let e = 4.0 * (1.0 - inv);
            let f = c.powf(e) + s.powf(e);
            Ok(lead * g / f.powf(1.5))
        }
    }
}

/// [`plane_curvature`] at a two-point density vector.
pub fn plane_curvature_at(p: AlphaParameter, rho: &DensityVector) -> Result<f64> {
    if rho.len() != 2 {
        return Err(Error::DimensionMismatch(2, rho.len()));
    }
    let e = rho.entries();
    plane_curvature(p, e[1].sqrt().atan2(e[0].sqrt()))
}

fn metric_at(p: AlphaParameter, coords: &[f64]) -> Result<DMatrix<f64>> {
    let rho = implied_point(coords);
    if rho.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(Error::Domain(format!(
            "point {rho:?} is on or outside the simplex boundary"
        )));
    }
    let e = p.weight_exponent();
    let last = rho[rho.len() - 1].powf(e);
    let d = coords.len();
    let mut g = DMatrix::from_element(d, d, last);
    for i in 0..d {
        g[(i, i)] += rho[i].powf(e);
    }
    Ok(g)
}

/// Pull-back metric `g_ij = ρ_i^{2/p−2} δ_ij + ρ_n^{2/p−2}` in the chart.
pub fn simplex_metric(p: AlphaParameter, chart: &SimplexChart) -> Result<DMatrix<f64>> {
    metric_at(p, chart.coords())
}

/// Intrinsic scalar curvature of the α-geometry at `chart`.
///
/// Identically zero on the two-point simplex (a curve has no intrinsic
/// curvature); use [`plane_curvature`] there.
pub fn simplex_scal_fd(p: AlphaParameter, chart: &SimplexChart, step: f64) -> Result<f64> {
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "finite-difference step {step} must be positive"
        )));
    }
    let rho = chart.point();
    let margin = 4.0 * step;
    if let Some(v) = rho.iter().find(|v| **v <= margin) {
        return Err(Error::Margin(format!(
            "entry {v} within {margin} of the simplex boundary"
        )));
    }
    scalar_curvature_fd(&|x: &[f64]| metric_at(p, x), chart.coords(), step)
}

/// Fisher information `Σ a_k b_k / ρ_k`.
pub fn fisher_information(rho: &DensityVector, a: &[f64], b: &[f64]) -> Result<f64> {
    check_tangent(rho, a)?;
    check_tangent(rho, b)?;
    Ok(rho
        .entries()
        .iter()
        .zip(a)
        .zip(b)
        .map(|((r, x), y)| x * y / r)
        .sum())
}

fn check_tangent(rho: &DensityVector, v: &[f64]) -> Result<()> {
    if v.len() != rho.len() {
        return Err(Error::DimensionMismatch(rho.len(), v.len()));
    }
    let sum: f64 = v.iter().sum();
    let scale: f64 = v.iter().map(|x| x.abs()).sum();
    if sum.abs() > 1e-12 * (1.0 + scale) {
        return Err(Error::NotTangent(sum));
    }
    Ok(())
}

/// Pairing of the differential of `ρ ↦ p ρ^{1/p}` against that of its dual
/// exponent: `Σ (ρ_k^{1/p−1} a_k)(ρ_k^{1/p̃−1} b_k)`.
///
/// The two exponents always add to −1, so the result is the Fisher
/// information for every `p`.
pub fn dualized_pullback_commutative(
    p: AlphaParameter,
    rho: &DensityVector,
    a: &[f64],
    b: &[f64],
) -> Result<f64> {
    check_tangent(rho, a)?;
    check_tangent(rho, b)?;
    let inv = p.p().reciprocal();
    let inv_dual = p.p().dual().reciprocal();
    Ok(rho
        .entries()
        .iter()
        .zip(a)
        .zip(b)
        .map(|((r, x), y)| r.powf(inv - 1.0) * x * r.powf(inv_dual - 1.0) * y)
        .sum())
}
