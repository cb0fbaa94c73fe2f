//! α-geometry on faithful 2×2 density matrices.
//!
//! Points are Bloch vectors, `ρ(r) = ½(I + r·σ)`, tangent directions the
//! Pauli frame `A_i = ½σ_i`. The differential of `ρ ↦ p ρ^{1/p}` acts in the
//! eigenbasis of `ρ` as a Schur (entrywise) product with the first divided
//! difference of `t ↦ p t^{1/p}`; the metric is the Hilbert–Schmidt pairing
//! of the images.

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::WydParam;
use crate::riemann::scalar_curvature_fd;
use crate::simplex::AlphaParameter;
use crate::special::expm1_ratio;

/// Largest Bloch radius accepted by [`pullback_metric_2x2`].
pub const METRIC_MAX_RADIUS: f64 = 0.99;
/// Largest Bloch radius accepted by [`matrix_scal_fd`].
pub const CURVATURE_MAX_RADIUS: f64 = 0.95;
pub const DEFAULT_FD_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochPoint {
    r: [f64; 3],
}

impl BlochPoint {
    pub fn new(r: [f64; 3]) -> Result<Self> {
        let p = Self { r };
        let rad = p.radius();
        if !(rad.is_finite() && rad < 1.0) {
            return Err(Error::Boundary(rad));
        }
        Ok(p)
    }

    pub fn r(&self) -> [f64; 3] {
        self.r
    }

    pub fn radius(&self) -> f64 {
        self.r.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Eigenvalues `((1+|r|)/2, (1−|r|)/2)`.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let rad = self.radius();
        ((1.0 + rad) / 2.0, (1.0 - rad) / 2.0)
    }
}

/// First divided difference of `t ↦ p t^{1/p}` (of `ln t` when `p = ∞`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DividedDifferenceKernel {
    p: AlphaParameter,
}

impl DividedDifferenceKernel {
    pub fn new(p: AlphaParameter) -> Self {
        Self { p }
    }

    /// Derivative of the embedding at `t`: `t^{1/p − 1}`.
    pub fn diagonal(&self, t: f64) -> f64 {
        t.powf(self.p.p().reciprocal() - 1.0)
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        if !(x > 0.0 && y > 0.0) {
            return Err(Error::Domain(format!(
                "kernel arguments ({x}, {y}) must be positive"
            )));
        }
        if (x - y).abs() < 1e-8 * x.max(y) {
            return Ok(self.diagonal(0.5 * (x + y)));
        }
        // (φ(x) − φ(y))/(x − y) written through E(s) = (e^s − 1)/s, s = ln(x/y).
        let s = (x / y).ln();
        Ok(match self.p.p() {
            WydParam::Infinity => 1.0 / (y * expm1_ratio(s)),
            WydParam::Finite(p) => self.diagonal(y) * expm1_ratio(s / p) / expm1_ratio(s),
        })
    }
}

fn pauli() -> [Matrix2<Complex64>; 3] {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    [
        Matrix2::new(z, one, one, z),
        Matrix2::new(z, -i, i, z),
        Matrix2::new(one, z, z, -one),
    ]
}

/// Unitary whose columns are the `+1` and `−1` eigenvectors of `n̂·σ`.
fn eigenbasis(unit: [f64; 3]) -> Matrix2<Complex64> {
    let theta = unit[2].clamp(-1.0, 1.0).acos();
    let phi = unit[1].atan2(unit[0]);
    let (s, c) = (0.5 * theta).sin_cos();
    let e = Complex64::from_polar(1.0, phi);
    Matrix2::new(
        Complex64::new(c, 0.0),
        -e.conj() * s,
        e * s,
        Complex64::new(c, 0.0),
    )
}

/// Pull-back of the Hilbert–Schmidt metric through `ρ ↦ p ρ^{1/p}`, in the
/// Pauli frame at `point`.
pub fn pullback_metric_2x2(p: AlphaParameter, point: &BlochPoint) -> Result<DMatrix<f64>> {
    let rad = point.radius();
    if rad > METRIC_MAX_RADIUS {
        return Err(Error::Boundary(rad));
    }
    let kernel = DividedDifferenceKernel::new(p);
    let (hi, lo) = point.eigenvalues();
    let u = if rad == 0.0 {
        Matrix2::identity()
    } else {
        let r = point.r();
        eigenbasis([r[0] / rad, r[1] / rad, r[2] / rad])
    };
    let lambdas = [hi, lo];
    let mut k = Matrix2::<Complex64>::zeros();
    for a in 0..2 {
        for b in 0..2 {
            k[(a, b)] = Complex64::new(kernel.eval(lambdas[a], lambdas[b])?, 0.0);
        }
    }
    let images: Vec<Matrix2<Complex64>> = pauli()
        .iter()
        .map(|s| {
            let a = s * Complex64::new(0.5, 0.0);
            (u.adjoint() * a * u).component_mul(&k)
        })
        .collect();
    let mut g = DMatrix::zeros(3, 3);
    for i in 0..3 {
        for j in 0..3 {
            g[(i, j)] = (images[i] * images[j]).trace().re;
        }
    }
    Ok(g)
}

/// Intrinsic scalar curvature of the 3-dimensional state space at `point`.
pub fn matrix_scal_fd(p: AlphaParameter, point: &BlochPoint, step: f64) -> Result<f64> {
    let rad = point.radius();
    if rad > CURVATURE_MAX_RADIUS {
        return Err(Error::Margin(format!(
            "|r| = {rad} exceeds {CURVATURE_MAX_RADIUS}"
        )));
    }
    if !(step.is_finite() && step > 0.0 && step < 0.01) {
        return Err(Error::InvalidArgument(format!(
            "finite-difference step {step} must lie in (0, 0.01)"
        )));
    }
    let metric = |x: &[f64]| pullback_metric_2x2(p, &BlochPoint::new([x[0], x[1], x[2]])?);
    scalar_curvature_fd(&metric, &point.r(), step)
}
