//! Scalar curvature of monotone metrics as a function of the spectrum.
//!
//! For a monotone metric with Chentsov–Morozova function `c`, the scalar
//! curvature on all positive matrices is
//!
//! ```text
//! Scal(ρ) = Σ_{x,y,z ∈ σ(ρ)} h(x,y,z) − Σ_{x ∈ σ(ρ)} h(x,x,x)
//! ```
//!
//! with sums running over the eigenvalue list (multiplicities included) and
//! `h = h₁ − ½h₂ + 2h₃ − h₄`. The trace-one slice adds `(n²−1)(n²−2)/4`.
//!
//! Every `h_i` has removable singularities where arguments coincide. Near
//! such points the components are evaluated as contour means: the map
//! `w ↦ h_i(x(1+w), y(1+ωw), z(1+ω²w))` is analytic in a disk around 0, so
//! its mean over a circle equals the value at `w = 0` without any
//! cancellation at the centre.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::majorization::{DensityVector, PREFIX_TOL};
use crate::metric::MetricFamily;
use crate::special::{circle_mean, Scalar};

/// Relative separation below which `h` is evaluated on a contour.
const CONFLUENT_REL: f64 = 1e-2;
const CONTOUR_NODES: usize = 64;
/// Below this `|a|` the closed 2×2 form is averaged over a circle.
const ANDAI_CONTOUR_BELOW: f64 = 0.05;
const ANDAI_RADIUS: f64 = 0.25;

/// Eigenvalues (with multiplicity) of a faithful density matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    pub fn new(eigenvalues: Vec<f64>) -> Result<Self> {
        if eigenvalues.len() < 2 {
            return Err(Error::NotSpectrum(format!(
                "need at least 2 eigenvalues, got {}",
                eigenvalues.len()
            )));
        }
        if let Some(bad) = eigenvalues.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::NotSpectrum(format!(
                "eigenvalue {bad} is not positive"
            )));
        }
        let sum: f64 = eigenvalues.iter().sum();
        if (sum - 1.0).abs() > PREFIX_TOL {
            return Err(Error::NotSpectrum(format!("eigenvalues sum to {sum}")));
        }
        Ok(Self(eigenvalues))
    }

    /// The 2×2 spectrum `((1+a)/2, (1−a)/2)`.
    pub fn from_bloch_radius(a: f64) -> Result<Self> {
        if a.is_nan() || a.abs() >= 1.0 {
            return Err(Error::Domain(format!("a = {a} outside (-1, 1)")));
        }
        let l1 = (1.0 + a) / 2.0;
        Self::new(vec![l1, 1.0 - l1])
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }
}

impl TryFrom<Vec<f64>> for Spectrum {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Spectrum> for Vec<f64> {
    fn from(s: Spectrum) -> Self {
        s.0
    }
}

impl From<DensityVector> for Spectrum {
    fn from(v: DensityVector) -> Self {
        Spectrum(v.into_inner())
    }
}

impl From<&DensityVector> for Spectrum {
    fn from(v: &DensityVector) -> Self {
        Spectrum(v.entries().to_vec())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// Curvature on the open cone of positive matrices.
    Ambient,
    /// Curvature on the trace-one slice.
    Normalized,
}

impl std::str::FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ambient" => Ok(Convention::Ambient),
            "normalized" => Ok(Convention::Normalized),
            _ => Err(Error::InvalidArgument(format!("unknown convention {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormulaPath {
    HSum,
    Andai,
    ClosedFormConstant,
}

/// Constant factor `k` applied to the metric; curvature scales by `1/k`.
///
/// [`MetricScale::BURES`] is the Bures normalization `g/4` of the SLD
/// metric, under which the classical 3×3 SLD values are usually quoted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MetricScale(pub f64);

impl MetricScale {
    pub const UNIT: MetricScale = MetricScale(1.0);
    pub const BURES: MetricScale = MetricScale(0.25);
}

impl Default for MetricScale {
    fn default() -> Self {
        Self::UNIT
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureReport {
    pub value: f64,
    pub convention: Convention,
    pub metric: MetricFamily,
    pub metric_scale: MetricScale,
    pub spectrum: Vec<f64>,
    pub formula_path: FormulaPath,
}

/// `(n²−1)(n²−2)/4`, the gap between the two conventions.
pub fn normalization_shift(n: usize) -> f64 {
    let n2 = (n * n) as f64;
    (n2 - 1.0) * (n2 - 2.0) / 4.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HComponents {
    pub h1: f64,
    pub h2: f64,
    pub h3: f64,
    pub h4: f64,
    pub h: f64,
}

impl HComponents {
    fn from_parts([h1, h2, h3, h4]: [f64; 4]) -> Self {
        Self {
            h1,
            h2,
            h3,
            h4,
            h: h1 - 0.5 * h2 + 2.0 * h3 - h4,
        }
    }
}

/// The four components straight from their defining quotients.
fn h_parts<T: Scalar>(fam: &MetricFamily, x: T, y: T, z: T) -> [T; 4] {
    let cxy = fam.c_gen(x, y);
    let cxz = fam.c_gen(x, z);
    let cyz = fam.c_gen(y, z);
    let h1 = (cxy - z * cxz * cyz) / ((x - z) * (y - z) * cxz * cyz);
    let d = cxz - cyz;
    let h2 = d * d / ((x - y) * (x - y) * cxy * cxz * cyz);
    let lx = fam.dlog_c_gen(z, x);
    let ly = fam.dlog_c_gen(z, y);
    let h3 = z * (lx - ly) / (x - y);
    let h4 = z * lx * ly;
    [h1, h2, h3, h4]
}

fn rel_sep(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.max(b)
}

/// Picks a contour radius whose circle keeps clear of every point where two
/// perturbed arguments would coincide.
fn contour_radius(args: [f64; 3], dirs: [Complex64; 3]) -> f64 {
    let mut crossings = Vec::with_capacity(3);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let diff = args[i] - args[j];
        if diff != 0.0 {
            let slope = dirs[i] * args[i] - dirs[j] * args[j];
            crossings.push(diff.abs() / slope.norm());
        }
    }
    let mut best = (f64::NEG_INFINITY, 0.2);
    for k in 0..10 {
        let r = 0.2 * 0.5f64.powi(k);
        let score = crossings
            .iter()
            .map(|w0| (w0 / r).ln().abs())
            .fold(f64::INFINITY, f64::min);
        if score > best.0 + 1e-12 {
            best = (score, r);
        }
    }
    best.1
}

/// `h₁ … h₄` and `h = h₁ − ½h₂ + 2h₃ − h₄` at `(x, y, z)`.
///
/// Finite for every positive triple; coincident or nearly coincident
/// arguments are resolved by contour averaging.
pub fn h_components(family: &MetricFamily, x: f64, y: f64, z: f64) -> Result<HComponents> {
    for v in [x, y, z] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::Domain(format!(
                "h arguments must be positive, got {v}"
            )));
        }
    }
    let confluent = rel_sep(x, y) < CONFLUENT_REL
        || rel_sep(x, z) < CONFLUENT_REL
        || rel_sep(y, z) < CONFLUENT_REL;
    if !confluent {
        return Ok(HComponents::from_parts(h_parts(family, x, y, z)));
    }
    let omega = Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0);
    let dirs = [Complex64::new(1.0, 0.0), omega, omega * omega];
    let args = [x, y, z];
    let radius = contour_radius(args, dirs);
    let one = Complex64::new(1.0, 0.0);
    let mean = circle_mean(radius, CONTOUR_NODES, |w| {
        let p = |i: usize| (one + dirs[i] * w) * args[i];
        h_parts(family, p(0), p(1), p(2))
    });
    Ok(HComponents::from_parts(mean.map(|c| c.re)))
}

fn h_value(family: &MetricFamily, x: f64, y: f64, z: f64) -> Result<f64> {
    Ok(h_components(family, x, y, z)?.h)
}

/// Triple sum over the eigenvalue list, indices in lexicographic order.
fn h_sum(family: &MetricFamily, s: &Spectrum) -> Result<f64> {
    let ev = s.eigenvalues();
    let mut total = 0.0;
    for &x in ev {
        for &y in ev {
            for &z in ev {
                total += h_value(family, x, y, z)?;
            }
        }
    }
    for &x in ev {
        total -= h_value(family, x, x, x)?;
    }
    Ok(total)
}

/// Scalar curvature from the h-sum under a given convention and metric scale.
pub fn scal_with(
    family: &MetricFamily,
    s: &Spectrum,
    convention: Convention,
    scale: MetricScale,
) -> Result<CurvatureReport> {
    if !(scale.0.is_finite() && scale.0 > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "metric scale {} must be positive",
            scale.0
        )));
    }
    let ambient = h_sum(family, s)?;
    let raw = match convention {
        Convention::Ambient => ambient,
        Convention::Normalized => ambient + normalization_shift(s.n()),
    };
    Ok(CurvatureReport {
        value: raw / scale.0,
        convention,
        metric: *family,
        metric_scale: scale,
        spectrum: s.eigenvalues().to_vec(),
        formula_path: FormulaPath::HSum,
    })
}

/// Curvature of the metric on all positive matrices.
pub fn scal_ambient(family: &MetricFamily, s: &Spectrum) -> Result<CurvatureReport> {
    scal_with(family, s, Convention::Ambient, MetricScale::UNIT)
}

/// Curvature of the metric restricted to trace-one matrices.
pub fn scal_normalized(family: &MetricFamily, s: &Spectrum) -> Result<CurvatureReport> {
    scal_with(family, s, Convention::Normalized, MetricScale::UNIT)
}

/// The WY metric has constant normalized curvature `(n²−1)(n²−2)/4`.
pub fn wy_constant(n: usize) -> f64 {
    normalization_shift(n)
}

/// Explicit six-term 2×2 expansion (normalized convention).
pub fn six_term_2x2(family: &MetricFamily, l1: f64, l2: f64) -> Result<f64> {
    let h = |x, y, z| h_value(family, x, y, z);
    Ok(h(l1, l1, l2)?
        + h(l1, l2, l1)?
        + h(l2, l1, l1)?
        + h(l2, l2, l1)?
        + h(l2, l1, l2)?
        + h(l1, l2, l2)?
        + 1.5)
}

fn andai_terms<T: Scalar>(family: &MetricFamily, a: T) -> T {
    let one = T::one();
    let k = T::lift;
    let ap = one + a;
    let u = (one - a) / ap;
    let [f, df, d2f] = family.eval(u);
    k(14.0) * (a - one) * df * df / (ap * ap * ap * f * f)
        + k(2.0) * (a * a + k(7.0) * a - k(6.0)) * df / (ap * ap * a * f)
        + k(8.0) * (one - a) * d2f / (ap * ap * ap * f)
        + k(2.0) * ap * f / (a * a)
        + (k(3.0) * a * a * a + k(5.0) * a * a + k(8.0) * a - k(4.0)) / (k(2.0) * ap * a * a)
}

/// Closed-form 2×2 curvature `r_f(a)` with `a = 2λ₁ − 1`; equals the
/// normalized h-sum.
pub fn andai_r(family: &MetricFamily, a: f64) -> Result<f64> {
    if a.is_nan() || a.abs() >= 1.0 {
        return Err(Error::Domain(format!("a = {a} outside (-1, 1)")));
    }
    if a.abs() >= ANDAI_CONTOUR_BELOW {
        return Ok(andai_terms(family, a));
    }
    // Each term blows up at a = 0 while the sum stays finite.
    let [v] = circle_mean(ANDAI_RADIUS, CONTOUR_NODES, |w| {
        [andai_terms(family, Complex64::new(a, 0.0) + w)]
    });
    Ok(v.re)
}

pub fn andai_report(family: &MetricFamily, a: f64) -> Result<CurvatureReport> {
    let value = andai_r(family, a)?;
    Ok(CurvatureReport {
        value,
        convention: Convention::Normalized,
        metric: *family,
        metric_scale: MetricScale::UNIT,
        spectrum: Spectrum::from_bloch_radius(a)?.0,
        formula_path: FormulaPath::Andai,
    })
}
