//! Empirical Schur-monotonicity classification.
//!
//! A target is any scalar function of a density vector (or spectrum). Pairs
//! `x ≻ y` come from three places, in this order: caller-supplied probes,
//! then alternately random Birkhoff pairs and pairs on mixing chains. For
//! each pair `Δ = f(x) − f(y)` is compared to a tolerance scaled by
//! `1 + max(|f(x)|, |f(y)|)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use std::fmt;
use std::str::FromStr;

use crate::dittmann::{scal_with, Convention, MetricScale, Spectrum};
use crate::error::{Error, Result};
use crate::majorization::{
    clamped_simplex, comparable_pair_from, mixing_path, DensityVector, MajorizationPair,
};
use crate::metric::MetricFamily;
use crate::simplex::{
    plane_curvature_at, simplex_scal_fd, AlphaParameter, SimplexChart,
    DEFAULT_FD_STEP as SIMPLEX_DEFAULT_STEP,
};

/// Default relative tolerance on `Δ`.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Sampled counterexamples kept per violated direction (probes are always kept).
const MAX_SAMPLED_COUNTEREXAMPLES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Increasing,
    Decreasing,
    Neither,
    Inconclusive,
}

/// How a single pair bears on the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Contribution {
    /// `Δ > tol`: consistent with increasing, refutes decreasing.
    Up,
    /// `Δ < −tol`: consistent with decreasing, refutes increasing.
    Down,
    /// `|Δ| ≤ tol`.
    Flat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairSource {
    Probe,
    Birkhoff,
    Chain,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeRecord {
    pub index: usize,
    pub source: PairSource,
    pub more_mixed: Vec<f64>,
    pub less_mixed: Vec<f64>,
    pub f_more_mixed: f64,
    pub f_less_mixed: f64,
    pub delta: f64,
    pub tolerance: f64,
    pub contribution: Contribution,
    pub permutation_pair: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchurVerdict {
    pub classification: Classification,
    pub strictness: bool,
    pub samples_tested: usize,
    pub up_count: usize,
    pub down_count: usize,
    pub flat_count: usize,
    pub min_delta: f64,
    pub max_delta: f64,
    /// Pairs refuting a rejected direction; empty unless the verdict is `neither`.
    pub counterexamples: Vec<ProbeRecord>,
}

impl SchurVerdict {
    /// Checks the structural invariants of a verdict.
    pub fn check_consistency(&self) -> std::result::Result<(), String> {
        let total = self.up_count + self.down_count + self.flat_count;
        if total != self.samples_tested {
            return Err(format!("counts {total} != samples {}", self.samples_tested));
        }
        let expected = match (self.up_count > 0, self.down_count > 0) {
            (false, false) => Classification::Inconclusive,
            (true, false) => Classification::Increasing,
            (false, true) => Classification::Decreasing,
            (true, true) => Classification::Neither,
        };
        if expected != self.classification {
            return Err(format!(
                "classification {:?} but counts imply {expected:?}",
                self.classification
            ));
        }
        if self.classification == Classification::Neither {
            let has = |c| self.counterexamples.iter().any(|r| r.contribution == c);
            if !(has(Contribution::Up) && has(Contribution::Down)) {
                return Err("neither requires counterexamples in both directions".into());
            }
        }
        for r in &self.counterexamples {
            if r.contribution == Contribution::Flat || r.delta.abs() <= r.tolerance {
                return Err(format!(
                    "counterexample #{} does not exceed tolerance",
                    r.index
                ));
            }
            let x = DensityVector::new(r.more_mixed.clone()).map_err(|e| e.to_string())?;
            let y = DensityVector::new(r.less_mixed.clone()).map_err(|e| e.to_string())?;
            if !crate::majorization::majorizes(&x, &y).map_err(|e| e.to_string())? {
                return Err(format!(
                    "counterexample #{} is not a majorization pair",
                    r.index
                ));
            }
        }
        if self.strictness
            && !matches!(
                self.classification,
                Classification::Increasing | Classification::Decreasing
            )
        {
            return Err("strictness only applies to monotone verdicts".into());
        }
        Ok(())
    }
}

fn evaluate<F>(target: &F, x: &DensityVector, index: usize, pair: &MajorizationPair) -> Result<f64>
where
    F: Fn(&DensityVector) -> Result<f64>,
{
    let v = target(x).and_then(|v| {
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Domain(format!("target returned {v}")))
        }
    });
    v.map_err(|e| Error::Target {
        index,
        more_mixed: pair.more_mixed.entries().to_vec(),
        less_mixed: pair.less_mixed.entries().to_vec(),
        source: Box::new(e),
    })
}

fn record<F>(
    target: &F,
    pair: &MajorizationPair,
    tol: f64,
    index: usize,
    source: PairSource,
) -> Result<ProbeRecord>
where
    F: Fn(&DensityVector) -> Result<f64>,
{
    let fx = evaluate(target, &pair.more_mixed, index, pair)?;
    let fy = evaluate(target, &pair.less_mixed, index, pair)?;
    let delta = fx - fy;
    let tolerance = tol * (1.0 + fx.abs().max(fy.abs()));
    let contribution = if delta > tolerance {
        Contribution::Up
    } else if delta < -tolerance {
        Contribution::Down
    } else {
        Contribution::Flat
    };
    Ok(ProbeRecord {
        index,
        source,
        more_mixed: pair.more_mixed.entries().to_vec(),
        less_mixed: pair.less_mixed.entries().to_vec(),
        f_more_mixed: fx,
        f_less_mixed: fy,
        delta,
        tolerance,
        contribution,
        permutation_pair: pair.is_permutation_pair(),
    })
}

/// Evaluates `target` on a single pair.
pub fn probe<F>(target: &F, pair: &MajorizationPair, tol: f64) -> Result<ProbeRecord>
where
    F: Fn(&DensityVector) -> Result<f64>,
{
    record(target, pair, tol, 0, PairSource::Probe)
}

fn chain_pair<R: Rng>(rng: &mut R, n: usize) -> Result<MajorizationPair> {
    let rho = clamped_simplex(rng, n);
    let t1: f64 = rng.random_range(0.0..0.9);
    let t2 = t1 + (1.0 - t1) * rng.random_range(0.1..1.0);
    Ok(MajorizationPair {
        more_mixed: mixing_path(&rho, t2.min(1.0))?,
        less_mixed: mixing_path(&rho, t1)?,
        witness: None,
    })
}

/// Classifies `target` from `samples` random pairs on the `n`-point simplex.
pub fn classify<F>(
    target: &F,
    n: usize,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<SchurVerdict>
where
    F: Fn(&DensityVector) -> Result<f64>,
{
    classify_with_probes(target, n, samples, seed, tol, &[])
}

/// As [`classify`], evaluating `probes` first.
pub fn classify_with_probes<F>(
    target: &F,
    n: usize,
    samples: usize,
    seed: u64,
    tol: f64,
    probes: &[MajorizationPair],
) -> Result<SchurVerdict>
where
    F: Fn(&DensityVector) -> Result<f64>,
{
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "dimension must be at least 2, got {n}"
        )));
    }
    if samples + probes.len() == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance {tol} must be nonnegative"
        )));
    }
    if let Some(p) = probes.iter().find(|p| p.more_mixed.len() != n) {
        return Err(Error::DimensionMismatch(n, p.more_mixed.len()));
    }

    let mut records = Vec::with_capacity(probes.len() + samples);
    for (i, pair) in probes.iter().enumerate() {
        records.push(record(target, pair, tol, i, PairSource::Probe)?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for s in 0..samples {
        let index = probes.len() + s;
        let (pair, source) = if s % 2 == 0 {
            (comparable_pair_from(&mut rng, n)?, PairSource::Birkhoff)
        } else {
            (chain_pair(&mut rng, n)?, PairSource::Chain)
        };
        records.push(record(target, &pair, tol, index, source)?);
    }
    Ok(reduce(records))
}

fn reduce(records: Vec<ProbeRecord>) -> SchurVerdict {
    let count = |c| records.iter().filter(|r| r.contribution == c).count();
    let (up, down, flat) = (
        count(Contribution::Up),
        count(Contribution::Down),
        count(Contribution::Flat),
    );
    let classification = match (up > 0, down > 0) {
        (false, false) => Classification::Inconclusive,
        (true, false) => Classification::Increasing,
        (false, true) => Classification::Decreasing,
        (true, true) => Classification::Neither,
    };
    let strictness = matches!(
        classification,
        Classification::Increasing | Classification::Decreasing
    ) && records
        .iter()
        .all(|r| r.permutation_pair || r.contribution != Contribution::Flat);
    let mut counterexamples = Vec::new();
    if classification == Classification::Neither {
        for dir in [Contribution::Up, Contribution::Down] {
            let mut sampled = 0;
            for r in records.iter().filter(|r| r.contribution == dir) {
                if r.source == PairSource::Probe {
                    counterexamples.push(r.clone());
                } else if sampled < MAX_SAMPLED_COUNTEREXAMPLES {
                    counterexamples.push(r.clone());
                    sampled += 1;
                }
            }
        }
        counterexamples.sort_by_key(|r| r.index);
    }
    let min_delta = records
        .iter()
        .map(|r| r.delta)
        .fold(f64::INFINITY, f64::min);
    let max_delta = records
        .iter()
        .map(|r| r.delta)
        .fold(f64::NEG_INFINITY, f64::max);
    SchurVerdict {
        classification,
        strictness,
        samples_tested: records.len(),
        up_count: up,
        down_count: down,
        flat_count: flat,
        min_delta,
        max_delta,
        counterexamples,
    }
}

/// Shannon entropy `−Σ ρ log ρ`.
pub fn entropy(rho: &DensityVector) -> Result<f64> {
    Ok(-rho.entries().iter().map(|p| p * p.ln()).sum::<f64>())
}

/// The repeated-eigenvalue pair `diag(1/6,1/6,2/3) ≻ diag(2/9,1/9,2/3)`.
pub fn sld_reference_pair() -> MajorizationPair {
    let rho = DensityVector::new(vec![1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0]).expect("valid");
    let sigma = DensityVector::new(vec![2.0 / 9.0, 1.0 / 9.0, 2.0 / 3.0]).expect("valid");
    MajorizationPair::new(rho, sigma).expect("comparable")
}

/// All pairs `(|a_i| < |a_j|)` from `count` equally spaced Bloch radii in
/// `[0, 0.98]`; `count = 46` gives 1035 pairs.
pub fn radial_grid_2x2(count: usize) -> Vec<MajorizationPair> {
    let radii: Vec<f64> = (0..count)
        .map(|k| 0.98 * k as f64 / (count.max(2) - 1) as f64)
        .collect();
    let state = |a: f64| {
        let l = (1.0 + a) / 2.0;
        DensityVector::new(vec![l, 1.0 - l]).expect("valid")
    };
    let mut pairs = Vec::with_capacity(count * count.saturating_sub(1) / 2);
    for i in 0..count {
        for j in i + 1..count {
            pairs.push(MajorizationPair {
                more_mixed: state(radii[i]),
                less_mixed: state(radii[j]),
                witness: None,
            });
        }
    }
    pairs
}

/// Fixed probes always evaluated for `n`-point targets: the 2×2 radial grid
/// for `n = 2`; for larger `n`, mixing chains from two reference states, plus
/// the SLD reference pair when `n = 3`.
pub fn mandatory_probes(n: usize) -> Vec<MajorizationPair> {
    if n == 2 {
        return radial_grid_2x2(46);
    }
    let mut probes = Vec::new();
    if n == 3 {
        probes.push(sld_reference_pair());
    }
    let geometric: Vec<f64> = {
        let raw: Vec<f64> = (0..n).map(|k| 0.5f64.powi(k as i32)).collect();
        let s: f64 = raw.iter().sum();
        raw.into_iter().map(|v| v / s).collect()
    };
    let peaked: Vec<f64> = {
        let rest = 0.1 / (n - 1) as f64;
        std::iter::once(0.9)
            .chain(std::iter::repeat_n(rest, n - 1))
            .collect()
    };
    for base in [geometric, peaked] {
        let Ok(rho) = DensityVector::new(base) else {
            continue;
        };
        let ts = [0.0, 0.25, 0.5, 0.75];
        for w in ts.windows(2) {
            let (Ok(x), Ok(y)) = (mixing_path(&rho, w[1]), mixing_path(&rho, w[0])) else {
                continue;
            };
            probes.push(MajorizationPair {
                more_mixed: x,
                less_mixed: y,
                witness: None,
            });
        }
    }
    probes
}

/// Built-in classification targets, addressed as `entropy`, `neg-entropy`,
/// `spectrum:<metric>`, `simplex:<p>` or `plane:<p>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Target {
    Entropy,
    NegEntropy,
    /// Ambient h-sum curvature of a monotone metric at the diagonal state;
    /// SLD is taken in Bures scale.
    Spectrum(MetricFamily),
    /// Intrinsic α-curvature of the simplex (`n ≥ 3`).
    Simplex(AlphaParameter),
    /// Embedded-curve α-curvature of the two-point simplex.
    Plane(AlphaParameter),
}

impl Target {
    pub fn evaluate(&self, rho: &DensityVector) -> Result<f64> {
        match self {
            Target::Entropy => entropy(rho),
            Target::NegEntropy => entropy(rho).map(|v| -v),
            Target::Spectrum(family) => {
                let scale = match family {
                    MetricFamily::Sld => MetricScale::BURES,
                    _ => MetricScale::UNIT,
                };
                scal_with(family, &Spectrum::from(rho), Convention::Ambient, scale).map(|r| r.value)
            }
            Target::Simplex(p) => {
                simplex_scal_fd(*p, &SimplexChart::from_density(rho), SIMPLEX_DEFAULT_STEP)
            }
            Target::Plane(p) => plane_curvature_at(*p, rho),
        }
    }

    /// Default tolerance: finite-difference targets are noisier.
    pub fn default_tol(&self) -> f64 {
        match self {
            Target::Simplex(_) => 1e-6,
            _ => DEFAULT_TOL,
        }
    }

    /// Pairs always evaluated for this target on `n` points.
    pub fn mandatory_probes(&self, n: usize) -> Vec<MajorizationPair> {
        match self {
            Target::Plane(_) if n == 2 => radial_grid_2x2(46),
            Target::Spectrum(MetricFamily::Sld) if n == 3 => mandatory_probes(3),
            Target::Spectrum(_) if n == 3 => mandatory_probes(3).split_off(1),
            _ => mandatory_probes(n),
        }
    }

    pub fn classify(&self, n: usize, samples: usize, seed: u64) -> Result<SchurVerdict> {
        self.classify_with_tol(n, samples, seed, self.default_tol())
    }

    /// As [`Target::classify`] with an explicit relative tolerance.
    pub fn classify_with_tol(
        &self,
        n: usize,
        samples: usize,
        seed: u64,
        tol: f64,
    ) -> Result<SchurVerdict> {
        if let Target::Plane(_) = self {
            if n != 2 {
                return Err(Error::InvalidArgument(format!(
                    "plane targets need n = 2, got {n}"
                )));
            }
        }
        if let Target::Simplex(_) = self {
            if n < 3 {
                return Err(Error::InvalidArgument(format!(
                    "simplex targets need n >= 3, got {n}"
                )));
            }
        }
        let f = |x: &DensityVector| self.evaluate(x);
        classify_with_probes(&f, n, samples, seed, tol, &self.mandatory_probes(n))
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Entropy => f.write_str("entropy"),
            Target::NegEntropy => f.write_str("neg-entropy"),
            Target::Spectrum(m) => write!(f, "spectrum:{m}"),
            Target::Simplex(p) => write!(f, "simplex:{p}"),
            Target::Plane(p) => write!(f, "plane:{p}"),
        }
    }
}

impl FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "entropy" => return Ok(Target::Entropy),
            "neg-entropy" => return Ok(Target::NegEntropy),
            _ => {}
        }
        match s.split_once(':') {
            Some(("spectrum", m)) => Ok(Target::Spectrum(m.parse()?)),
            Some(("simplex", p)) => Ok(Target::Simplex(p.parse()?)),
            Some(("plane", p)) => Ok(Target::Plane(p.parse()?)),
            _ => Err(Error::InvalidArgument(format!(
                "unknown target {s:?}; expected entropy, neg-entropy, spectrum:<metric>, simplex:<p> or plane:<p>"
            ))),
        }
    }
}
