//! The "more mixed" preorder on probability vectors and spectra.
//!
//! `majorizes(x, y)` is true when `x` is more mixed than `y`: every prefix
//! sum of `x` sorted decreasingly is at most the matching prefix sum of `y`.
//! Matrices are compared through their spectra, so the same routines serve
//! density matrices once eigenvalues are known.
//!
//! Comparable pairs are produced constructively: any `y` and doubly
//! stochastic `T` give `Ty ≻ y`. Doubly stochastic maps are sampled as
//! random points of the Birkhoff polytope (convex combinations of
//! permutation matrices).

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for prefix-sum comparisons and stochasticity checks.
pub const PREFIX_TOL: f64 = 1e-12;

/// Pair sampling keeps every entry at least this far from zero.
pub const BOUNDARY_CLAMP: f64 = 1e-3;

/// A strictly positive probability vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct DensityVector(Vec<f64>);

impl DensityVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::NotDensity(format!(
                "need at least 2 entries, got {}",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::NotDensity(format!(
                "entry {bad} is not strictly positive"
            )));
        }
        let sum: f64 = entries.iter().sum();
        if (sum - 1.0).abs() > PREFIX_TOL {
            return Err(Error::NotDensity(format!("entries sum to {sum}, not 1")));
        }
        Ok(Self(entries))
    }

    /// The maximally mixed vector `(1/n, …, 1/n)`.
    pub fn uniform(n: usize) -> Result<Self> {
        Self::new(vec![1.0 / n as f64; n])
    }

    pub fn entries(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Entries sorted in decreasing order.
    pub fn sorted_desc(&self) -> Vec<f64> {
        let mut v = self.0.clone();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    /// True when `other` is a permutation of `self` (sorted entries equal within 1e-12).
    pub fn is_permutation_of(&self, other: &DensityVector) -> bool {
        self.len() == other.len()
            && self
                .sorted_desc()
                .iter()
                .zip(other.sorted_desc())
                .all(|(a, b)| (a - b).abs() <= PREFIX_TOL)
    }
}

impl TryFrom<Vec<f64>> for DensityVector {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<DensityVector> for Vec<f64> {
    fn from(v: DensityVector) -> Self {
        v.0
    }
}

/// Nonnegative square matrix whose rows and columns each sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct DoublyStochasticMap(DMatrix<f64>);

impl DoublyStochasticMap {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() < 1 {
            return Err(Error::InvalidArgument(
                "doubly stochastic map must be square".into(),
            ));
        }
        if matrix.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::InvalidArgument(
                "negative entry in stochastic map".into(),
            ));
        }
        for i in 0..matrix.nrows() {
            let row: f64 = matrix.row(i).iter().sum();
            let col: f64 = matrix.column(i).iter().sum();
            if (row - 1.0).abs() > PREFIX_TOL || (col - 1.0).abs() > PREFIX_TOL {
                return Err(Error::InvalidArgument(format!(
                    "row/column {i} sums to {row}/{col}"
                )));
            }
        }
        Ok(Self(matrix))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    /// `T v` for an arbitrary vector of matching length.
    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch(self.dim(), v.len()));
        }
        Ok((0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.0[(i, j)] * v[j]).sum())
            .collect())
    }
}

/// `more_mixed ≻ less_mixed`, optionally with the map that realizes it.
#[derive(Debug, Clone, PartialEq)]
pub struct MajorizationPair {
    pub more_mixed: DensityVector,
    pub less_mixed: DensityVector,
    pub witness: Option<DoublyStochasticMap>,
}

impl MajorizationPair {
    /// Checks the relation before building the pair.
    pub fn new(more_mixed: DensityVector, less_mixed: DensityVector) -> Result<Self> {
        if !majorizes(&more_mixed, &less_mixed)? {
            return Err(Error::InvalidArgument(
                "first vector is not more mixed than the second".into(),
            ));
        }
        Ok(Self {
            more_mixed,
            less_mixed,
            witness: None,
        })
    }

    /// `(T y, y, T)`.
    pub fn from_map(map: DoublyStochasticMap, less_mixed: DensityVector) -> Result<Self> {
        let image = map.apply(less_mixed.entries())?;
        let more_mixed = DensityVector::new(image)?;
        if !majorizes(&more_mixed, &less_mixed)? {
            return Err(Error::InvalidArgument(
                "image under doubly stochastic map failed the prefix test".into(),
            ));
        }
        Ok(Self {
            more_mixed,
            less_mixed,
            witness: Some(map),
        })
    }

    pub fn is_permutation_pair(&self) -> bool {
        self.more_mixed.is_permutation_of(&self.less_mixed)
    }
}

/// `x ≻ y`: `x` is more mixed than `y`.
pub fn majorizes(x: &DensityVector, y: &DensityVector) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch(x.len(), y.len()));
    }
    let xs = x.sorted_desc();
    let ys = y.sorted_desc();
    let (mut px, mut py) = (0.0, 0.0);
    for k in 0..xs.len() - 1 {
        px += xs[k];
        py += ys[k];
        if px > py + PREFIX_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_dim(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "dimension must be at least 2, got {n}"
        )));
    }
    Ok(())
}

/// Flat Dirichlet draw on the open simplex.
pub(crate) fn flat_simplex<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let draws: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = draws.iter().sum();
    draws.into_iter().map(|d| d / total).collect()
}

pub(crate) fn doubly_stochastic_from<R: Rng>(
    rng: &mut R,
    n: usize,
    k: usize,
) -> DoublyStochasticMap {
    let weights = if k == 1 {
        vec![1.0]
    } else {
        flat_simplex(rng, k)
    };
    let mut m = DMatrix::zeros(n, n);
    let mut perm: Vec<usize> = (0..n).collect();
    for w in weights {
        perm.shuffle(rng);
        for (i, &j) in perm.iter().enumerate() {
            m[(i, j)] += w;
        }
    }
    DoublyStochasticMap(m)
}

/// Draws `y` on the clamped simplex interior.
pub(crate) fn clamped_simplex<R: Rng>(rng: &mut R, n: usize) -> DensityVector {
    let shrink = 1.0 - n as f64 * BOUNDARY_CLAMP;
    let raw = flat_simplex(rng, n);
    let mut v: Vec<f64> = raw.iter().map(|r| BOUNDARY_CLAMP + shrink * r).collect();
    // Push the rounding residue into the largest entry.
    let resid = 1.0 - v.iter().sum::<f64>();
    let imax = (0..n).max_by(|&a, &b| v[a].total_cmp(&v[b])).unwrap_or(0);
    v[imax] += resid;
    DensityVector(v)
}

/// Convex combination of `k` uniformly random `n×n` permutation matrices with
/// flat-Dirichlet weights. Deterministic in `seed`.
pub fn sample_doubly_stochastic(n: usize, k: usize, seed: u64) -> Result<DoublyStochasticMap> {
    check_dim(n)?;
    if k < 1 {
        return Err(Error::InvalidArgument(
            "need at least one permutation summand".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(doubly_stochastic_from(&mut rng, n, k))
}

/// Samples `y` on the clamped simplex and `T` with `n²` summands; returns `(Ty, y, T)`.
pub fn sample_comparable_pair(n: usize, seed: u64) -> Result<MajorizationPair> {
    check_dim(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    comparable_pair_from(&mut rng, n)
}

pub(crate) fn comparable_pair_from<R: Rng>(rng: &mut R, n: usize) -> Result<MajorizationPair> {
    let y = clamped_simplex(rng, n);
    let t = doubly_stochastic_from(rng, n, n * n);
    let mut image = t.apply(y.entries())?;
    let resid = 1.0 - image.iter().sum::<f64>();
    let imax = (0..n)
        .max_by(|&a, &b| image[a].total_cmp(&image[b]))
        .unwrap_or(0);
    image[imax] += resid;
    let more_mixed = DensityVector::new(image)?;
    Ok(MajorizationPair {
        more_mixed,
        less_mixed: y,
        witness: Some(t),
    })
}

/// `(1 − t) ρ + t · uniform`.
pub fn mixing_path(rho: &DensityVector, t: f64) -> Result<DensityVector> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!(
            "mixing parameter t = {t} outside [0, 1]"
        )));
    }
    let u = 1.0 / rho.len() as f64;
    Ok(DensityVector(
        rho.entries()
            .iter()
            .map(|r| (1.0 - t) * r + t * u)
            .collect(),
    ))
}
