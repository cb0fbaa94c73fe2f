//! Scalar curvature of a metric given pointwise in a chart.
//!
//! Christoffel symbols come from central differences of the metric; their
//! own derivatives from central differences of the symbols at shifted
//! points. The result at step `h` is combined with the one at `h/2` by a
//! single Richardson step, removing the `O(h²)` term.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// `Γ^k_ij` stored as `gamma[(k * d + i) * d + j]`.
struct Christoffel {
    dim: usize,
    gamma: Vec<f64>,
}

impl Christoffel {
    fn get(&self, k: usize, i: usize, j: usize) -> f64 {
        self.gamma[(k * self.dim + i) * self.dim + j]
    }
}

fn shifted(x: &[f64], axis: usize, delta: f64) -> Vec<f64> {
    let mut y = x.to_vec();
    y[axis] += delta;
    y
}

fn christoffel<F>(metric: &F, x: &[f64], h: f64) -> Result<Christoffel>
where
    F: Fn(&[f64]) -> Result<DMatrix<f64>>,
{
    let d = x.len();
    let g = metric(x)?;
    let ginv = g.clone().try_inverse().ok_or(Error::SingularMetric)?;
    // dg[l] = ∂_l g
    let mut dg = Vec::with_capacity(d);
    for l in 0..d {
        let plus = metric(&shifted(x, l, h))?;
        let minus = metric(&shifted(x, l, -h))?;
        dg.push((plus - minus) / (2.0 * h));
    }
    let mut gamma = vec![0.0; d * d * d];
    for k in 0..d {
        for i in 0..d {
            for j in 0..d {
                let mut acc = 0.0;
                for l in 0..d {
                    acc += ginv[(k, l)] * (dg[i][(j, l)] + dg[j][(i, l)] - dg[l][(i, j)]);
                }
                gamma[(k * d + i) * d + j] = 0.5 * acc;
            }
        }
    }
    Ok(Christoffel { dim: d, gamma })
}

/// Scalar curvature at a single finite-difference step.
pub fn scalar_curvature_at_step<F>(metric: &F, x: &[f64], h: f64) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<DMatrix<f64>>,
{
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "finite-difference step {h} must be positive"
        )));
    }
    let d = x.len();
    let g = metric(x)?;
    let ginv = g.try_inverse().ok_or(Error::SingularMetric)?;
    let gam = christoffel(metric, x, h)?;
    // dgam[m] = ∂_m Γ
    let mut dgam = Vec::with_capacity(d);
    for m in 0..d {
        let plus = christoffel(metric, &shifted(x, m, h), h)?;
        let minus = christoffel(metric, &shifted(x, m, -h), h)?;
        let diff: Vec<f64> = plus
            .gamma
            .iter()
            .zip(&minus.gamma)
            .map(|(p, q)| (p - q) / (2.0 * h))
            .collect();
        dgam.push(Christoffel {
            dim: d,
            gamma: diff,
        });
    }
    // Ric_kj = R^i_kij = ∂_i Γ^i_jk − ∂_j Γ^i_ik + Γ^i_im Γ^m_jk − Γ^i_jm Γ^m_ik
    let mut scal = 0.0;
    for k in 0..d {
        for j in 0..d {
            let mut ric = 0.0;
            for i in 0..d {
                ric += dgam[i].get(i, j, k) - dgam[j].get(i, i, k);
                for m in 0..d {
                    ric +=
                        gam.get(i, i, m) * gam.get(m, j, k) - gam.get(i, j, m) * gam.get(m, i, k);
                }
            }
            scal += ginv[(k, j)] * ric;
        }
    }
    Ok(scal)
}

/// Richardson-extrapolated scalar curvature from steps `h` and `h/2`.
pub fn scalar_curvature_fd<F>(metric: &F, x: &[f64], h: f64) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<DMatrix<f64>>,
{
    let coarse = scalar_curvature_at_step(metric, x, h)?;
    let fine = scalar_curvature_at_step(metric, x, h / 2.0)?;
    Ok((4.0 * fine - coarse) / 3.0)
}
