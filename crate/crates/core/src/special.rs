//! Cancellation-free building blocks shared by the metric and kernel code.
//!
//! Everything here is generic over real and complex scalars so the same
//! expressions can be evaluated on contours around removable singularities.

use num_complex::{Complex64, ComplexFloat};

pub(crate) trait Scalar: ComplexFloat<Real = f64> + From<f64> {
    fn lift(v: f64) -> Self {
        <Self as From<f64>>::from(v)
    }
}

impl Scalar for f64 {}
impl Scalar for Complex64 {}

/// Even Bernoulli numbers B_2 .. B_20.
const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

const SERIES_RADIUS: f64 = 1.0;

/// `1/(k+1)!` for `k = 0..=20`.
const EXPM1_COEFFS: [f64; 21] = {
    let mut c = [0.0; 21];
    let mut fact = 1.0;
    let mut k = 0;
    while k < 21 {
        fact *= (k + 1) as f64;
        c[k] = 1.0 / fact;
        k += 1;
    }
    c
};

/// `B_{2j}/(2j)!` and `(2j−1)·B_{2j}/(2j)!` for `j = 1..=10`.
const DLOG_COEFFS: ([f64; 10], [f64; 10]) = {
    let mut d1 = [0.0; 10];
    let mut d2 = [0.0; 10];
    let mut fact = 1.0;
    let mut k = 1;
    while k <= 20 {
        fact *= k as f64;
        if k % 2 == 0 {
            let j = k / 2 - 1;
            d1[j] = BERNOULLI_EVEN[j] / fact;
            d2[j] = BERNOULLI_EVEN[j] * (k - 1) as f64 / fact;
        }
        k += 1;
    }
    (d1, d2)
};

/// `(e^s − 1)/s`, equal to 1 at the origin.
pub(crate) fn expm1_ratio<T: Scalar>(s: T) -> T {
    if s.abs() < SERIES_RADIUS {
        // Σ s^k/(k+1)!, Horner from the top.
        let mut acc = T::lift(EXPM1_COEFFS[20]);
        for c in EXPM1_COEFFS[..20].iter().rev() {
            acc = acc * s + T::lift(*c);
        }
        acc
    } else {
        (s.exp() - T::one()) / s
    }
}

/// First derivative of `ln((e^s − 1)/s)`: `1/(1 − e^{−s}) − 1/s`.
pub(crate) fn dlog_expm1_ratio<T: Scalar>(s: T) -> T {
    if s.abs() < SERIES_RADIUS {
        let s2 = s * s;
        let mut acc = T::zero();
        for c in DLOG_COEFFS.0.iter().rev() {
            acc = acc * s2 + T::lift(*c);
        }
        T::lift(0.5) + acc * s
    } else {
        T::one() / (T::one() - (-s).exp()) - T::one() / s
    }
}

/// Second derivative of `ln((e^s − 1)/s)`: `1/s² − 1/(4 sinh²(s/2))`.
pub(crate) fn d2log_expm1_ratio<T: Scalar>(s: T) -> T {
    if s.abs() < SERIES_RADIUS {
        let s2 = s * s;
        let mut acc = T::zero();
        for c in DLOG_COEFFS.1.iter().rev() {
            acc = acc * s2 + T::lift(*c);
        }
        acc
    } else {
        let sh = (s * T::lift(0.5)).sinh() * T::lift(2.0);
        T::one() / (s * s) - T::one() / (sh * sh)
    }
}

/// Mean of `g` over `count` equally spaced points of the circle `|w| = radius`.
///
/// For `g` analytic on the closed disk this is `g(0)` up to `(radius/R)^count`,
/// where `R` is the distance to the nearest non-removable singularity.
pub(crate) fn circle_mean<const N: usize, F>(radius: f64, count: usize, mut g: F) -> [Complex64; N]
where
    F: FnMut(Complex64) -> [Complex64; N],
{
    let mut acc = [Complex64::new(0.0, 0.0); N];
    for k in 0..count {
        // Half-step offset keeps nodes off the real axis.
        let angle = std::f64::consts::TAU * (k as f64 + 0.5) / count as f64;
        let v = g(Complex64::from_polar(radius, angle));
        for (a, b) in acc.iter_mut().zip(v) {
            *a += b;
        }
    }
    acc.map(|a| a / count as f64)
}
