//! Normalized symmetric operator monotone functions and their
//! Chentsov–Morozova kernels.
//!
//! The WYD family is evaluated in logarithmic coordinates. With
//! `t = ln x`, `a = 1/p`, `b = 1 − a` and `E(s) = (e^s − 1)/s`,
//!
//! ```text
//! f_p(e^t) = E(t)² / (E(a t) · E(b t))
//! ```
//!
//! which has no 0/0 at `x = 1`, covers BKM (`a = 1, b = 0`) and `p = ∞`
//! without special cases, and stays accurate for `p` within 1e-6 of 1.
//! Derivatives follow from the log-derivatives of `E`, which are expanded
//! in Bernoulli series near the origin.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::{d2log_expm1_ratio, dlog_expm1_ratio, expm1_ratio, Scalar};

/// WYD parameter `p`; `p = ∞` is its own variant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WydParam {
    Finite(f64),
    Infinity,
}

impl WydParam {
    /// Conjugate exponent `p̃` with `1/p + 1/p̃ = 1`.
    pub fn dual(self) -> WydParam {
        match self {
            WydParam::Infinity => WydParam::Finite(1.0),
            WydParam::Finite(1.0) => WydParam::Infinity,
            WydParam::Finite(p) => WydParam::Finite(p / (p - 1.0)),
        }
    }

    /// `1/p`, with `1/∞ = 0`.
    pub fn reciprocal(self) -> f64 {
        match self {
            WydParam::Infinity => 0.0,
            WydParam::Finite(p) => 1.0 / p,
        }
    }
}

impl fmt::Display for WydParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WydParam::Infinity => write!(f, "inf"),
            WydParam::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for WydParam {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "+inf" | "infinity" | "∞" => Ok(WydParam::Infinity),
            other => other
                .parse::<f64>()
                .ok()
                .filter(|p| p.is_finite())
                .map(WydParam::Finite)
                .ok_or_else(|| Error::InvalidArgument(format!("cannot parse parameter {other:?}"))),
        }
    }
}

/// `p ∈ (−∞, −1] ∪ [1/2, +∞]`: exactly the parameters for which `f_p` is
/// operator monotone.
pub fn is_admissible(p: WydParam) -> bool {
    match p {
        WydParam::Infinity => true,
        WydParam::Finite(p) => p <= -1.0 || p >= 0.5,
    }
}

/// A monotone metric, identified by its operator monotone function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MetricFamily {
    /// Wigner–Yanase–Dyson metric with parameter `p`.
    Wyd(WydParam),
    /// Symmetric logarithmic derivative (Bures): `f(x) = (1 + x)/2`.
    Sld,
    /// Bogoliubov–Kubo–Mori: `f(x) = (x − 1)/ln x`.
    Bkm,
    /// Wigner–Yanase: `f = f_2 = (√x + 1)²/4`.
    Wy,
}

impl MetricFamily {
    /// WYD(p), rejecting parameters outside the operator monotone range.
    pub fn wyd(p: WydParam) -> Result<Self> {
        match p {
            WydParam::Finite(0.0) => Err(Error::UndefinedParameter),
            WydParam::Finite(v) if !is_admissible(p) => Err(Error::NotAdmissible(v)),
            _ => Ok(MetricFamily::Wyd(p)),
        }
    }

    /// `(1/p, 1/p̃)` for families in the WYD form.
    fn exponents(&self) -> Option<(f64, f64)> {
        match *self {
            MetricFamily::Sld => None,
            MetricFamily::Bkm => Some((1.0, 0.0)),
            MetricFamily::Wy => Some((0.5, 0.5)),
            MetricFamily::Wyd(p) => {
                let a = p.reciprocal();
                Some((a, 1.0 - a))
            }
        }
    }

    /// `(f, f′, f″)` at `x`, valid for complex `x` off the negative real axis.
    pub(crate) fn eval<T: Scalar>(&self, x: T) -> [T; 3] {
        self.eval_upto(x, 2)
    }

    /// As [`eval`](Self::eval), skipping derivatives above `order` (left as 0).
    fn eval_upto<T: Scalar>(&self, x: T, order: u8) -> [T; 3] {
        let half = T::lift(0.5);
        let Some((a, b)) = self.exponents() else {
            return [(T::one() + x) * half, half, T::zero()];
        };
        let (ta, tb) = (T::lift(a), T::lift(b));
        let t = x.ln();
        let value = {
            let e = expm1_ratio(t);
            e * e / (expm1_ratio(t * ta) * expm1_ratio(t * tb))
        };
        if order == 0 {
            return [value, T::zero(), T::zero()];
        }
        let g1 = T::lift(2.0) * dlog_expm1_ratio(t)
            - ta * dlog_expm1_ratio(t * ta)
            - tb * dlog_expm1_ratio(t * tb);
        if order == 1 {
            return [value, value * g1 / x, T::zero()];
        }
        let g2 = T::lift(2.0) * d2log_expm1_ratio(t)
            - ta * ta * d2log_expm1_ratio(t * ta)
            - tb * tb * d2log_expm1_ratio(t * tb);
        [value, value * g1 / x, value * (g2 + g1 * g1 - g1) / (x * x)]
    }

    pub(crate) fn c_gen<T: Scalar>(&self, x: T, y: T) -> T {
        let [f, _, _] = self.eval_upto(x / y, 0);
        T::one() / (y * f)
    }

    /// `∂₁ ln c(z, x) = −f′(z/x) / (x f(z/x))`.
    pub(crate) fn dlog_c_gen<T: Scalar>(&self, z: T, x: T) -> T {
        let [f, df, _] = self.eval_upto(z / x, 1);
        -df / (x * f)
    }

    pub fn f(&self, x: f64) -> Result<f64> {
        positive(x)?;
        Ok(self.eval(x)[0])
    }

    /// `(f′(x), f″(x))`.
    pub fn derivatives(&self, x: f64) -> Result<(f64, f64)> {
        positive(x)?;
        let [_, d1, d2] = self.eval(x);
        Ok((d1, d2))
    }

    /// Chentsov–Morozova function `c(x, y) = 1/(y f(x/y))`.
    pub fn c(&self, x: f64, y: f64) -> Result<f64> {
        positive(x)?;
        positive(y)?;
        Ok(self.c_gen(x, y))
    }

    /// `∂c/∂x (x, y) = −f′(x/y) / (y² f(x/y)²)`.
    pub fn dc(&self, x: f64, y: f64) -> Result<f64> {
        positive(x)?;
        positive(y)?;
        let [f, df, _] = self.eval(x / y);
        Ok(-df / (y * y * f * f))
    }

    /// `∂₁ ln c(z, x)`.
    pub fn dlog_c(&self, z: f64, x: f64) -> Result<f64> {
        positive(z)?;
        positive(x)?;
        Ok(self.dlog_c_gen(z, x))
    }
}

impl fmt::Display for MetricFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricFamily::Wyd(p) => write!(f, "wyd:{p}"),
            MetricFamily::Sld => write!(f, "sld"),
            MetricFamily::Bkm => write!(f, "bkm"),
            MetricFamily::Wy => write!(f, "wy"),
        }
    }
}

impl FromStr for MetricFamily {
    type Err = Error;
    /// `wyd:<p>` (with `inf` allowed), `sld`, `bkm` or `wy`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        match s.as_str() {
            "sld" | "bures" => Ok(MetricFamily::Sld),
            "bkm" => Ok(MetricFamily::Bkm),
            "wy" => Ok(MetricFamily::Wy),
            _ => match s.strip_prefix("wyd:") {
                Some(p) => MetricFamily::wyd(p.parse()?),
                None => Err(Error::InvalidArgument(format!("unknown metric {s:?}"))),
            },
        }
    }
}

impl Serialize for MetricFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MetricFamily {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn positive(x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "argument {x} must be a positive real"
        )))
    }
}

/// `f_p(x)` for any `p ≠ 0`; `p = 1` and `p = ∞` give `(x − 1)/ln x`.
pub fn f_wyd(p: WydParam, x: f64) -> Result<f64> {
    if p == WydParam::Finite(0.0) {
        return Err(Error::UndefinedParameter);
    }
    MetricFamily::Wyd(p).f(x)
}

pub fn f_derivatives(family: &MetricFamily, x: f64) -> Result<(f64, f64)> {
    family.derivatives(x)
}

pub fn cm_c(family: &MetricFamily, x: f64, y: f64) -> Result<f64> {
    family.c(x, y)
}

/// Derivative of `ln c` in its first argument, evaluated at `(z, x)`.
pub fn cm_dlog(family: &MetricFamily, z: f64, x: f64) -> Result<f64> {
    family.dlog_c(z, x)
}
