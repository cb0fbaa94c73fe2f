//! # monocurv
//!
//! Scalar curvature of information-geometric metrics and numerical tests of
//! their monotonicity under mixing.
//!
//! ## Modules
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`majorization`] | "more mixed" preorder, Birkhoff sampling of doubly stochastic maps, comparable pairs |
//! | [`metric`] | operator monotone functions `f` (WYD(p), SLD, BKM, WY), Chentsov–Morozova kernels |
//! | [`dittmann`] | spectral scalar curvature of monotone metrics (h-sum) and the closed 2×2 form `r_f(a)` |
//! | [`simplex`] | classical α-geometry on the probability simplex: plane curvature, metric, FD scalar curvature |
//! | [`matrix`] | α-geometry on 2×2 density matrices via divided differences |
//! | [`riemann`] | finite-difference Christoffel → Riemann → Ricci → scalar pipeline |
//! | [`schur`] | empirical Schur-monotonicity classification and built-in targets |
//! | [`evidence`] | profile sweeps and the conjecture-evidence report |
//!
//! ## Conventions
//!
//! `x ≻ y` ([`majorizes`]) reads "x is more mixed than y": the decreasingly
//! sorted prefix sums of `x` never exceed those of `y`. This is the reverse
//! of the arrow used in most majorization texts.
//!
//! A Schur-increasing function grows along this direction, so entropy is
//! Schur-increasing.
//!
//! Scalar curvature of a monotone metric comes in two flavours: on all
//! positive matrices ([`Convention::Ambient`]) and on the trace-one slice
//! ([`Convention::Normalized`]); they differ by `(n²−1)(n²−2)/4`.

pub mod dittmann;
mod error;
pub mod evidence;
pub mod majorization;
pub mod matrix;
pub mod metric;
pub mod riemann;
pub mod schur;
pub mod simplex;
mod special;

pub use dittmann::{
    andai_r, h_components, scal_ambient, scal_normalized, Convention, CurvatureReport, FormulaPath,
    HComponents, MetricScale, Spectrum,
};
pub use error::{Error, Result};
pub use evidence::{conjecture_report, ConjectureReport, Grid, ReportConfig};
pub use majorization::{
    majorizes, mixing_path, sample_comparable_pair, sample_doubly_stochastic, DensityVector,
    DoublyStochasticMap, MajorizationPair,
};

pub use matrix::{matrix_scal_fd, pullback_metric_2x2, BlochPoint, DividedDifferenceKernel};
pub use metric::{cm_c, cm_dlog, f_derivatives, f_wyd, is_admissible, MetricFamily, WydParam};
pub use schur::{
    classify, classify_with_probes, probe, Classification, Contribution, ProbeRecord, SchurVerdict,
    Target,
};
pub use simplex::{
    dualized_pullback_commutative, plane_curvature, simplex_metric, simplex_scal_fd,
    AlphaParameter, SimplexChart,
};

/// Library version echoed into JSON reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
