// Oracle digits are kept as produced.
#![allow(clippy::excessive_precision)]

use monocurv::metric::{f_derivatives, f_wyd, is_admissible, MetricFamily, WydParam};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

// 60-digit evaluations of the closed form at p = 1 + 1e-6.
const NEAR_ONE: [(f64, f64); 10] = [
    (0.01, 0.21497605856597253189),
    (0.1, 0.390865192847612334),
    (0.3, 0.58140855014916222939),
    (0.5, 0.72134754909690463512),
    (0.9, 0.94912215898083044442),
    (1.5, 1.2331517480364510963),
    (3.0, 1.820478632774873033),
    (7.0, 3.0833909708267765155),
    (20.0, 6.3423599708487728045),
    (100.0, 21.497605856597253189),
];

#[test]
fn near_one_matches_extended_precision() {
    let p = WydParam::Finite(1.0 + 1e-6);
    for (x, want) in NEAR_ONE {
        let got = f_wyd(p, x).unwrap();
        assert!(rel(got, want) < 1e-12, "x={x}: {got} vs {want}");
    }
}

#[test]
fn dual_exponents_give_the_same_function() {
    for p in [1.5, 3.0, -1.0, -2.0, 0.75, 1.1] {
        let q = WydParam::Finite(p).dual();
        for x in [0.05, 0.4, 1.0, 2.5, 40.0] {
            let a = f_wyd(WydParam::Finite(p), x).unwrap();
            let b = f_wyd(q, x).unwrap();
            assert!(rel(a, b) < 1e-13, "p={p} x={x}");
        }
    }
}

#[test]
fn symmetric_and_normalized() {
    let fams = [
        MetricFamily::Sld,
        MetricFamily::Bkm,
        MetricFamily::Wy,
        MetricFamily::wyd(WydParam::Finite(3.0)).unwrap(),
        MetricFamily::wyd(WydParam::Finite(-1.0)).unwrap(),
        MetricFamily::wyd(WydParam::Infinity).unwrap(),
    ];
    for fam in fams {
        assert!((fam.f(1.0).unwrap() - 1.0).abs() < 1e-15);
        for x in [0.01, 0.3, 2.0, 17.0] {
            let lhs = fam.f(x).unwrap();
            let rhs = x * fam.f(1.0 / x).unwrap();
            assert!(rel(lhs, rhs) < 1e-13, "{fam} x={x}");
        }
    }
}

#[test]
fn approaches_bkm_as_p_tends_to_one() {
    for x in [0.2, 3.0, 50.0] {
        let bkm = MetricFamily::Bkm.f(x).unwrap();
        let mut prev = f64::INFINITY;
        for k in 2..=8 {
            let d = (f_wyd(WydParam::Finite(1.0 + 10f64.powi(-k)), x).unwrap() - bkm).abs();
            assert!(d <= prev * 1.01 + 1e-15);
            prev = d;
        }
        assert!(prev < 1e-7 * bkm);
    }
}

#[test]
fn derivatives_match_richardson_differences() {
    let fams = [
        MetricFamily::Sld,
        MetricFamily::Bkm,
        MetricFamily::Wy,
        MetricFamily::wyd(WydParam::Finite(1.5)).unwrap(),
        MetricFamily::wyd(WydParam::Finite(1.0 + 1e-6)).unwrap(),
        MetricFamily::wyd(WydParam::Finite(-2.0)).unwrap(),
    ];
    for fam in fams {
        for x in [0.1, 0.7, 1.0, 1.3, 9.0] {
            let f = |t: f64| fam.f(t).unwrap();
            let d1 = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
            let d2 = |h: f64| (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
            let h = 1e-2 * x;
            let fd1 = (4.0 * d1(h / 2.0) - d1(h)) / 3.0;
            let fd2 = (4.0 * d2(h / 2.0) - d2(h)) / 3.0;
            let (g1, g2) = f_derivatives(&fam, x).unwrap();
            assert!(
                (g1 - fd1).abs() < 1e-7 * (1.0 + g1.abs()),
                "{fam} f' at {x}"
            );
            assert!(
                (g2 - fd2).abs() < 1e-5 * (1.0 + g2.abs()),
                "{fam} f'' at {x}"
            );
        }
    }
}

#[test]
fn kernel_is_homogeneous() {
    let fam = MetricFamily::wyd(WydParam::Finite(3.0)).unwrap();
    for (x, y) in [(0.2, 0.5), (1.0, 3.0), (0.7, 0.7)] {
        for t in [0.1, 2.0, 9.0] {
            let c = fam.c(x, y).unwrap();
            assert!(rel(fam.c(t * x, t * y).unwrap(), c / t) < 1e-13);
            let d = fam.dlog_c(x, y).unwrap();
            assert!(rel(fam.dlog_c(t * x, t * y).unwrap(), d / t) < 1e-12);
        }
    }
}

#[test]
fn admissible_region() {
    for p in [-5.0, -1.0, 0.5, 0.9, 1.0, 2.0, 1e6] {
        assert!(is_admissible(WydParam::Finite(p)), "{p}");
    }
    for p in [-0.5, 0.0, 0.4, 0.49] {
        assert!(!is_admissible(WydParam::Finite(p)), "{p}");
        assert!(MetricFamily::wyd(WydParam::Finite(p)).is_err());
    }
    assert!(is_admissible(WydParam::Infinity));
}
