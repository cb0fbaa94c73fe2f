//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs without the libtest harness so the summary is always shown.

use std::f64::consts::FRAC_PI_4;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use monocurv::dittmann::{andai_r, scal_normalized, wy_constant, Spectrum};
use monocurv::evidence::{profile_shape, ConjectureReport};
use monocurv::majorization::DensityVector;
use monocurv::schur::{
    classify, classify_with_probes, entropy, radial_grid_2x2, Classification, Contribution,
    PairSource, Target,
};
use monocurv::simplex::{plane_curvature, simplex_scal_fd, SimplexChart};
use monocurv::{matrix_scal_fd, AlphaParameter, BlochPoint, MetricFamily, WydParam};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BIN: &str = env!("CARGO_BIN_EXE_monocurv");

fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(BIN)
        .args(args)
        .output()
        .expect("spawn monocurv");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn run_ok(args: &[&str]) -> String {
    let (code, stdout, stderr) = run(args);
    assert_eq!(code, 0, "monocurv {args:?} failed: {stderr}");
    stdout
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn within(start: Instant, limit: Duration) -> String {
    let t = start.elapsed();
    assert!(t < limit, "runtime {t:?} exceeds {limit:?}");
    format!("{:.2}s", t.as_secs_f64())
}

fn random_spectrum(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let v: Vec<f64> = (0..n).map(|_| rng.random_range(0.02..1.0)).collect();
    let s: f64 = v.iter().sum();
    v.into_iter().map(|x| x / s).collect()
}

fn sld_curvature(eigs: &str, convention: &str) -> f64 {
    let out = run_ok(&[
        "curvature",
        "--metric",
        "sld",
        "--eigs",
        eigs,
        "--convention",
        convention,
        "--scale",
        "bures",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    v["report"]["value"].as_f64().unwrap()
}

fn c1_sld_values() -> String {
    let start = Instant::now();
    let targets = [3078.0 / 25.0, 3447.0 / 28.0];
    let spectra = ["2/9,1/9,2/3", "1/6,1/6,2/3"];
    let mut matching = Vec::new();
    let mut assignment = String::new();
    for convention in ["ambient", "normalized"] {
        let values: Vec<f64> = spectra
            .iter()
            .map(|s| sld_curvature(s, convention))
            .collect();
        let direct = rel(values[0], targets[0]) < 1e-9 && rel(values[1], targets[1]) < 1e-9;
        let swapped = rel(values[0], targets[1]) < 1e-9 && rel(values[1], targets[0]) < 1e-9;
        if direct || swapped {
            matching.push(convention);
            assignment = format!(
                "(2/9,1/9,2/3) -> {:.6}, (1/6,1/6,2/3) -> {:.6}",
                values[0], values[1]
            );
        }
    }
    assert_eq!(
        matching,
        ["ambient"],
        "conventions matching both values: {matching:?}"
    );
    format!(
        "ambient, Bures scale g/4; {assignment}; {}",
        within(start, Duration::from_secs(1))
    )
}

fn c2_wy_constant() -> String {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for n in [2, 3] {
        for _ in 0..50 {
            let s = Spectrum::new(random_spectrum(&mut rng, n)).unwrap();
            let v = scal_normalized(&MetricFamily::Wy, &s).unwrap().value;
            worst = worst.max(rel(v, wy_constant(n)));
        }
    }
    assert_eq!(wy_constant(2), 1.5);
    assert_eq!(wy_constant(3), 14.0);
    assert!(worst < 1e-8, "worst relative error {worst:e}");
    format!(
        "100 spectra, worst rel err {worst:.1e}; {}",
        within(start, Duration::from_secs(5))
    )
}

fn c3_plane() -> String {
    let start = Instant::now();
    let grid: Vec<f64> = (1..=500).map(|k| FRAC_PI_4 * k as f64 / 501.0).collect();
    let p = |v: f64| AlphaParameter::finite(v).unwrap();
    for &t in &grid {
        assert!((plane_curvature(p(2.0), t).unwrap() - 0.5).abs() < 1e-12);
    }
    let curve = |a: AlphaParameter| -> Vec<f64> {
        grid.iter()
            .map(|&t| plane_curvature(a, t).unwrap())
            .collect()
    };
    for v in [1.2, 1.5, 1.9] {
        let c = curve(p(v));
        assert!(
            c.windows(2).all(|w| w[1] < w[0]),
            "p={v} not strictly decreasing"
        );
    }
    let increasing = [
        p(2.5),
        p(4.0),
        p(10.0),
        AlphaParameter::INFINITY,
        p(-2.0),
        p(-10.0),
    ];
    for a in increasing {
        let c = curve(a);
        assert!(
            c.windows(2).all(|w| w[1] > w[0]),
            "p={a} not strictly increasing"
        );
    }
    format!(
        "c_2 = 1/2; 9 exponents strictly monotone on 500 points; {}",
        within(start, Duration::from_secs(1))
    )
}

fn c4_simplex() -> String {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut worst2, mut worst1): (f64, f64) = (0.0, 0.0);
    for n in [3usize, 4] {
        let want = 0.25 * (n as f64 - 1.0) * (n as f64 - 2.0);
        for _ in 0..20 {
            let rho = DensityVector::new(random_spectrum(&mut rng, n)).unwrap();
            let chart = SimplexChart::from_density(&rho);
            let v2 = simplex_scal_fd(AlphaParameter::finite(2.0).unwrap(), &chart, 1e-4).unwrap();
            let v1 = simplex_scal_fd(AlphaParameter::finite(1.0).unwrap(), &chart, 1e-4).unwrap();
            worst2 = worst2.max((v2 - want).abs());
            worst1 = worst1.max(v1.abs());
        }
    }
    assert!(worst2 < 1e-4, "p=2 worst abs error {worst2:e}");
    assert!(worst1 < 1e-6, "p=1 worst abs value {worst1:e}");
    let cli: serde_json::Value = serde_json::from_str(&run_ok(&[
        "simplex",
        "--p",
        "2",
        "--n",
        "3",
        "--rho",
        "0.2,0.3,0.5",
    ]))
    .unwrap();
    assert!((cli["value"].as_f64().unwrap() - 0.5).abs() < 1e-4);
    format!(
        "p=2 err {worst2:.1e}, p=1 |Scal| {worst1:.1e}; {}",
        within(start, Duration::from_secs(30))
    )
}

fn c5_matrix() -> String {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut worst2, mut worst1): (f64, f64) = (0.0, 0.0);
    for _ in 0..10 {
        let r = loop {
            let v: [f64; 3] = std::array::from_fn(|_| rng.random_range(-0.9..0.9));
            if v.iter().map(|x| x * x).sum::<f64>().sqrt() < 0.9 {
                break v;
            }
        };
        let point = BlochPoint::new(r).unwrap();
        let v2 = matrix_scal_fd(AlphaParameter::finite(2.0).unwrap(), &point, 1e-3).unwrap();
        let v1 = matrix_scal_fd(AlphaParameter::finite(1.0).unwrap(), &point, 1e-3).unwrap();
        worst2 = worst2.max((v2 - 1.5).abs());
        worst1 = worst1.max(v1.abs());
    }
    assert!(worst2 < 5e-3, "p=2 worst abs error {worst2:e}");
    assert!(worst1 < 1e-6, "p=1 worst abs value {worst1:e}");
    format!(
        "p=2 err {worst2:.1e}, p=1 |Scal| {worst1:.1e}; {}",
        within(start, Duration::from_secs(30))
    )
}

fn c6_andai() -> String {
    let start = Instant::now();
    let families = [
        MetricFamily::Sld,
        MetricFamily::Bkm,
        MetricFamily::Wy,
        MetricFamily::wyd(WydParam::Finite(1.5)).unwrap(),
    ];
    let mut worst: f64 = 0.0;
    for fam in families {
        for k in 1..=9 {
            for a in [0.1 * k as f64, -0.1 * k as f64] {
                let l = (1.0 + a) / 2.0;
                let h = scal_normalized(&fam, &Spectrum::new(vec![l, 1.0 - l]).unwrap())
                    .unwrap()
                    .value;
                worst = worst.max((andai_r(&fam, a).unwrap() - h).abs());
            }
        }
    }
    assert!(worst <= 1e-8, "worst abs difference {worst:e}");
    format!(
        "72 points, worst |diff| {worst:.1e}; {}",
        within(start, Duration::from_secs(5))
    )
}

fn parse_csv(text: &str) -> Vec<(f64, f64)> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("a,r"));
    lines
        .map(|l| {
            let (a, r) = l.split_once(',').unwrap();
            (a.parse().unwrap(), r.parse().unwrap())
        })
        .collect()
}

fn c7_figures() -> String {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    run_ok(&["figures", "--out-dir", dir.path().to_str().unwrap()]);
    let mut notes = Vec::new();
    for name in ["figure1.csv", "figure2.csv"] {
        let fresh = std::fs::read_to_string(dir.path().join(name)).unwrap();
        let shipped = std::fs::read_to_string(repo_root().join("data").join(name)).unwrap();
        assert_eq!(fresh, shipped, "{name} differs from the shipped data");
        let rows = parse_csv(&fresh);
        assert_eq!(rows.len(), 199);
        let shape = profile_shape(&rows);
        assert!(
            shape.max_second_difference <= 1e-6,
            "{name}: second difference {}",
            shape.max_second_difference
        );
        assert_eq!(shape.argmax, 0.0, "{name}: argmax");
        assert!(
            shape.max_asymmetry <= 1e-9,
            "{name}: asymmetry {:e}",
            shape.max_asymmetry
        );
        notes.push(format!("{name} max d2 {:.1e}", shape.max_second_difference));
    }
    format!(
        "{}; {}",
        notes.join(", "),
        within(start, Duration::from_secs(5))
    )
}

fn c8_schur() -> String {
    let start = Instant::now();
    let ent = classify(&entropy, 3, 1000, 8, 1e-9).unwrap();
    assert_eq!(ent.classification, Classification::Increasing);
    assert!(ent.strictness);
    let neg = classify(
        &|x: &DensityVector| entropy(x).map(|v| -v),
        3,
        1000,
        8,
        1e-9,
    )
    .unwrap();
    assert_eq!(neg.classification, Classification::Decreasing);
    assert!(neg.strictness);

    let sld = Target::Spectrum(MetricFamily::Sld)
        .classify(3, 1000, 8)
        .unwrap();
    assert_eq!(sld.classification, Classification::Neither);
    let reference = sld
        .counterexamples
        .iter()
        .find(|r| r.source == PairSource::Probe && r.index == 0)
        .expect("reference pair among counterexamples");
    assert_eq!(reference.more_mixed, vec![1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0]);
    assert_ne!(reference.contribution, Contribution::Flat);
    sld.check_consistency().unwrap();

    let bkm = Target::Spectrum(MetricFamily::Bkm);
    let probes = radial_grid_2x2(46);
    let grid =
        classify_with_probes(&|x: &DensityVector| bkm.evaluate(x), 2, 0, 0, 1e-9, &probes).unwrap();
    assert!(grid.samples_tested >= 1000);
    assert_eq!(grid.down_count, 0, "BKM 2x2 Schur-increasing violations");

    let args = [
        "schur",
        "--target",
        "spectrum:sld",
        "--n",
        "3",
        "--samples",
        "300",
        "--seed",
        "42",
    ];
    let (a, b) = (run_ok(&args), run_ok(&args));
    assert_eq!(a, b, "schur output not reproducible");
    format!(
        "SLD reference pair delta {:+.6} ({:?}); BKM grid {} pairs, 0 violations; {}",
        reference.delta,
        reference.contribution,
        grid.samples_tested,
        within(start, Duration::from_secs(60))
    )
}

fn c9_report() -> String {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    run_ok(&["report", "--out", path.to_str().unwrap()]);
    let report: ConjectureReport =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    report.check_consistency().unwrap();
    let hits = report
        .simplex
        .iter()
        .filter(|e| e.matches_conjecture)
        .count();
    let radial = report
        .matrix_radial
        .iter()
        .filter(|e| e.matches_conjecture)
        .count();
    format!(
        "consistent; simplex {hits}/6 and radial {radial}/4 as conjectured; {:.2}s",
        start.elapsed().as_secs_f64()
    )
}

type Criterion = (&'static str, fn() -> String);

fn main() {
    let criteria: [Criterion; 9] = [
        ("SLD rational values", c1_sld_values),
        ("WY constancy", c2_wy_constant),
        ("plane curvature monotonicity", c3_plane),
        ("simplex FD oracle", c4_simplex),
        ("matrix FD oracle", c5_matrix),
        ("Andai/h-sum agreement", c6_andai),
        ("figure regeneration", c7_figures),
        ("Schur-lab calibration", c8_schur),
        ("conjecture-evidence report", c9_report),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match panic::catch_unwind(AssertUnwindSafe(check)) {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail}", i + 1),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {} FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
