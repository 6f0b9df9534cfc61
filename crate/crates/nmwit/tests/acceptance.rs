//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Run with `cargo test -p nmwit --test acceptance`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::process::{Command, Stdio};
use std::time::Instant;

use nalgebra::{DMatrix, SymmetricEigen};
use nmwit_core::entanglement::{werner, werner_threshold, GridAxis, MapFamilyPoint, PhaseGrid, PhaseRow};
use nmwit_core::lindblad::{CoefficientModel, LindbladGenerator, SmallTimeMap};
use nmwit_core::operator::{overlap, Operator, C64};
use nmwit_core::random;
use nmwit_core::witness::{build_witness, evaluate, proposition1_suite, WitnessOperator};
use nmwit_core::{choi_of, optimal_p, Error};
use rand::Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;

fn check(cond: bool, detail: String) -> Outcome {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Eigenvalues from nalgebra via the real symmetric embedding of `H = A + iB`.
fn oracle_eigenvalues(h: &Operator) -> Vec<f64> {
    let n = h.dim();
    let mut big = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = h[(i, j)];
            big[(i, j)] = z.re;
            big[(i + n, j + n)] = z.re;
            big[(i, j + n)] = -z.im;
            big[(i + n, j)] = z.im;
        }
    }
    let mut evs: Vec<f64> = SymmetricEigen::new(big).eigenvalues.iter().copied().collect();
    evs.sort_by(f64::total_cmp);
    evs.into_iter().step_by(2).collect()
}

/// Smallest depolarizing weight that makes the snapshot Choi state PSD.
fn bisection_threshold(map: &SmallTimeMap) -> f64 {
    let choi = choi_of(map).unwrap().matrix().clone();
    let psd = |p: f64| {
        let mixed = Operator::maximally_mixed(choi.dim()).scale(p) + choi.scale(1.0 - p);
        oracle_eigenvalues(&mixed)[0] >= -1e-13
    };
    let (mut lo, mut hi) = (0.0, 1.0);
    if psd(lo) {
        return 0.0;
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if psd(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

fn dephasing(eps: f64) -> SmallTimeMap {
    SmallTimeMap::new(LindbladGenerator::dephasing(CoefficientModel::Constant(-1.0)), 1.0, eps).unwrap()
}

fn eternal(t: f64) -> SmallTimeMap {
    SmallTimeMap::new(LindbladGenerator::eternal(), t, 0.01).unwrap()
}

fn pauli(g: [f64; 3], t: f64, eps: f64) -> SmallTimeMap {
    let c = CoefficientModel::Constant;
    SmallTimeMap::new(LindbladGenerator::pauli(c(g[0]), c(g[1]), c(g[2])), t, eps).unwrap()
}

fn dephasing_spectrum() -> Outcome {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let expected = [C64::new(-s, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(s, 0.0)];
    let mut worst_value: f64 = 0.0;
    let mut worst_overlap: f64 = 1.0;
    for eps in [0.005, 0.01, 0.05] {
        let choi = choi_of(&dephasing(eps)).map_err(|e| e.to_string())?;
        worst_value = worst_value.max((choi.min_eigenvalue() + eps).abs());
        worst_overlap = worst_overlap.min(overlap(choi.spectrum().min_vector(), &expected));
    }
    check(
        worst_value < 1e-10 && worst_overlap > 1.0 - 1e-10,
        format!("max |lambda_min + eps| = {worst_value:.2e}, min overlap = {worst_overlap:.15}"),
    )
}

fn dephasing_threshold() -> Outcome {
    let mut closed: f64 = 0.0;
    let mut oracle: f64 = 0.0;
    for eps in [0.005, 0.01, 0.05] {
        let map = dephasing(eps);
        let p = optimal_p(&map).map_err(|e| e.to_string())?;
        closed = closed.max((p - 4.0 * eps / (1.0 + 4.0 * eps)).abs());
        oracle = oracle.max((p - bisection_threshold(&map)).abs());
    }
    check(
        closed < 1e-12 && oracle < 1e-8,
        format!("closed-form deviation {closed:.2e}, bisection deviation {oracle:.2e}"),
    )
}

fn eternal_thresholds() -> Outcome {
    let (mut dw, mut dv, mut all_detected) = (0.0f64, 0.0f64, true);
    for t in [0.25, 0.5, 1.0, 2.0, 4.0] {
        let map = eternal(t);
        let x = 4.0 * 0.01 * t.tanh();
        let w = build_witness(&map).map_err(|e| e.to_string())?;
        let value = evaluate(&w, &choi_of(&map).unwrap()).unwrap();
        let nu = 1.0 / (1.0 + x);
        dw = dw.max((w.omega - x / (1.0 + x)).abs()).max((w.nu - nu).abs());
        dv = dv.max((value - nu * (-0.01 * t.tanh())).abs());
        all_detected &= value < -nmwit_core::DEFAULT_TOLERANCE;
    }
    check(
        dw < 1e-12 && dv < 1e-10 && all_detected,
        format!("omega/nu deviation {dw:.2e}, witness deviation {dv:.2e}, detected at all t: {all_detected}"),
    )
}

fn witness_soundness() -> Outcome {
    let mut scenario: Vec<WitnessOperator> = [0.005, 0.01, 0.05].map(|e| build_witness(&dephasing(e)).unwrap()).to_vec();
    scenario.extend([0.25, 0.5, 1.0, 2.0, 4.0].map(|t| build_witness(&eternal(t)).unwrap()));
    let mut rng = random::rng_from_seed(2024);
    let mut lowest = f64::INFINITY;
    for _ in 0..200 {
        let g = [rng.gen_range(0.0..2.0), rng.gen_range(0.0..2.0), rng.gen_range(0.0..2.0)];
        let choi = choi_of(&pauli(g, rng.gen_range(0.0..5.0), rng.gen_range(0.001..0.05))).unwrap();
        for w in &scenario {
            lowest = lowest.min(evaluate(w, &choi).unwrap());
        }
    }
    let (mut failures, mut negative) = (0, 0);
    for _ in 0..200 {
        let mut g = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
        let k = rng.gen_range(0..3);
        g[k] = -f64::abs(g[k]).max(1e-3);
        let map = pauli(g, rng.gen_range(0.0..5.0), rng.gen_range(0.001..0.05));
        let choi = choi_of(&map).unwrap();
        if choi.min_eigenvalue() < -1e-9 {
            negative += 1;
            let value = evaluate(&build_witness(&map).unwrap(), &choi).unwrap();
            if value >= 0.0 {
                failures += 1;
            }
        }
    }
    check(
        lowest >= -1e-10 && failures == 0,
        format!("min scenario-witness value on Markovian snapshots {lowest:.3e}; {failures} sign failures among {negative} non-Markovian snapshots"),
    )
}

fn adjoint_identity() -> Outcome {
    let residual = proposition1_suite(100, 7).map_err(|e| e.to_string())?;
    check(residual < 1e-10, format!("max residual {residual:.2e} over 100 draws"))
}

fn werner_detection() -> Outcome {
    let pt = MapFamilyPoint::new(0.5, 0.5);
    let mut worst: f64 = 0.0;
    for p in [0.0, 0.2, 1.0 / 3.0, 0.5, 0.9, 1.0] {
        let image = pt.extend(&werner(p).unwrap().matrix).unwrap();
        worst = worst.max((oracle_eigenvalues(&image)[0] - (1.0 - 3.0 * p) / 4.0).abs());
        let d = nmwit_core::entanglement::detect_entanglement(&werner(p).unwrap().matrix, &pt, 1e-9)
            .map_err(|e| e.to_string())?;
        worst = worst.max((d.min_eigenvalue - (1.0 - 3.0 * p) / 4.0).abs());
    }
    let threshold = werner_threshold(&pt, 1e-9, 1e-7).map_err(|e| e.to_string())?;
    let ok = threshold.is_some_and(|p| (p - 1.0 / 3.0).abs() < 1e-6);
    check(worst < 1e-12 && ok, format!("max eigenvalue deviation {worst:.2e}, threshold {threshold:?}"))
}

fn row_at(rows: &[PhaseRow], g1: f64, g2: f64) -> Option<PhaseRow> {
    rows.iter().copied().find(|r| (r.gamma1 - g1).abs() < 1e-12 && (r.gamma2 - g2).abs() < 1e-12)
}

fn phase_diagram(record: &Path) -> Outcome {
    let grid = PhaseGrid {
        gamma1: GridAxis::new(0.0, 0.6, 61),
        gamma2: GridAxis::new(0.0, 1.0, 101),
        samples: 10_000,
        seed: 0,
        tolerance: 1e-9,
    };
    let inner = grid.gamma2.steps;
    let results: Vec<Result<PhaseRow, Error>> =
        (0..grid.len()).into_par_iter().map(|k| grid.point(k / inner, k % inner)).collect();
    let disagreements = results
        .iter()
        .filter(|r| matches!(r, Err(Error::PositivityDisagreement { .. })))
        .count();
    let rows: Vec<PhaseRow> = match results.into_iter().collect() {
        Ok(rows) => rows,
        Err(e) => return Err(format!("{disagreements} disagreements; first error: {e}")),
    };
    let bounds = nmwit_core::entanglement::region_boundaries(&rows);
    let mut text = String::from("gamma1,max_positive_gamma2,min_ncp_gamma2\n");
    for b in &bounds {
        let show = |x: Option<f64>| x.map(|v| format!("{v:.2}")).unwrap_or_default();
        writeln!(text, "{:.2},{},{}", b.gamma1, show(b.max_positive_gamma2), show(b.min_ncp_gamma2)).unwrap();
    }
    fs::write(record, text).map_err(|e| e.to_string())?;
    let half = row_at(&rows, 0.5, 0.9).ok_or("grid lacks (0.5, 0.9)")?;
    let low = row_at(&rows, 0.2, 0.2).ok_or("grid lacks (0.2, 0.2)")?;
    let at_half = bounds.iter().find(|b| (b.gamma1 - 0.5).abs() < 1e-12).unwrap();
    check(
        !half.positive && low.cp,
        format!(
            "{} points, 0 disagreements; (0.5, 0.9) positive = {}, (0.2, 0.2) cp = {}; at gamma1 = 0.5 positive up to gamma2 = {:?}, non-CP from {:?}; boundaries in {}",
            rows.len(),
            half.positive,
            low.cp,
            at_half.max_positive_gamma2,
            at_half.min_ncp_gamma2,
            record.display()
        ),
    )
}

/// Runs every subcommand into `dir` and returns the produced files.
fn cli_suite(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let runs: [(&str, &[&str]); 7] = [
        ("divisibility.csv", &["divisibility", "--scenario", "dephasing", "--t-start", "0", "--t-stop", "4", "--t-steps", "9"]),
        ("eternal.csv", &["divisibility", "--scenario", "eternal", "--t-start", "0", "--t-stop", "4", "--t-steps", "9"]),
        ("witness.json", &["witness", "--scenario", "eternal", "--t-list", "0.25,0.5,1,2,4", "--format", "json"]),
        ("spa.csv", &["spa", "--scenario", "eternal", "--t-list", "0.25,0.5,1,2,4"]),
        ("entangle.csv", &["entangle", "--gamma1", "0.25", "--gamma2", "0.6", "--p", "0.9"]),
        ("scan.csv", &["entangle", "--scan"]),
        ("prop1.csv", &["prop1", "--draws", "100"]),
    ];
    let mut files = Vec::new();
    for (name, args) in runs {
        let out = dir.join(name);
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_nmwit"));
        cmd.args(args).args(["--seed", "11", "--output"]).arg(&out);
        if name == "witness.json" {
            cmd.arg("--export-witness").arg(dir.join("witness-export.json"));
        }
        let status = cmd.stderr(Stdio::null()).status().expect("nmwit runs");
        assert!(status.success(), "{name}: {status}");
        files.push((name.to_string(), fs::read(&out).unwrap()));
    }
    files.push(("witness-export.json".into(), fs::read(dir.join("witness-export.json")).unwrap()));
    files
}

fn determinism() -> Outcome {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let first = cli_suite(a.path());
    let second = cli_suite(b.path());
    let differing: Vec<&str> = first
        .iter()
        .zip(&second)
        .filter(|(x, y)| x.1 != y.1)
        .map(|(x, _)| x.0.as_str())
        .collect();
    let bytes: usize = first.iter().map(|f| f.1.len()).sum();
    check(
        differing.is_empty(),
        format!("{} files, {bytes} bytes per run, differing: {differing:?}", first.len()),
    )
}

fn main() {
    let record = Path::new(env!("CARGO_TARGET_TMPDIR")).join("phase_boundaries.csv");
    let criteria: [(&str, Box<dyn Fn() -> Outcome>); 8] = [
        ("dephasing Choi spectrum", Box::new(dephasing_spectrum)),
        ("dephasing SPA threshold", Box::new(dephasing_threshold)),
        ("eternal witness thresholds", Box::new(eternal_thresholds)),
        ("witness soundness", Box::new(witness_soundness)),
        ("adjoint identity", Box::new(adjoint_identity)),
        ("Werner detection", Box::new(werner_detection)),
        ("phase diagram", Box::new(move || phase_diagram(&record))),
        ("CLI determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {} ({name}) [{secs:.2}s]: {detail}", n + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} ({name}) [{secs:.2}s]: {detail}", n + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

