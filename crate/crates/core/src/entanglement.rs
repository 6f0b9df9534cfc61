//! Entanglement detection with the qubit map family
//!
//! ```text
//! Lambda(rho) = rho + g1 (X rho X - rho) + g1 (Y rho Y - rho) + g2 (Z rho Z - rho)
//! ```
//!
//! The family is unital and Pauli-diagonal. On Bloch vectors it acts as
//! `diag(1 - 2 g1 - 2 g2, 1 - 2 g1 - 2 g2, 1 - 4 g1)`, and its Choi state is
//! diagonal in the Bell basis with weights `{1 - 2 g1 - g2, g1, g1, g2}`.
//! A positive but not completely positive point certifies entanglement of
//! any two-qubit state whose image under `id (x) Lambda` has a negative
//! eigenvalue.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::operator::{max_entangled, pauli, Operator, C64};
use crate::random;
use crate::Tolerances;

/// Pure-state samples used when a positivity gate is needed implicitly.
pub const DEFAULT_POSITIVITY_SAMPLES: usize = 10_000;

/// Werner-threshold bisection resolution in `p`.
pub const THRESHOLD_RESOLUTION: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapFamilyPoint {
    pub gamma1: f64,
    pub gamma2: f64,
}

impl MapFamilyPoint {
    pub fn new(gamma1: f64, gamma2: f64) -> Self {
        Self { gamma1, gamma2 }
    }

    /// Applies the map to a 2x2 matrix given as `[[a, b], [c, d]]`.
    fn apply_entries(&self, m: [C64; 4]) -> [C64; 4] {
        let [a, b, c, d] = m;
        let (g1, g2) = (self.gamma1, self.gamma2);
        let keep = 1.0 - 2.0 * g1 - g2;
        // X m X = [[d, c], [b, a]], Y m Y = [[d, -c], [-b, a]], Z m Z = [[a, -b], [-c, d]];
        // the X and Y off-diagonal contributions cancel.
        [
            a * keep + d * (2.0 * g1) + a * g2,
            b * (keep - g2),
            c * (keep - g2),
            d * keep + a * (2.0 * g1) + d * g2,
        ]
    }

    pub fn apply(&self, rho: &Operator) -> Result<Operator> {
        if rho.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: rho.dim(),
            });
        }
        let out = self.apply_entries([rho[(0, 0)], rho[(0, 1)], rho[(1, 0)], rho[(1, 1)]]);
        Ok(Operator::from_flat(2, out.to_vec()))
    }

    /// Scaling of the Bloch components `(x, y, z)`.
    pub fn bloch_factors(&self) -> [f64; 3] {
        let transverse = 1.0 - 2.0 * self.gamma1 - 2.0 * self.gamma2;
        [transverse, transverse, 1.0 - 4.0 * self.gamma1]
    }

    /// A unital Pauli-diagonal qubit map is positive iff it keeps the Bloch
    /// ball inside itself.
    pub fn bloch_positive(&self, tol: f64) -> bool {
        self.bloch_factors().iter().all(|f| f.abs() <= 1.0 + tol)
    }

    /// Smallest output eigenvalue over `n_samples` uniformly drawn pure states.
    pub fn sampled_min_eigenvalue(&self, n_samples: usize, seed: u64) -> f64 {
        let mut rng = random::rng_from_seed(seed);
        let mut worst = f64::INFINITY;
        for _ in 0..n_samples {
            let psi = random::qubit_pure_state(&mut rng);
            let rho = [
                psi[0] * psi[0].conj(),
                psi[0] * psi[1].conj(),
                psi[1] * psi[0].conj(),
                psi[1] * psi[1].conj(),
            ];
            let out = self.apply_entries(rho);
            let m = Operator::from_flat(2, out.to_vec());
            worst = worst.min(m.min_eigenvalue_2x2());
        }
        worst
    }

    /// Bell-basis Choi weights `(1 - 2 g1 - g2, g1, g1, g2)`.
    pub fn choi_weights(&self) -> [f64; 4] {
        [
            1.0 - 2.0 * self.gamma1 - self.gamma2,
            self.gamma1,
            self.gamma1,
            self.gamma2,
        ]
    }

    /// `(id (x) Lambda)(|phi+><phi+|)`.
    pub fn choi(&self) -> Operator {
        Operator::projector(&max_entangled(2))
            .extend_second(2, |blk| self.apply(blk))
            .expect("4x4 input always splits into 2x2 blocks")
    }

    /// `(id (x) Lambda)(state)` for a two-qubit operator.
    pub fn extend(&self, state: &Operator) -> Result<Operator> {
        state.extend_second(2, |blk| self.apply(blk))
    }
}

/// Positivity by both the Bloch criterion and pure-state sampling; the two
/// must agree.
pub fn is_positive(pt: &MapFamilyPoint, n_samples: usize, seed: u64) -> Result<bool> {
    if n_samples == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "n_samples",
            value: 0.0,
        });
    }
    let tol = Tolerances::default().psd;
    let closed = pt.bloch_positive(tol);
    let sampled = pt.sampled_min_eigenvalue(n_samples, seed) >= -tol;
    if closed != sampled {
        return Err(Error::PositivityDisagreement {
            gamma1: pt.gamma1,
            gamma2: pt.gamma2,
        });
    }
    Ok(closed)
}

/// Complete positivity from the closed-form Choi weights, cross-checked
/// against numerical diagonalization.
pub fn is_cp(pt: &MapFamilyPoint) -> Result<bool> {
    let mut closed = pt.choi_weights();
    closed.sort_by(f64::total_cmp);
    let tol = Tolerances::default();
    let numeric = pt.choi().eig_hermitian(tol.herm)?;
    let deviation = closed
        .iter()
        .zip(&numeric.eigenvalues)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if deviation > 1e-12 {
        return Err(Error::SpectrumMismatch { deviation });
    }
    Ok(closed[0] >= -tol.psd)
}

#[derive(Debug, Clone, PartialEq)]
pub struct WernerState {
    pub p: f64,
    pub matrix: Operator,
}

/// `p |psi-><psi-| + (1 - p) I/4`.
pub fn werner(p: f64) -> Result<WernerState> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ParameterOutOfRange { name: "p", value: p });
    }
    let matrix = Operator::projector(&pauli::psi_minus()).scale(p)
        + Operator::maximally_mixed(4).scale(1.0 - p);
    Ok(WernerState { p, matrix })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Detection {
    pub detected: bool,
    pub min_eigenvalue: f64,
}

/// Applies `id (x) Lambda` and reports its smallest eigenvalue. Fails for
/// points that are not positive, since those certify nothing.
pub fn detect_entanglement(state: &Operator, pt: &MapFamilyPoint, tolerance: f64) -> Result<Detection> {
    if state.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: state.dim(),
        });
    }
    if !state.is_density(&Tolerances::default()) {
        return Err(Error::InvalidState("expected a two-qubit density matrix"));
    }
    if !is_positive(pt, DEFAULT_POSITIVITY_SAMPLES, 0)? {
        return Err(Error::MapNotPositive {
            gamma1: pt.gamma1,
            gamma2: pt.gamma2,
        });
    }
    detect_unchecked(state, pt, tolerance)
}

fn detect_unchecked(state: &Operator, pt: &MapFamilyPoint, tolerance: f64) -> Result<Detection> {
    let image = pt.extend(state)?;
    let min_eigenvalue = image.eig_hermitian(Tolerances::default().herm)?.min();
    Ok(Detection {
        detected: min_eigenvalue < -tolerance,
        min_eigenvalue,
    })
}

/// Smallest Werner weight `p` detected by a positive point, by bisection to
/// `resolution`; `None` when even `p = 1` is not detected.
pub fn werner_threshold(pt: &MapFamilyPoint, tolerance: f64, resolution: f64) -> Result<Option<f64>> {
    let detected = |p: f64| -> Result<bool> {
        Ok(detect_unchecked(&werner(p)?.matrix, pt, tolerance)?.detected)
    };
    if !detected(1.0)? {
        return Ok(None);
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    if detected(lo)? {
        return Ok(Some(0.0));
    }
    while hi - lo > resolution {
        let mid = 0.5 * (lo + hi);
        if detected(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(hi))
}

/// Inclusive `steps`-point range; a single step yields `start`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridAxis {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl GridAxis {
    pub fn new(start: f64, stop: f64, steps: usize) -> Self {
        Self { start, stop, steps }
    }

    pub fn value(&self, i: usize) -> f64 {
        if self.steps <= 1 {
            return self.start;
        }
        self.start + (self.stop - self.start) * i as f64 / (self.steps - 1) as f64
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.steps).map(|i| self.value(i)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseGrid {
    pub gamma1: GridAxis,
    pub gamma2: GridAxis,
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseRow {
    pub gamma1: f64,
    pub gamma2: f64,
    pub positive: bool,
    pub cp: bool,
    /// Smallest detected Werner weight, only for positive non-CP points.
    pub werner_threshold: Option<f64>,
}

impl PhaseGrid {
    pub fn len(&self) -> usize {
        self.gamma1.steps * self.gamma2.steps
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Evaluates grid point `(i, j)`; the sampler seed depends only on the
    /// base seed and the indices, so points can run in any order.
    pub fn point(&self, i: usize, j: usize) -> Result<PhaseRow> {
        let pt = MapFamilyPoint::new(self.gamma1.value(i), self.gamma2.value(j));
        let seed = random::derive_seed(self.seed, &[i as u64, j as u64]);
        let positive = is_positive(&pt, self.samples, seed)?;
        let cp = is_cp(&pt)?;
        let werner_threshold = if positive && !cp {
            werner_threshold(&pt, self.tolerance, THRESHOLD_RESOLUTION)?
        } else {
            None
        };
        Ok(PhaseRow {
            gamma1: pt.gamma1,
            gamma2: pt.gamma2,
            positive,
            cp,
            werner_threshold,
        })
    }
}

/// Row-major (gamma1 outer) scan of the positivity / CP phase diagram.
pub fn phase_scan(grid: &PhaseGrid) -> Result<Vec<PhaseRow>> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let mut rows = Vec::with_capacity(grid.len());
    for i in 0..grid.gamma1.steps {
        for j in 0..grid.gamma2.steps {
            rows.push(grid.point(i, j)?);
        }
    }
    Ok(rows)
}

/// Per-`gamma1` summary of a phase scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionBoundary {
    pub gamma1: f64,
    /// Largest `gamma2` on the grid where the map is positive.
    pub max_positive_gamma2: Option<f64>,
    /// Smallest `gamma2` on the grid where the map is not CP.
    pub min_ncp_gamma2: Option<f64>,
}

pub fn region_boundaries(rows: &[PhaseRow]) -> Vec<RegionBoundary> {
    let mut out: Vec<RegionBoundary> = Vec::new();
    for row in rows {
        let idx = match out.iter().position(|b| b.gamma1 == row.gamma1) {
            Some(idx) => idx,
            None => {
                out.push(RegionBoundary {
                    gamma1: row.gamma1,
                    max_positive_gamma2: None,
                    min_ncp_gamma2: None,
                });
                out.len() - 1
            }
        };
        let entry = &mut out[idx];
        if row.positive {
            entry.max_positive_gamma2 = Some(entry.max_positive_gamma2.map_or(row.gamma2, |g| g.max(row.gamma2)));
        }
        if !row.cp {
            entry.min_ncp_gamma2 = Some(entry.min_ncp_gamma2.map_or(row.gamma2, |g| g.min(row.gamma2)));
        }
    }
    out
}
