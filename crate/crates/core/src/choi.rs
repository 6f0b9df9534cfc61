//! Snapshot Choi states `(id (x) N)(|phi+><phi+|)` and instantaneous
//! CP-divisibility.
//!
//! A snapshot is Markovian exactly when its Choi state is positive
//! semidefinite, equivalently when its trace norm equals one.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lindblad::{LindbladGenerator, SmallTimeMap};
use crate::operator::{max_entangled, Operator, Spectrum, C64};
use crate::Tolerances;

/// Instant `t` and step `eps` a Choi state was built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Snapshot {
    pub t: f64,
    pub epsilon: f64,
}

#[derive(Debug, Clone)]
pub struct ChoiState {
    matrix: Operator,
    source: Snapshot,
    spectrum: Spectrum,
}

impl ChoiState {
    /// Validates Hermiticity and unit trace, then caches the spectrum.
    pub fn new(matrix: Operator, source: Snapshot) -> Result<Self> {
        let tol = Tolerances::default();
        let spectrum = matrix.eig_hermitian(tol.herm)?;
        if (matrix.trace() - C64::new(1.0, 0.0)).norm() >= tol.trace {
            return Err(Error::InvalidState("Choi state must have unit trace"));
        }
        Ok(Self {
            matrix,
            source,
            spectrum,
        })
    }

    pub fn matrix(&self) -> &Operator {
        &self.matrix
    }

    pub fn source(&self) -> Snapshot {
        self.source
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.spectrum.min()
    }

    pub fn trace_norm(&self) -> f64 {
        self.spectrum.eigenvalues.iter().map(|x| x.abs()).sum()
    }

    /// `weight * self + (1 - weight) * other`.
    pub fn mix(&self, other: &ChoiState, weight: f64) -> Result<ChoiState> {
        if !(0.0..=1.0).contains(&weight) {
            return Err(Error::ParameterOutOfRange {
                name: "weight",
                value: weight,
            });
        }
        if self.matrix.dim() != other.matrix.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.matrix.dim(),
                found: other.matrix.dim(),
            });
        }
        let matrix = self.matrix.scale(weight) + other.matrix.scale(1.0 - weight);
        ChoiState::new(matrix, self.source)
    }
}

/// Snapshot divisibility verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivisibilityVerdict {
    pub minimum_eigenvalue: f64,
    /// `||C||_1 - 1`.
    pub trace_norm_excess: f64,
    pub markovian: bool,
    pub tolerance: f64,
}

/// Choi state of a snapshot map, with `|phi+> = sum_i |ii>/sqrt d`.
pub fn choi_of(map: &SmallTimeMap) -> Result<ChoiState> {
    choi_with_reference(map, &max_entangled(map.dim()))
}

/// Choi state against an arbitrary (unit-norm) reference vector. Any local
/// unitary rotation of `|phi+>` produces an isospectral state.
pub fn choi_with_reference(map: &SmallTimeMap, reference: &[C64]) -> Result<ChoiState> {
    let matrix = map.extend_and_apply(&Operator::projector(reference))?;
    ChoiState::new(
        matrix,
        Snapshot {
            t: map.t(),
            epsilon: map.epsilon(),
        },
    )
}

pub fn classify(choi: &ChoiState, tolerance: f64) -> DivisibilityVerdict {
    let minimum_eigenvalue = choi.min_eigenvalue();
    DivisibilityVerdict {
        minimum_eigenvalue,
        trace_norm_excess: choi.trace_norm() - 1.0,
        markovian: minimum_eigenvalue >= -tolerance,
        tolerance,
    }
}

/// Classifies every instant of an ascending time grid.
pub fn scan(
    generator: &LindbladGenerator,
    t_grid: &[f64],
    epsilon: f64,
    tolerance: f64,
) -> Result<Vec<(f64, DivisibilityVerdict)>> {
    if t_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if t_grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::UnsortedGrid);
    }
    t_grid
        .iter()
        .map(|&t| {
            let map = SmallTimeMap::new(generator.clone(), t, epsilon)?;
            Ok((t, classify(&choi_of(&map)?, tolerance)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lindblad::CoefficientModel;
    use crate::operator::{overlap, pauli::*};

    fn dephasing(rate: f64, eps: f64) -> SmallTimeMap {
        let gen = LindbladGenerator::dephasing(CoefficientModel::Constant(rate));
        SmallTimeMap::new(gen, 0.0, eps).unwrap()
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < tol)
    }

    #[test]
    fn identity_channel_choi() {
        let choi = choi_of(&dephasing(0.0, 0.01)).unwrap();
        assert!(choi.matrix().max_abs_diff(&Operator::projector(&phi_plus())) < 1e-15);
        assert!(close(&choi.spectrum().eigenvalues, &[0.0, 0.0, 0.0, 1.0], 1e-14));
        let verdict = classify(&choi, 1e-9);
        assert!(verdict.markovian);
        assert!(verdict.trace_norm_excess.abs() < 1e-14);
    }

    #[test]
    fn negative_dephasing_choi() {
        let choi = choi_of(&dephasing(-1.0, 0.01)).unwrap();
        assert!(close(&choi.spectrum().eigenvalues, &[-0.01, 0.0, 0.0, 1.01], 1e-14));
        assert!(overlap(choi.spectrum().min_vector(), &phi_minus()) > 1.0 - 1e-12);
        let verdict = classify(&choi, 1e-9);
        assert!(!verdict.markovian);
        assert!((verdict.minimum_eigenvalue + 0.01).abs() < 1e-14);
        assert!((verdict.trace_norm_excess - 0.02).abs() < 1e-14);
    }

    #[test]
    fn positive_dephasing_is_markovian() {
        let verdict = classify(&choi_of(&dephasing(1.0, 0.01)).unwrap(), 1e-9);
        assert!(verdict.markovian);
        assert!(verdict.minimum_eigenvalue.abs() < 1e-14);
    }

    #[test]
    fn eternal_choi_spectrum() {
        let eps = 0.01;
        let th = libm::tanh(1.0);
        let map = SmallTimeMap::new(LindbladGenerator::eternal(), 1.0, eps).unwrap();
        let choi = choi_of(&map).unwrap();
        let expected = [-eps * th, eps, eps, 1.0 - eps * (2.0 - th)];
        assert!(close(&choi.spectrum().eigenvalues, &expected, 1e-14));
        assert!((expected[0] + 0.007_615_941_559_557_649).abs() < 1e-15);
    }

    #[test]
    fn scan_eternal_and_constant() {
        let verdicts = scan(&LindbladGenerator::eternal(), &[0.5, 1.0, 2.0], 0.01, 1e-9).unwrap();
        assert!(verdicts.iter().all(|(_, v)| !v.markovian));

        let boundary = scan(&LindbladGenerator::eternal(), &[0.0], 0.01, 1e-9).unwrap();
        assert!(boundary[0].1.markovian);

        let one = || CoefficientModel::Constant(1.0);
        let gen = LindbladGenerator::pauli(one(), one(), one());
        let verdicts = scan(&gen, &[0.0, 1.0, 10.0], 0.01, 1e-9).unwrap();
        assert!(verdicts.iter().all(|(_, v)| v.markovian));
    }

    #[test]
    fn scan_rejects_bad_grids() {
        let gen = LindbladGenerator::eternal();
        assert_eq!(scan(&gen, &[], 0.01, 1e-9).unwrap_err(), Error::EmptyGrid);
        assert_eq!(scan(&gen, &[1.0, 0.5], 0.01, 1e-9).unwrap_err(), Error::UnsortedGrid);
    }

    #[test]
    fn local_unitary_reference_is_isospectral() {
        let map = SmallTimeMap::new(LindbladGenerator::eternal(), 0.8, 0.02).unwrap();
        let base = choi_of(&map).unwrap();
        for reference in [phi_minus(), psi_plus(), psi_minus()] {
            let rotated = choi_with_reference(&map, &reference).unwrap();
            assert!(close(
                &rotated.spectrum().eigenvalues,
                &base.spectrum().eigenvalues,
                1e-13
            ));
            assert_eq!(classify(&rotated, 1e-9).markovian, classify(&base, 1e-9).markovian);
        }
    }

    #[test]
    fn mixing_validates_weight() {
        let a = choi_of(&dephasing(1.0, 0.01)).unwrap();
        assert!(a.mix(&a, 1.5).is_err());
        let mixed = a.mix(&choi_of(&dephasing(0.5, 0.01)).unwrap(), 0.25).unwrap();
        assert!(classify(&mixed, 1e-9).markovian);
    }
}
