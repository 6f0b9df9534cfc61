//! Non-Markovianity witnesses built from the SPA state.
//!
//! For a snapshot map `N` with optimal decomposition `(omega, nu)`, let
//! `sigma~ = omega I/4 + nu (id (x) N)(sigma)` and let `|tau>` be the
//! eigenvector of its smallest eigenvalue `mu_min`. The witness is
//!
//! ```text
//! W = nu (id (x) N)(|tau><tau|)
//! ```
//!
//! For Hermitian jump operators `id (x) N` is self-adjoint under the trace
//! inner product (see [`proposition1_residual`]), so measuring `W` on the
//! input `sigma` equals measuring `nu |tau><tau|` on the channel output
//! `(id (x) N)(sigma)`:
//!
//! ```text
//! Tr[W sigma] = nu <tau| C |tau> = mu_min - omega/4
//! ```
//!
//! [`evaluate`] returns the output-side form, which is defined for any Choi
//! state `C`, is nonnegative whenever `C` is PSD, and on the source map's own
//! Choi state equals `nu * lambda_min(C)`.

use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;

use crate::choi::ChoiState;
use crate::error::{Error, Result};
use crate::lindblad::{CoefficientModel, LindbladGenerator, SmallTimeMap, Term};
use crate::operator::{max_entangled, norm, Operator, C64};
use crate::random;
use crate::spa::optimal_decomposition;
use crate::Tolerances;

/// Gap below which the minimum eigenvalue of the SPA state counts as degenerate.
pub const DEGENERACY_GAP: f64 = 1e-12;

/// Snapshot a witness was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct MapSource {
    pub generator: String,
    pub t: f64,
    pub epsilon: f64,
}

#[derive(Debug, Clone)]
pub struct WitnessOperator {
    pub matrix: Operator,
    pub nu: f64,
    pub omega: f64,
    /// Unit-norm minimizing eigenvector of the SPA state.
    pub tau: Vec<C64>,
    /// Smallest eigenvalue of the SPA state.
    pub mu_min: f64,
    pub source: MapSource,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessVerdict {
    MarkovianConsistent,
    NonMarkovianDetected,
}

/// Witness for `map` with the canonical input `sigma = |phi+><phi+|`.
pub fn build_witness(map: &SmallTimeMap) -> Result<WitnessOperator> {
    build_witness_with_state(map, &max_entangled(map.dim()))
}

/// Witness for `map` probed with an arbitrary pure input state `sigma`.
pub fn build_witness_with_state(map: &SmallTimeMap, sigma: &[C64]) -> Result<WitnessOperator> {
    let d = map.dim();
    if sigma.len() != d * d {
        return Err(Error::DimensionMismatch {
            expected: d * d,
            found: sigma.len(),
        });
    }
    let n = norm(sigma);
    if (n - 1.0).abs() > Tolerances::default().trace {
        return Err(Error::NotNormalized { norm: n });
    }
    let dec = optimal_decomposition(map)?;
    let output = map.extend_and_apply(&Operator::projector(sigma))?;
    let sigma_tilde =
        Operator::maximally_mixed(d * d).scale(dec.omega) + output.scale(dec.nu);
    let spectrum = sigma_tilde.eig_hermitian(Tolerances::default().herm)?;
    let (lowest, next) = (spectrum.eigenvalues[0], spectrum.eigenvalues[1]);
    if next - lowest < DEGENERACY_GAP {
        return Err(Error::DegenerateMinimum { lowest, next });
    }
    let tau = canonical_phase(spectrum.min_vector());
    let matrix = map.extend_and_apply(&Operator::projector(&tau))?.scale(dec.nu);
    Ok(WitnessOperator {
        matrix,
        nu: dec.nu,
        omega: dec.omega,
        tau,
        mu_min: lowest,
        source: MapSource {
            generator: String::from(map.generator().name()),
            t: map.t(),
            epsilon: map.epsilon(),
        },
    })
}

/// Rotates the global phase so the largest component is real and positive.
fn canonical_phase(v: &[C64]) -> Vec<C64> {
    let mut pivot = 0;
    for (i, z) in v.iter().enumerate() {
        if z.norm() > v[pivot].norm() + DEGENERACY_GAP {
            pivot = i;
        }
    }
    let phase = v[pivot].conj() / v[pivot].norm();
    v.iter().map(|z| z * phase).collect()
}

/// Witness expectation on a channel-output state: `nu <tau| C |tau>`.
pub fn evaluate(witness: &WitnessOperator, choi: &ChoiState) -> Result<f64> {
    let dim = choi.matrix().dim();
    if dim != witness.tau.len() {
        return Err(Error::DimensionMismatch {
            expected: witness.tau.len(),
            found: dim,
        });
    }
    Ok(witness.nu * choi.matrix().expectation(&witness.tau).re)
}

/// `Tr[W sigma]` for an input state `sigma` fed to the source map.
pub fn expectation_on_input(witness: &WitnessOperator, sigma: &Operator) -> Result<f64> {
    if sigma.dim() != witness.matrix.dim() {
        return Err(Error::DimensionMismatch {
            expected: witness.matrix.dim(),
            found: sigma.dim(),
        });
    }
    Ok(witness.matrix.trace_product(sigma).re)
}

pub fn classify_by_witness(
    witness: &WitnessOperator,
    choi: &ChoiState,
    tolerance: f64,
) -> Result<WitnessVerdict> {
    let value = evaluate(witness, choi)?;
    Ok(if value < -tolerance {
        WitnessVerdict::NonMarkovianDetected
    } else {
        WitnessVerdict::MarkovianConsistent
    })
}

/// `|Tr[|a><a| (id (x) N)(rho)] - Tr[(id (x) N)(|a><a|) rho]|` for the
/// single-jump map `N(X) = X + gamma (G X G^dagger - 1/2 {G^dagger G, X})`.
pub fn proposition1_residual(g: &Operator, alpha: &[C64], rho: &Operator, gamma: f64) -> Result<f64> {
    let tol = Tolerances::default();
    let residual = g.hermitian_residual();
    if residual >= tol.herm {
        return Err(Error::NonHermitianJump { residual });
    }
    let d = g.dim();
    if alpha.len() != d * d {
        return Err(Error::DimensionMismatch {
            expected: d * d,
            found: alpha.len(),
        });
    }
    if rho.dim() != d * d {
        return Err(Error::DimensionMismatch {
            expected: d * d,
            found: rho.dim(),
        });
    }
    let n = norm(alpha);
    if (n - 1.0).abs() > tol.trace {
        return Err(Error::NotNormalized { norm: n });
    }
    if !rho.is_density(&tol) {
        return Err(Error::InvalidState("rho must be a density matrix"));
    }
    let generator = LindbladGenerator::new(
        d,
        alloc::vec![Term::new(CoefficientModel::Constant(gamma), g.clone())],
    )?;
    let map = SmallTimeMap::new(generator, 0.0, 1.0)?;
    let projector = Operator::projector(alpha);
    let lhs = projector.trace_product(&map.extend_and_apply(rho)?);
    let rhs = map.extend_and_apply(&projector)?.trace_product(rho);
    Ok((lhs - rhs).norm())
}

/// Largest residual over `draws` random qubit instances (Hermitian `G`,
/// Haar `alpha`, Ginibre `rho`, `gamma` uniform in `[-1, 1]`).
pub fn proposition1_suite(draws: usize, seed: u64) -> Result<f64> {
    let mut rng = random::rng_from_seed(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..draws {
        let g = random::hermitian(&mut rng, 2);
        let alpha = random::unit_vector(&mut rng, 4);
        let rho = random::density(&mut rng, 4);
        let gamma = rng.gen_range(-1.0..=1.0);
        worst = worst.max(proposition1_residual(&g, &alpha, &rho, gamma)?);
    }
    Ok(worst)
}
