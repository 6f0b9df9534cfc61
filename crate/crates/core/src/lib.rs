//! Snapshot non-Markovianity witnesses for qubit Lindblad dynamics.
//!
//! The crate is `no_std` (it needs `alloc`). It covers:
//!
//! * [`operator`]: dense complex matrices, Hermitian eigendecomposition,
//!   tensor products, partial traces and trace norms.
//! * [`lindblad`]: time-dependent Lindblad generators and the first-order
//!   snapshot map `N = id + eps * L_t`.
//! * [`choi`]: snapshot Choi states and instantaneous CP-divisibility verdicts.
//! * [`spa`]: structural physical approximation of a snapshot map by mixing
//!   with the completely depolarizing map.
//! * [`witness`]: the witness `W = nu (id (x) N)(|tau><tau|)` built from the
//!   SPA state, and the adjoint identity that lets `N` move between state and
//!   observable.
//! * [`entanglement`]: a two-parameter family of positive qubit maps, Werner
//!   states and entanglement detection through `id (x) Lambda`.
#![no_std]

extern crate alloc;

mod eig;
pub mod choi;
pub mod entanglement;
pub mod error;
pub mod lindblad;
pub mod operator;
pub mod random;
pub mod spa;
pub mod witness;

pub use choi::{choi_of, classify, scan, ChoiState, DivisibilityVerdict};
pub use error::{Error, Result};
pub use lindblad::{CoefficientModel, LindbladGenerator, SmallTimeMap, Term};
pub use operator::{Operator, Spectrum, Subsystem, C64};
pub use spa::{optimal_decomposition, optimal_p, spa_mix, SpaDecomposition};
pub use witness::{build_witness, classify_by_witness, evaluate, WitnessOperator, WitnessVerdict};

/// Default small-time step used by every scenario.
pub const DEFAULT_EPSILON: f64 = 0.01;

/// Default CP-divisibility classification tolerance.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Numerical tolerances shared by the predicates in this crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub herm: f64,
    pub psd: f64,
    pub trace: f64,
    pub recon: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            herm: 1e-9,
            psd: 1e-9,
            trace: 1e-9,
            recon: 1e-9,
        }
    }
}
