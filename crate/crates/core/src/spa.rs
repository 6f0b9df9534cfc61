//! Structural physical approximation of a snapshot map.
//!
//! Mixing `S_p = p Theta + (1 - p) N` with the completely depolarizing map
//! `Theta(rho) = I/d` shifts every Choi eigenvalue affinely:
//! `lambda -> p/d^2 + (1 - p) lambda`. The smallest `p` that makes the
//! mixture CP is therefore
//!
//! ```text
//! p* = |lambda_-| d^2 / (|lambda_-| d^2 + 1)
//! ```
//!
//! where `lambda_-` is the most negative Choi eigenvalue (zero for CP maps).
//! The optimal decomposition reads `S_opt = omega I/d^2 + nu (id (x) N)` with
//! `omega = p*` and `nu = 1 - p*`. The identity term is the normalized
//! maximally mixed state so that the SPA state keeps unit trace.

use crate::choi::{choi_of, ChoiState};
use crate::error::{Error, Result};
use crate::lindblad::SmallTimeMap;
use crate::operator::Operator;

#[derive(Debug, Clone)]
pub struct SpaDecomposition {
    /// Magnitude of the most negative Choi eigenvalue, 0 for CP maps.
    pub lambda_minus: f64,
    pub p_star: f64,
    pub omega: f64,
    pub nu: f64,
    /// `omega I/d^2 + nu C`, on the CP boundary when the map is not CP.
    pub spa_choi: ChoiState,
}

/// Choi state of `p Theta + (1 - p) N`.
pub fn spa_mix(map: &SmallTimeMap, p: f64) -> Result<ChoiState> {
    mix_with_depolarizer(&choi_of(map)?, p)
}

/// `p I/D + (1 - p) C` for a Choi state of dimension `D`.
pub fn mix_with_depolarizer(choi: &ChoiState, p: f64) -> Result<ChoiState> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ParameterOutOfRange { name: "p", value: p });
    }
    let dim = choi.matrix().dim();
    let matrix = Operator::maximally_mixed(dim).scale(p) + choi.matrix().scale(1.0 - p);
    ChoiState::new(matrix, choi.source())
}

fn threshold(lambda_minus: f64, choi_dim: usize) -> f64 {
    let weighted = lambda_minus * choi_dim as f64;
    weighted / (weighted + 1.0)
}

fn lambda_minus(choi: &ChoiState) -> f64 {
    (-choi.min_eigenvalue()).max(0.0)
}

/// Smallest depolarizing weight that makes the snapshot CP.
pub fn optimal_p(map: &SmallTimeMap) -> Result<f64> {
    let choi = choi_of(map)?;
    Ok(threshold(lambda_minus(&choi), choi.matrix().dim()))
}

pub fn optimal_decomposition(map: &SmallTimeMap) -> Result<SpaDecomposition> {
    let choi = choi_of(map)?;
    let lambda_minus = lambda_minus(&choi);
    let p_star = threshold(lambda_minus, choi.matrix().dim());
    let spa_choi = mix_with_depolarizer(&choi, p_star)?;
    Ok(SpaDecomposition {
        lambda_minus,
        p_star,
        omega: p_star,
        nu: 1.0 - p_star,
        spa_choi,
    })
}
