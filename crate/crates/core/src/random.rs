//! Seeded random states and operators.
//!
//! Everything takes a caller-owned RNG so runs are reproducible bit-for-bit.

use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::operator::{normalized, Operator, C64};

pub type StdRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> StdRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mixes a base seed with integer coordinates (splitmix64 finalizer).
pub fn derive_seed(base: u64, coords: &[u64]) -> u64 {
    let mut state = base;
    for &c in coords {
        state = splitmix(state ^ splitmix(c.wrapping_add(0x9E37_79B9_7F4A_7C15)));
    }
    state
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Standard normal variate via Box-Muller.
pub fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = 1.0 - rng.gen::<f64>(); // (0, 1]
    let u2: f64 = rng.gen();
    libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(2.0 * PI * u2)
}

fn complex_gaussian<R: Rng>(rng: &mut R) -> C64 {
    C64::new(gaussian(rng), gaussian(rng))
}

/// Haar-distributed unit vector.
pub fn unit_vector<R: Rng>(rng: &mut R, dim: usize) -> Vec<C64> {
    let raw: Vec<C64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
    normalized(&raw)
}

/// Qubit pure state with Bloch vector uniform on the sphere.
pub fn qubit_pure_state<R: Rng>(rng: &mut R) -> Vec<C64> {
    let z: f64 = 2.0 * rng.gen::<f64>() - 1.0;
    let phi: f64 = 2.0 * PI * rng.gen::<f64>();
    let theta_half = 0.5 * libm::acos(z);
    alloc::vec![
        C64::new(libm::cos(theta_half), 0.0),
        C64::new(libm::cos(phi), libm::sin(phi)) * libm::sin(theta_half),
    ]
}

/// Hermitian matrix with Gaussian entries.
pub fn hermitian<R: Rng>(rng: &mut R, dim: usize) -> Operator {
    let mut m = Operator::zeros(dim);
    for i in 0..dim {
        m[(i, i)] = C64::new(gaussian(rng), 0.0);
        for j in (i + 1)..dim {
            let z = complex_gaussian(rng);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

/// Ginibre-distributed density matrix `G G^dagger / Tr`.
pub fn density<R: Rng>(rng: &mut R, dim: usize) -> Operator {
    let mut g = Operator::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            g[(i, j)] = complex_gaussian(rng);
        }
    }
    let gg = &g * &g.adjoint();
    let tr = gg.trace().re;
    gg.scale(1.0 / tr)
}

/// Convex mixture of `terms` random product states on two qubits.
pub fn separable_two_qubit<R: Rng>(rng: &mut R, terms: usize) -> Operator {
    let weights: Vec<f64> = (0..terms).map(|_| rng.gen::<f64>() + 1e-3).collect();
    let total: f64 = weights.iter().sum();
    let mut out = Operator::zeros(4);
    for w in weights {
        let a = density(rng, 2);
        let b = density(rng, 2);
        out = out + a.tensor(&b).scale(w / total);
    }
    out
}
