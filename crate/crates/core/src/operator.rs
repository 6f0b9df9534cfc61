//! Dense complex square matrices.
//!
//! Everything in this crate lives in dimension 2 or 4, so storage is a flat
//! row-major `Vec` and every algorithm is the textbook one.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::eig;
use crate::error::{Error, Result};
use crate::Tolerances;

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// A `dim x dim` complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    dim: usize,
    data: Vec<C64>,
}

/// Which factor of a bipartite operator to trace out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// Ascending eigenvalues with orthonormal eigenvectors aligned by index.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<C64>>,
}

impl Spectrum {
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    /// Eigenvector of the smallest eigenvalue.
    pub fn min_vector(&self) -> &[C64] {
        &self.eigenvectors[0]
    }

    /// Rebuilds `sum_k lambda_k v_k v_k^dagger`.
    pub fn reconstruct(&self) -> Operator {
        let dim = self.eigenvalues.len();
        let mut out = Operator::zeros(dim);
        for (lambda, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            out = out + Operator::projector(v).scale(*lambda);
        }
        out
    }
}

impl Operator {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "operator dimension must be positive");
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut out = Self::zeros(dim);
        for i in 0..dim {
            out[(i, i)] = ONE;
        }
        out
    }

    /// `I_d / d`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self::identity(dim).scale(1.0 / dim as f64)
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::NotSquare);
        }
        Ok(Self {
            dim,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    /// Row-major entries; panics unless `data.len()` is a perfect square.
    pub fn from_flat(dim: usize, data: Vec<C64>) -> Self {
        assert_eq!(data.len(), dim * dim, "flat data does not match dimension");
        Self { dim, data }
    }

    pub fn diagonal(entries: &[f64]) -> Self {
        let mut out = Self::zeros(entries.len());
        for (i, &x) in entries.iter().enumerate() {
            out[(i, i)] = C64::new(x, 0.0);
        }
        out
    }

    /// `|v><v|`.
    pub fn projector(v: &[C64]) -> Self {
        let dim = v.len();
        let mut out = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                out[(i, j)] = v[i] * v[j].conj();
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<C64>> {
        self.data.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, factor: f64) -> Self {
        self.scale_complex(C64::new(factor, 0.0))
    }

    pub fn scale_complex(&self, factor: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    /// Anticommutator `{self, other}`.
    pub fn anticommutator(&self, other: &Self) -> Self {
        &(self * other) + &(other * self)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `M - M^dagger`.
    pub fn hermitian_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_residual() < tol
    }

    /// Hermitian, PSD and unit trace under the given tolerances.
    pub fn is_density(&self, tol: &Tolerances) -> bool {
        if !self.is_hermitian(tol.herm) {
            return false;
        }
        if (self.trace() - ONE).norm() >= tol.trace {
            return false;
        }
        match self.eig_hermitian(tol.herm) {
            Ok(spec) => spec.min() >= -tol.psd,
            Err(_) => false,
        }
    }

    /// Kronecker product `self (x) other`.
    pub fn tensor(&self, other: &Self) -> Self {
        let (da, db) = (self.dim, other.dim);
        let mut out = Self::zeros(da * db);
        for i in 0..da {
            for j in 0..da {
                let a = self[(i, j)];
                if a == ZERO {
                    continue;
                }
                for k in 0..db {
                    for l in 0..db {
                        out[(i * db + k, j * db + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Reduced operator after tracing out `subsystem` of a `d1 x d2` split.
    pub fn partial_trace(&self, subsystem: Subsystem, dims: (usize, usize)) -> Result<Self> {
        let (d1, d2) = dims;
        if d1 * d2 != self.dim {
            return Err(Error::DimensionMismatch {
                expected: d1 * d2,
                found: self.dim,
            });
        }
        let out = match subsystem {
            Subsystem::Second => {
                let mut out = Self::zeros(d1);
                for i in 0..d1 {
                    for j in 0..d1 {
                        out[(i, j)] = (0..d2).map(|k| self[(i * d2 + k, j * d2 + k)]).sum();
                    }
                }
                out
            }
            Subsystem::First => {
                let mut out = Self::zeros(d2);
                for k in 0..d2 {
                    for l in 0..d2 {
                        out[(k, l)] = (0..d1).map(|i| self[(i * d2 + k, i * d2 + l)]).sum();
                    }
                }
                out
            }
        };
        Ok(out)
    }

    /// Block `(i, j)` of a `d^2 x d^2` operator viewed as `sum |i><j| (x) X_ij`.
    pub fn block(&self, d: usize, i: usize, j: usize) -> Self {
        let mut out = Self::zeros(d);
        for k in 0..d {
            for l in 0..d {
                out[(k, l)] = self[(i * d + k, j * d + l)];
            }
        }
        out
    }

    /// Applies `id (x) map` to a bipartite operator with local dimension `d`,
    /// block by block. `map` must be linear.
    pub fn extend_second<F>(&self, d: usize, map: F) -> Result<Self>
    where
        F: Fn(&Operator) -> Result<Operator>,
    {
        if d * d != self.dim {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                found: self.dim,
            });
        }
        let mut out = Self::zeros(self.dim);
        for i in 0..d {
            for j in 0..d {
                let image = map(&self.block(d, i, j))?;
                if image.dim != d {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        found: image.dim,
                    });
                }
                for k in 0..d {
                    for l in 0..d {
                        out[(i * d + k, j * d + l)] = image[(k, l)];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Hermitian eigendecomposition, eigenvalues ascending.
    pub fn eig_hermitian(&self, tol_herm: f64) -> Result<Spectrum> {
        let residual = self.hermitian_residual();
        if residual >= tol_herm {
            return Err(Error::NonHermitianInput { residual });
        }
        Ok(eig::jacobi(self))
    }

    /// Sum of absolute eigenvalues of a Hermitian operator.
    pub fn trace_norm(&self) -> Result<f64> {
        let spec = self.eig_hermitian(Tolerances::default().herm)?;
        Ok(spec.eigenvalues.iter().map(|x| x.abs()).sum())
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim);
        self.data
            .chunks(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `<v|self|v>`.
    pub fn expectation(&self, v: &[C64]) -> C64 {
        inner(v, &self.apply(v))
    }

    /// `Tr[self * other]` without forming the product.
    pub fn trace_product(&self, other: &Self) -> C64 {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut acc = ZERO;
        for i in 0..n {
            for k in 0..n {
                acc += self[(i, k)] * other[(k, i)];
            }
        }
        acc
    }

    /// Smallest eigenvalue of a 2x2 Hermitian matrix in closed form.
    pub fn min_eigenvalue_2x2(&self) -> f64 {
        assert_eq!(self.dim, 2);
        let a = self[(0, 0)].re;
        let d = self[(1, 1)].re;
        let b = self[(0, 1)];
        let half_gap = 0.5 * (a - d);
        0.5 * (a + d) - libm::sqrt(half_gap * half_gap + b.norm_sqr())
    }
}

/// `<a|b>`, conjugate-linear in the first argument.
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(v: &[C64]) -> f64 {
    libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum::<f64>())
}

pub fn normalized(v: &[C64]) -> Vec<C64> {
    let n = norm(v);
    v.iter().map(|z| z / n).collect()
}

/// `|<a|b>|^2` for unit vectors; 1 means equal up to global phase.
pub fn overlap(a: &[C64], b: &[C64]) -> f64 {
    inner(a, b).norm_sqr()
}

/// Maximally entangled `sum_i |ii> / sqrt(d)`.
pub fn max_entangled(d: usize) -> Vec<C64> {
    let mut v = vec![ZERO; d * d];
    let amp = 1.0 / libm::sqrt(d as f64);
    for i in 0..d {
        v[i * d + i] = C64::new(amp, 0.0);
    }
    v
}

/// Pauli matrices and the two-qubit Bell basis.
pub mod pauli {
    use super::*;

    pub fn sigma_x() -> Operator {
        Operator::from_flat(2, vec![ZERO, ONE, ONE, ZERO])
    }

    pub fn sigma_y() -> Operator {
        let i = C64::new(0.0, 1.0);
        Operator::from_flat(2, vec![ZERO, -i, i, ZERO])
    }

    pub fn sigma_z() -> Operator {
        Operator::from_flat(2, vec![ONE, ZERO, ZERO, -ONE])
    }

    fn bell(a: f64, b: f64, c: f64, d: f64) -> Vec<C64> {
        let s = core::f64::consts::FRAC_1_SQRT_2;
        [a, b, c, d].iter().map(|&x| C64::new(x * s, 0.0)).collect()
    }

    /// `(|00> + |11>)/sqrt 2`.
    pub fn phi_plus() -> Vec<C64> {
        bell(1.0, 0.0, 0.0, 1.0)
    }

    /// `(|00> - |11>)/sqrt 2`.
    pub fn phi_minus() -> Vec<C64> {
        bell(1.0, 0.0, 0.0, -1.0)
    }

    /// `(|01> + |10>)/sqrt 2`.
    pub fn psi_plus() -> Vec<C64> {
        bell(0.0, 1.0, 1.0, 0.0)
    }

    /// `(|01> - |10>)/sqrt 2`.
    pub fn psi_minus() -> Vec<C64> {
        bell(0.0, 1.0, -1.0, 0.0)
    }
}

impl Index<(usize, usize)> for Operator {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for Operator {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &Operator {
    type Output = Operator;

    fn add(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in addition");
        Operator {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Add for Operator {
    type Output = Operator;

    fn add(self, rhs: Operator) -> Operator {
        &self + &rhs
    }
}

impl Sub for &Operator {
    type Output = Operator;

    fn sub(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in subtraction");
        Operator {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Sub for Operator {
    type Output = Operator;

    fn sub(self, rhs: Operator) -> Operator {
        &self - &rhs
    }
}

impl Neg for &Operator {
    type Output = Operator;

    fn neg(self) -> Operator {
        self.scale(-1.0)
    }
}

impl Mul for &Operator {
    type Output = Operator;

    fn mul(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in product");
        let n = self.dim;
        let mut out = Operator::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Mul for Operator {
    type Output = Operator;

    fn mul(self, rhs: Operator) -> Operator {
        &self * &rhs
    }
}
