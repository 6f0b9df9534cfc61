//! Time-dependent Lindblad generators in diagonal form and their first-order
//! snapshot maps.
//!
//! A generator is a list of `(Gamma_a(t), L_a)` pairs acting as
//!
//! ```text
//! L_t(rho) = sum_a Gamma_a(t) (L_a rho L_a^dagger - 1/2 {L_a^dagger L_a, rho})
//! ```
//!
//! and a [`SmallTimeMap`] freezes the coefficients at an instant `t` to give
//! `N(rho) = rho + eps * L_t(rho)`. The map is deliberately kept at first
//! order; no exponential integration is performed.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::operator::{pauli, Operator};

/// A scalar rate `Gamma(t)`.
#[derive(Clone)]
pub enum CoefficientModel {
    Constant(f64),
    /// `scale * tanh(t)`; `scale = -1` is the eternal non-Markovian rate.
    Tanh { scale: f64 },
    /// Piecewise-linear interpolation; evaluation outside `[times[0], times[last]]`
    /// is an error.
    Tabulated { times: Vec<f64>, values: Vec<f64> },
    Callable(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for CoefficientModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Constant(c) => f.debug_tuple("Constant").field(c).finish(),
            Self::Tanh { scale } => f.debug_struct("Tanh").field("scale", scale).finish(),
            Self::Tabulated { times, values } => f
                .debug_struct("Tabulated")
                .field("times", times)
                .field("values", values)
                .finish(),
            Self::Callable(_) => f.write_str("Callable(..)"),
        }
    }
}

impl CoefficientModel {
    /// `-tanh(t)`.
    pub fn eternal() -> Self {
        Self::Tanh { scale: -1.0 }
    }

    pub fn tabulated(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::InvalidTable("times and values differ in length"));
        }
        if times.len() < 2 {
            return Err(Error::InvalidTable("need at least two samples"));
        }
        if times.iter().chain(&values).any(|x| !x.is_finite()) {
            return Err(Error::InvalidTable("non-finite sample"));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidTable("times must be strictly ascending"));
        }
        Ok(Self::Tabulated { times, values })
    }

    pub fn callable<F>(f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::Callable(Arc::new(f))
    }

    pub fn evaluate(&self, t: f64) -> Result<f64> {
        let value = match self {
            Self::Constant(c) => *c,
            Self::Tanh { scale } => scale * libm::tanh(t),
            Self::Tabulated { times, values } => interpolate(times, values, t)?,
            Self::Callable(f) => f(t),
        };
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::NonFiniteCoefficient { t })
        }
    }
}

fn interpolate(times: &[f64], values: &[f64], t: f64) -> Result<f64> {
    let (start, stop) = (times[0], times[times.len() - 1]);
    if !(start..=stop).contains(&t) {
        return Err(Error::OutsideDomain { t, start, stop });
    }
    // First index with times[i] >= t.
    let hi = times.partition_point(|&x| x < t);
    if hi == 0 {
        return Ok(values[0]);
    }
    let lo = hi - 1;
    let w = (t - times[lo]) / (times[hi] - times[lo]);
    Ok(values[lo] + w * (values[hi] - values[lo]))
}

/// One dissipative channel `Gamma(t) D[L]`.
#[derive(Debug, Clone)]
pub struct Term {
    pub coefficient: CoefficientModel,
    pub jump: Operator,
}

impl Term {
    pub fn new(coefficient: CoefficientModel, jump: Operator) -> Self {
        Self { coefficient, jump }
    }
}

#[derive(Debug, Clone)]
pub struct LindbladGenerator {
    name: String,
    dim: usize,
    terms: Vec<Term>,
}

impl LindbladGenerator {
    pub fn new(dim: usize, terms: Vec<Term>) -> Result<Self> {
        let limit = dim * dim;
        if terms.len() > limit {
            return Err(Error::TooManyTerms {
                terms: terms.len(),
                limit,
            });
        }
        if let Some(bad) = terms.iter().find(|term| term.jump.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.jump.dim(),
            });
        }
        Ok(Self {
            name: String::from("custom"),
            dim,
            terms,
        })
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = String::from(name);
        self
    }

    /// `Gamma_D(t) (sigma_z . sigma_z - .)`.
    pub fn dephasing(rate: CoefficientModel) -> Self {
        Self {
            name: String::from("dephasing"),
            dim: 2,
            terms: alloc::vec![Term::new(rate, pauli::sigma_z())],
        }
    }

    /// `sum_i gamma_i (sigma_i . sigma_i - .)` over `x, y, z`.
    pub fn pauli(gx: CoefficientModel, gy: CoefficientModel, gz: CoefficientModel) -> Self {
        Self {
            name: String::from("pauli"),
            dim: 2,
            terms: alloc::vec![
                Term::new(gx, pauli::sigma_x()),
                Term::new(gy, pauli::sigma_y()),
                Term::new(gz, pauli::sigma_z()),
            ],
        }
    }

    /// Depolarizer with `gamma_x = gamma_y = 1`, `gamma_z = -tanh t`.
    pub fn eternal() -> Self {
        Self::pauli(
            CoefficientModel::Constant(1.0),
            CoefficientModel::Constant(1.0),
            CoefficientModel::eternal(),
        )
        .with_name("eternal")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn rates_at(&self, t: f64) -> Result<Vec<f64>> {
        self.terms.iter().map(|term| term.coefficient.evaluate(t)).collect()
    }

    /// True when every jump operator is Hermitian within `tol`.
    pub fn has_hermitian_jumps(&self, tol: f64) -> bool {
        self.terms.iter().all(|term| term.jump.is_hermitian(tol))
    }

    /// `L_t(rho)`.
    pub fn apply(&self, rho: &Operator, t: f64) -> Result<Operator> {
        let rates = self.rates_at(t)?;
        self.check_dim(rho)?;
        let jumps: Vec<&Operator> = self.terms.iter().map(|term| &term.jump).collect();
        Ok(dissipator(&rates, &jumps, rho))
    }

    fn check_dim(&self, rho: &Operator) -> Result<()> {
        if rho.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rho.dim(),
            });
        }
        Ok(())
    }
}

/// `sum_a rate_a (L_a X L_a^dagger - 1/2 {L_a^dagger L_a, X})`.
fn dissipator(rates: &[f64], jumps: &[&Operator], x: &Operator) -> Operator {
    let mut out = Operator::zeros(x.dim());
    for (&rate, jump) in rates.iter().zip(jumps) {
        if rate == 0.0 {
            continue;
        }
        let jump_dag = jump.adjoint();
        let sandwich = &(*jump * x) * &jump_dag;
        let decay = (&jump_dag * *jump).anticommutator(x).scale(0.5);
        out = out + (&sandwich - &decay).scale(rate);
    }
    out
}

/// `N = id + eps * L_t` with the rates frozen at `t`.
#[derive(Debug, Clone)]
pub struct SmallTimeMap {
    generator: LindbladGenerator,
    t: f64,
    epsilon: f64,
    rates: Vec<f64>,
}

impl SmallTimeMap {
    pub fn new(generator: LindbladGenerator, t: f64, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0) {
            return Err(Error::NonPositiveEpsilon(epsilon));
        }
        let rates = generator.rates_at(t)?;
        Ok(Self {
            generator,
            t,
            epsilon,
            rates,
        })
    }

    pub fn generator(&self) -> &LindbladGenerator {
        &self.generator
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// System dimension `d`.
    pub fn dim(&self) -> usize {
        self.generator.dim
    }

    /// The frozen rates `Gamma_a(t)`.
    pub fn rates(&self) -> &[f64] {
        &self.rates
    }

    /// `rho + eps L_t(rho)`.
    pub fn apply(&self, rho: &Operator) -> Result<Operator> {
        self.generator.check_dim(rho)?;
        let jumps: Vec<&Operator> = self.generator.terms.iter().map(|term| &term.jump).collect();
        Ok(rho + &dissipator(&self.rates, &jumps, rho).scale(self.epsilon))
    }

    /// `(id (x) N)(X)` for a `d^2 x d^2` operator, built from the lifted jumps
    /// `id (x) L_a`.
    pub fn extend_and_apply(&self, x: &Operator) -> Result<Operator> {
        let d = self.dim();
        if x.dim() != d * d {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                found: x.dim(),
            });
        }
        let id = Operator::identity(d);
        let lifted: Vec<Operator> = self
            .generator
            .terms
            .iter()
            .map(|term| id.tensor(&term.jump))
            .collect();
        let lifted_refs: Vec<&Operator> = lifted.iter().collect();
        Ok(x + &dissipator(&self.rates, &lifted_refs, x).scale(self.epsilon))
    }
}
