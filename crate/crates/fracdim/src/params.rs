use crate::{Error, Real, Result};
use serde::Serialize;

/// Torus dimension n, deformation α, mass scale M and extra mass m₀².
///
/// Derived: d = n/(1−2α), m² = M²αn/(1−2α), m̃² = m² + m₀².
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DeformationParams<T> {
    n: usize,
    alpha: T,
    #[serde(rename = "M")]
    mass_scale: T,
    m0_sq: T,
}

impl<T: Real> DeformationParams<T> {
    /// M = 1, m₀² = 0. Requires n ≥ 1, |α| < 1, α ≠ 1/2.
    pub fn new(n: usize, alpha: T) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameters("n must be positive".into()));
        }
        if !alpha.is_finite() || alpha.abs() >= T::one() {
            return Err(Error::InvalidParameters(format!(
                "alpha = {} outside (-1, 1)",
                alpha.as_f64()
            )));
        }
        if alpha == T::half() {
            return Err(Error::InvalidParameters(
                "alpha = 1/2 makes n/(1-2 alpha) infinite".into(),
            ));
        }
        Ok(DeformationParams {
            n,
            alpha,
            mass_scale: T::one(),
            m0_sq: T::zero(),
        })
    }

    pub fn with_mass_scale(mut self, mass_scale: T) -> Result<Self> {
        if !(mass_scale > T::zero() && mass_scale.is_finite()) {
            return Err(Error::InvalidParameters("M must be positive".into()));
        }
        self.mass_scale = mass_scale;
        Ok(self)
    }

    pub fn with_m0_sq(mut self, m0_sq: T) -> Result<Self> {
        if !(m0_sq >= T::zero() && m0_sq.is_finite()) {
            return Err(Error::InvalidParameters("m0_sq must be nonnegative".into()));
        }
        self.m0_sq = m0_sq;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn mass_scale(&self) -> T {
        self.mass_scale
    }

    pub fn m0_sq(&self) -> T {
        self.m0_sq
    }

    pub fn n_real(&self) -> T {
        T::of_usize(self.n)
    }

    pub fn spinor_dim(&self) -> usize {
        1 << (self.n / 2)
    }

    /// d = n/(1−2α).
    pub fn spectral_dimension(&self) -> T {
        self.n_real() / (T::one() - T::two() * self.alpha)
    }

    /// αn/(1−2α), the dimensionless mass coefficient.
    pub fn mass_coefficient(&self) -> T {
        self.alpha * self.n_real() / (T::one() - T::two() * self.alpha)
    }

    /// m² = M²αn/(1−2α).
    pub fn mass_squared(&self) -> T {
        self.mass_scale * self.mass_scale * self.mass_coefficient()
    }

    /// m̃² = m² + m₀².
    pub fn effective_mass_squared(&self) -> T {
        self.mass_squared() + self.m0_sq
    }

    /// The operator-side constraint |α| < 1/2.
    pub fn require_triple_range(&self) -> Result<()> {
        if self.alpha.abs() < T::half() {
            Ok(())
        } else {
            Err(Error::DomainError(format!(
                "operator constructions need |alpha| < 1/2, got {}",
                self.alpha.as_f64()
            )))
        }
    }

    /// Same parameters with a different α (validated).
    pub fn with_alpha(&self, alpha: T) -> Result<Self> {
        DeformationParams::new(self.n, alpha)?
            .with_mass_scale(self.mass_scale)?
            .with_m0_sq(self.m0_sq)
    }
}
