//! Finite-matrix spectral triple on the truncated Fourier lattice of the n-torus.
//!
//! The Dirac operator iγ·∂ acts on e^{iI·x}⊗ψ as (−γ·I)ψ; the deformed operator
//! is D_α = D(1+D²)^{−α}, diagonal in modes with block −γ·I(1+|I|²)^{−α}.
//! Assertions about shifted operators are only meaningful on interior blocks,
//! away from the cutoff.

mod export;
mod fourier;
mod junk;
mod lattice;
mod operator;

pub use export::{read_triplets, write_triplets};
pub use fourier::FourierSeries;
pub use junk::{junk_residual, vanishing_one_form_check, JunkResidual, JunkVerdict, VanishingOneFormReport};
pub use lattice::{max_norm, norm_sq, ModeLattice};
pub use operator::{TripleOperator, TruncationReport};

use crate::clifford::CliffordRep;
use crate::matrix::CMatrix;
use crate::params::DeformationParams;
use crate::{Error, Real, Result};
use num_complex::Complex;

fn check_dims<T: Real>(lattice: &ModeLattice, rep: &CliffordRep<T>) -> Result<()> {
    if lattice.n() != rep.n {
        return Err(Error::DimensionMismatch {
            expected: lattice.n(),
            found: rep.n,
        });
    }
    Ok(())
}

/// (1+|I|²)^{−α}.
pub fn deformation_factor<T: Real>(mode: &[i64], alpha: T) -> T {
    (T::one() + T::of_i64(norm_sq(mode))).powf(-alpha)
}

fn diagonal<T: Real>(
    lattice: &ModeLattice,
    rep: &CliffordRep<T>,
    mut block: impl FnMut(&[i64]) -> CMatrix<T>,
) -> Result<TripleOperator<T>> {
    check_dims(lattice, rep)?;
    let mut op = TripleOperator::zero(lattice, rep)?;
    for (idx, mode) in lattice.modes().enumerate() {
        let b = block(&mode);
        if !b.is_zero() {
            op.blocks.insert((idx, idx), b);
        }
    }
    op.self_adjoint = true;
    Ok(op)
}

/// D = iγ·∂: block −γ·I at mode I.
pub fn build_dirac<T: Real>(lattice: &ModeLattice, rep: &CliffordRep<T>) -> Result<TripleOperator<T>> {
    diagonal(lattice, rep, |m| rep.gamma_dot_mode(m, -T::one()))
}

/// D_α: block −γ·I(1+|I|²)^{−α}. Identical to [`build_dirac`] at α = 0.
pub fn build_deformed_dirac<T: Real>(
    lattice: &ModeLattice,
    rep: &CliffordRep<T>,
    params: &DeformationParams<T>,
) -> Result<TripleOperator<T>> {
    params.require_triple_range()?;
    check_n(lattice, params)?;
    let a = params.alpha();
    diagonal(lattice, rep, |m| rep.gamma_dot_mode(m, -deformation_factor(m, a)))
}

/// (1+D²)^{−α}: the scalar factor (1+|I|²)^{−α} times the spinor identity.
pub fn build_deformation_weight<T: Real>(
    lattice: &ModeLattice,
    rep: &CliffordRep<T>,
    params: &DeformationParams<T>,
) -> Result<TripleOperator<T>> {
    check_n(lattice, params)?;
    let a = params.alpha();
    diagonal(lattice, rep, |m| rep.identity().scale_re(deformation_factor(m, a)))
}

fn check_n<T: Real>(lattice: &ModeLattice, params: &DeformationParams<T>) -> Result<()> {
    if lattice.n() != params.n() {
        return Err(Error::DimensionMismatch {
            expected: lattice.n(),
            found: params.n(),
        });
    }
    Ok(())
}

fn shifts<T: Real>(
    lattice: &ModeLattice,
    rep: &CliffordRep<T>,
    f: &FourierSeries<T>,
    mut coefficient: impl FnMut(&[i64], Complex<T>) -> CMatrix<T>,
) -> Result<TripleOperator<T>> {
    check_dims(lattice, rep)?;
    if f.n() != lattice.n() {
        return Err(Error::DimensionMismatch {
            expected: lattice.n(),
            found: f.n(),
        });
    }
    let mut op = TripleOperator::zero(lattice, rep)?;
    op.self_adjoint = false;
    for (j, c) in f.terms() {
        let b = coefficient(j, *c);
        if b.is_zero() {
            continue;
        }
        for idx in 0..lattice.len() {
            match lattice.shifted(idx, j) {
                Some(out) => op.accumulate(out, idx, b.clone()),
                None => {
                    op.truncation.dropped_blocks += 1;
                    op.truncation.max_dropped_coefficient =
                        op.truncation.max_dropped_coefficient.max(c.norm().as_f64());
                }
            }
        }
    }
    Ok(op)
}

/// Multiplication by f: block (I+J, I) = c_J·1. Shifts leaving the lattice are
/// dropped and counted in the truncation report.
pub fn build_multiplication<T: Real>(
    lattice: &ModeLattice,
    rep: &CliffordRep<T>,
    f: &FourierSeries<T>,
) -> Result<TripleOperator<T>> {
    shifts(lattice, rep, f, |_, c| rep.identity().scale(c))
}

/// Multiplication by iγ·∂f: block (I+J, I) = −c_J γ·J.
pub fn build_derivative_multiplication<T: Real>(
    lattice: &ModeLattice,
    rep: &CliffordRep<T>,
    f: &FourierSeries<T>,
) -> Result<TripleOperator<T>> {
    shifts(lattice, rep, f, |j, c| rep.gamma_dot_mode(j, -T::one()).scale(c))
}

/// df = [D_α, f] by block multiplication.
pub fn differential<T: Real>(
    f: &FourierSeries<T>,
    params: &DeformationParams<T>,
    lattice: &ModeLattice,
    rep: &CliffordRep<T>,
) -> Result<TripleOperator<T>> {
    let d = build_deformed_dirac(lattice, rep, params)?;
    let m = build_multiplication(lattice, rep, f)?;
    Ok(d.commutator(&m))
}

/// df assembled as (1+D²)^{−α}(Df) + [(1+D²)^{−α}f − f(1+D²)^{−α}]·iγ·∂.
pub fn differential_closed_form<T: Real>(
    f: &FourierSeries<T>,
    params: &DeformationParams<T>,
    lattice: &ModeLattice,
    rep: &CliffordRep<T>,
) -> Result<TripleOperator<T>> {
    params.require_triple_range()?;
    let w = build_deformation_weight(lattice, rep, params)?;
    let m = build_multiplication(lattice, rep, f)?;
    let df = build_derivative_multiplication(lattice, rep, f)?;
    let d = build_dirac(lattice, rep)?;
    let first = w.compose(&df);
    let second = w.compose(&m).sub(&m.compose(&w)).compose(&d);
    Ok(first.add(&second))
}

/// Largest interior entry of [df, g]; zero exactly when d is a derivation.
pub fn non_multiplicativity_witness<T: Real>(
    f: &FourierSeries<T>,
    g: &FourierSeries<T>,
    params: &DeformationParams<T>,
    lattice: &ModeLattice,
    rep: &CliffordRep<T>,
) -> Result<T> {
    if f.is_constant() || g.is_constant() {
        return Err(Error::DomainError("witness needs nonconstant functions".into()));
    }
    let df = differential(f, params, lattice, rep)?;
    let mg = build_multiplication(lattice, rep, g)?;
    let radius = f.support_radius() + g.support_radius();
    Ok(df.commutator(&mg).max_abs_interior(radius))
}

/// Largest interior deviation of df(α) from the classical iγ·∂f.
pub fn canonical_deviation<T: Real>(
    f: &FourierSeries<T>,
    params: &DeformationParams<T>,
    lattice: &ModeLattice,
    rep: &CliffordRep<T>,
) -> Result<T> {
    let df = differential(f, params, lattice, rep)?;
    let classical = build_derivative_multiplication(lattice, rep, f)?;
    Ok(df.max_abs_diff_interior(&classical, f.support_radius()))
}
