//! Euclidean gamma matrices γ_μγ_ν + γ_νγ_μ = 2δ_μν built from Pauli tensor products.

use crate::matrix::CMatrix;
use crate::{Error, Real, Result};
use num_complex::Complex;

pub const MAX_DIMENSION: usize = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct CliffordRep<T> {
    pub n: usize,
    pub spinor_dim: usize,
    pub gammas: Vec<CMatrix<T>>,
}

fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

fn pauli<T: Real>(k: usize) -> CMatrix<T> {
    let m = |a: [(f64, f64); 4]| CMatrix::from_fn(2, |r, col| c(a[2 * r + col].0, a[2 * r + col].1));
    match k {
        1 => m([(0., 0.), (1., 0.), (1., 0.), (0., 0.)]),
        2 => m([(0., 0.), (0., -1.), (0., 1.), (0., 0.)]),
        _ => m([(1., 0.), (0., 0.), (0., 0.), (-1., 0.)]),
    }
}

fn kron_all<T: Real>(factors: &[CMatrix<T>]) -> CMatrix<T> {
    factors
        .iter()
        .fold(CMatrix::identity(1), |acc, f| acc.kron(f))
}

/// Gamma matrices for 1 ≤ n ≤ 8.
///
/// With m = ⌊n/2⌋: γ_{2j} = σ₃^{⊗j}⊗σ₁⊗1^{⊗(m−j−1)}, γ_{2j+1} the same with σ₂,
/// and for odd n the last generator (−i)^m γ₁⋯γ_{2m}.
pub fn build_gammas<T: Real>(n: usize) -> Result<CliffordRep<T>> {
    if !(1..=MAX_DIMENSION).contains(&n) {
        return Err(Error::UnsupportedDimension {
            n,
            min: 1,
            max: MAX_DIMENSION,
        });
    }
    let m = n / 2;
    let mut gammas = Vec::with_capacity(n);
    for j in 0..m {
        for s in [1, 2] {
            let mut f: Vec<CMatrix<T>> = (0..j).map(|_| pauli(3)).collect();
            f.push(pauli(s));
            f.extend((j + 1..m).map(|_| CMatrix::identity(2)));
            gammas.push(kron_all(&f));
        }
    }
    if n % 2 == 1 {
        let prod = gammas
            .iter()
            .fold(CMatrix::identity(1 << m), |acc, g| acc.matmul(g));
        let phase = (0..m).fold(c::<T>(1., 0.), |p, _| p * c(0., -1.));
        gammas.push(prod.scale(phase));
    }
    Ok(CliffordRep {
        n,
        spinor_dim: 1 << m,
        gammas,
    })
}

impl<T: Real> CliffordRep<T> {
    /// Σ_μ v_μ γ_μ.
    pub fn gamma_dot(&self, v: &[T]) -> Result<CMatrix<T>> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        let mut out = CMatrix::zeros(self.spinor_dim);
        for (g, &x) in self.gammas.iter().zip(v) {
            if x != T::zero() {
                out = &out + &g.scale_re(x);
            }
        }
        Ok(out)
    }

    /// γ·I for an integer mode vector, scaled by `s`.
    pub fn gamma_dot_mode(&self, mode: &[i64], s: T) -> CMatrix<T> {
        let v: Vec<T> = mode.iter().map(|&i| T::of_i64(i) * s).collect();
        self.gamma_dot(&v).expect("mode length matches representation")
    }

    pub fn identity(&self) -> CMatrix<T> {
        CMatrix::identity(self.spinor_dim)
    }
}
