use super::lattice::max_norm;
use crate::{Error, Real, Result};
use num_complex::Complex;
use std::collections::BTreeMap;

/// A trigonometric polynomial f(x) = Σ_J c_J e^{iJ·x} on the n-torus.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierSeries<T> {
    n: usize,
    coeffs: BTreeMap<Vec<i64>, Complex<T>>,
}

impl<T: Real> FourierSeries<T> {
    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (Vec<i64>, Complex<T>)>,
    ) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for (j, c) in terms {
            if j.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: j.len(),
                });
            }
            let e = coeffs.entry(j).or_insert(Complex::new(T::zero(), T::zero()));
            *e = *e + c;
        }
        coeffs.retain(|_, c: &mut Complex<T>| c.norm() != T::zero());
        Ok(FourierSeries { n, coeffs })
    }

    pub fn constant(n: usize, c: Complex<T>) -> Self {
        Self::from_terms(n, [(vec![0; n], c)]).expect("consistent length")
    }

    /// e^{iJ·x}.
    pub fn phase(j: &[i64]) -> Self {
        Self::from_terms(j.len(), [(j.to_vec(), Complex::new(T::one(), T::zero()))])
            .expect("consistent length")
    }

    /// cos(x_axis).
    pub fn cos_axis(n: usize, axis: usize) -> Self {
        let mut e = vec![0i64; n];
        e[axis] = 1;
        let minus: Vec<i64> = e.iter().map(|x| -x).collect();
        let h = Complex::new(T::half(), T::zero());
        Self::from_terms(n, [(e, h), (minus, h)]).expect("consistent length")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Complex<T>)> {
        self.coeffs.iter()
    }

    /// Largest |J|_∞ in the support.
    pub fn support_radius(&self) -> usize {
        self.coeffs.keys().map(|j| max_norm(j) as usize).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.keys().all(|j| j.iter().all(|&c| c == 0))
    }

    /// Complex conjugate function f*(x).
    pub fn conj(&self) -> Self {
        FourierSeries {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .map(|(j, c)| (j.iter().map(|x| -x).collect(), c.conj()))
                .collect(),
        }
    }

    /// Pointwise product (coefficient convolution).
    pub fn product(&self, other: &Self) -> Self {
        let terms = self.coeffs.iter().flat_map(|(j, a)| {
            other
                .coeffs
                .iter()
                .map(move |(k, b)| (j.iter().zip(k).map(|(x, y)| x + y).collect(), *a * *b))
        });
        Self::from_terms(self.n, terms).expect("consistent length")
    }
}
