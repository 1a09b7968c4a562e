use super::lattice::ModeLattice;
use crate::clifford::CliffordRep;
use crate::matrix::CMatrix;
use crate::{Error, Real, Result};
use num_complex::Complex;
use std::collections::BTreeMap;

/// Blocks a builder dropped because the shifted mode left the lattice.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TruncationReport {
    pub dropped_blocks: usize,
    pub max_dropped_coefficient: f64,
}

/// Linear operator on (modes) ⊗ (spinors), stored as spinor blocks keyed by
/// (out-mode index, in-mode index). Missing blocks are zero.
#[derive(Clone, Debug)]
pub struct TripleOperator<T> {
    pub lattice: ModeLattice,
    pub rep: CliffordRep<T>,
    pub blocks: BTreeMap<(usize, usize), CMatrix<T>>,
    /// Set by constructors that produce self-adjoint operators.
    pub self_adjoint: bool,
    pub truncation: TruncationReport,
}

impl<T: Real> TripleOperator<T> {
    pub fn zero(lattice: &ModeLattice, rep: &CliffordRep<T>) -> Result<Self> {
        if lattice.n() != rep.n {
            return Err(Error::DimensionMismatch {
                expected: lattice.n(),
                found: rep.n,
            });
        }
        Ok(TripleOperator {
            lattice: lattice.clone(),
            rep: rep.clone(),
            blocks: BTreeMap::new(),
            self_adjoint: true,
            truncation: TruncationReport::default(),
        })
    }

    pub fn spinor_dim(&self) -> usize {
        self.rep.spinor_dim
    }

    pub fn block(&self, out: usize, inp: usize) -> Option<&CMatrix<T>> {
        self.blocks.get(&(out, inp))
    }

    /// Block between two modes given as vectors; zero if absent.
    pub fn block_at(&self, out: &[i64], inp: &[i64]) -> CMatrix<T> {
        match (self.lattice.index_of(out), self.lattice.index_of(inp)) {
            (Some(o), Some(i)) => self
                .block(o, i)
                .cloned()
                .unwrap_or_else(|| CMatrix::zeros(self.spinor_dim())),
            _ => CMatrix::zeros(self.spinor_dim()),
        }
    }

    pub(crate) fn accumulate(&mut self, out: usize, inp: usize, m: CMatrix<T>) {
        match self.blocks.get_mut(&(out, inp)) {
            Some(b) => *b = &*b + &m,
            None => {
                self.blocks.insert((out, inp), m);
            }
        }
    }

    fn like(&self) -> Self {
        TripleOperator {
            lattice: self.lattice.clone(),
            rep: self.rep.clone(),
            blocks: BTreeMap::new(),
            self_adjoint: false,
            truncation: self.truncation,
        }
    }

    fn merged_truncation(&self, other: &Self) -> TruncationReport {
        TruncationReport {
            dropped_blocks: self.truncation.dropped_blocks + other.truncation.dropped_blocks,
            max_dropped_coefficient: self
                .truncation
                .max_dropped_coefficient
                .max(other.truncation.max_dropped_coefficient),
        }
    }

    /// self ∘ other.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = self.like();
        out.truncation = self.merged_truncation(other);
        for (&(i, k), a) in &self.blocks {
            for (&(_, j), b) in other.blocks.range((k, 0)..=(k, usize::MAX)) {
                out.accumulate(i, j, a * b);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.self_adjoint = self.self_adjoint && other.self_adjoint;
        out.truncation = self.merged_truncation(other);
        for (&(i, j), b) in &other.blocks {
            out.accumulate(i, j, b.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex::new(-T::one(), T::zero())))
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        let mut out = self.like();
        out.self_adjoint = self.self_adjoint && c.im == T::zero();
        out.blocks = self.blocks.iter().map(|(k, b)| (*k, b.scale(c))).collect();
        out
    }

    pub fn adjoint(&self) -> Self {
        let mut out = self.like();
        out.self_adjoint = self.self_adjoint;
        out.blocks = self
            .blocks
            .iter()
            .map(|(&(i, j), b)| ((j, i), b.adjoint()))
            .collect();
        out
    }

    /// [self, other].
    pub fn commutator(&self, other: &Self) -> Self {
        self.compose(other).sub(&other.compose(self))
    }

    fn interior_pair(&self, key: &(usize, usize), radius: usize) -> bool {
        self.lattice.is_interior(key.0, radius) && self.lattice.is_interior(key.1, radius)
    }

    /// Largest entry modulus over blocks with both modes at |I|_∞ ≤ Λ − radius.
    pub fn max_abs_interior(&self, radius: usize) -> T {
        self.blocks
            .iter()
            .filter(|(k, _)| self.interior_pair(k, radius))
            .fold(T::zero(), |m, (_, b)| m.max(b.max_abs()))
    }

    /// Largest entrywise difference over interior blocks.
    pub fn max_abs_diff_interior(&self, other: &Self, radius: usize) -> T {
        self.sub(other).max_abs_interior(radius)
    }

    /// Largest entry of self − self†.
    pub fn adjoint_deviation(&self) -> T {
        self.sub(&self.adjoint()).max_abs_interior(0)
    }

    /// Spectral norm of the operator restricted (on both sides) to interior
    /// modes, by power iteration on A†A.
    pub fn interior_operator_norm(&self, radius: usize) -> T {
        let d = self.spinor_dim();
        let blocks: Vec<_> = self
            .blocks
            .iter()
            .filter(|(k, _)| self.interior_pair(k, radius))
            .collect();
        if blocks.is_empty() {
            return T::zero();
        }
        let size = self.lattice.len() * d;
        let zero = Complex::new(T::zero(), T::zero());
        let apply = |x: &[Complex<T>], adjoint: bool| -> Vec<Complex<T>> {
            let mut y = vec![zero; size];
            for (&(o, i), b) in &blocks {
                let (src, dst) = if adjoint { (o, i) } else { (i, o) };
                for r in 0..d {
                    let mut acc = zero;
                    for c in 0..d {
                        let e = if adjoint { b[(c, r)].conj() } else { b[(r, c)] };
                        acc = acc + e * x[src * d + c];
                    }
                    y[dst * d + r] = y[dst * d + r] + acc;
                }
            }
            y
        };
        let norm = |v: &[Complex<T>]| v.iter().map(|x| x.norm_sqr()).sum::<T>().sqrt();
        // deterministic start with weight on every interior state
        let mut v: Vec<Complex<T>> = (0..size)
            .map(|k| {
                if self.lattice.is_interior(k / d, radius) {
                    Complex::new(T::one() + T::lit(0.37) * T::lit(((k * 7919) % 101) as f64 / 101.0), T::zero())
                } else {
                    zero
                }
            })
            .collect();
        let n0 = norm(&v);
        v.iter_mut().for_each(|x| *x = *x / n0);
        let mut lambda = T::zero();
        for _ in 0..20_000 {
            let w = apply(&apply(&v, false), true);
            let next = norm(&w);
            if next == T::zero() {
                return T::zero();
            }
            v = w.into_iter().map(|x| x / next).collect();
            let done = (next - lambda).abs() <= T::lit(1e-15) * next;
            lambda = next;
            if done {
                break;
            }
        }
        lambda.sqrt()
    }
}
