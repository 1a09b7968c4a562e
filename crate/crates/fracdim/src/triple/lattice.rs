use crate::{Error, Result};

// Refuse lattices whose mode list would exceed this many entries.
const MAX_MODES: usize = 20_000_000;

/// Fourier modes I ∈ Zⁿ with |I|_∞ ≤ Λ in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModeLattice {
    n: usize,
    cutoff: i64,
    side: usize,
    len: usize,
}

impl ModeLattice {
    pub fn new(n: usize, cutoff: usize) -> Result<Self> {
        if n == 0 || cutoff == 0 {
            return Err(Error::InvalidParameters(
                "lattice needs n ≥ 1 and cutoff ≥ 1".into(),
            ));
        }
        let side = 2 * cutoff + 1;
        let len = (0..n).try_fold(1usize, |acc, _| acc.checked_mul(side));
        match len {
            Some(len) if len <= MAX_MODES => Ok(ModeLattice {
                n,
                cutoff: cutoff as i64,
                side,
                len,
            }),
            _ => Err(Error::InvalidParameters(format!(
                "(2·{cutoff}+1)^{n} modes is too many"
            ))),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff as usize
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The mode at position `idx`; first coordinate is most significant.
    pub fn mode(&self, idx: usize) -> Vec<i64> {
        let mut out = vec![0i64; self.n];
        let mut r = idx;
        for k in (0..self.n).rev() {
            out[k] = (r % self.side) as i64 - self.cutoff;
            r /= self.side;
        }
        out
    }

    pub fn index_of(&self, mode: &[i64]) -> Option<usize> {
        if mode.len() != self.n {
            return None;
        }
        let mut idx = 0usize;
        for &c in mode {
            if c.abs() > self.cutoff {
                return None;
            }
            idx = idx * self.side + (c + self.cutoff) as usize;
        }
        Some(idx)
    }

    pub fn zero_index(&self) -> usize {
        self.index_of(&vec![0; self.n]).expect("origin is in every lattice")
    }

    pub fn modes(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        (0..self.len).map(move |i| self.mode(i))
    }

    /// Whether every coordinate of mode `idx` satisfies |I_k| ≤ Λ − radius.
    pub fn is_interior(&self, idx: usize, radius: usize) -> bool {
        let lim = self.cutoff - radius as i64;
        lim >= 0 && self.mode(idx).iter().all(|c| c.abs() <= lim)
    }

    /// Index of mode(idx) + shift, if it stays in the lattice.
    pub fn shifted(&self, idx: usize, shift: &[i64]) -> Option<usize> {
        let m: Vec<i64> = self.mode(idx).iter().zip(shift).map(|(a, b)| a + b).collect();
        self.index_of(&m)
    }
}

pub fn max_norm(mode: &[i64]) -> i64 {
    mode.iter().fold(0, |m, c| m.max(c.abs()))
}

pub fn norm_sq(mode: &[i64]) -> i64 {
    mode.iter().map(|c| c * c).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_order() {
        let l = ModeLattice::new(2, 2).unwrap();
        assert_eq!(l.len(), 25);
        let modes: Vec<_> = l.modes().collect();
        assert_eq!(modes[0], vec![-2, -2]);
        assert_eq!(modes[1], vec![-2, -1]);
        assert_eq!(modes[24], vec![2, 2]);
        let mut sorted = modes.clone();
        sorted.sort();
        assert_eq!(sorted, modes);
        for (i, m) in modes.iter().enumerate() {
            assert_eq!(l.index_of(m), Some(i));
        }
        assert_eq!(l.index_of(&[3, 0]), None);
        assert_eq!(l.mode(l.zero_index()), vec![0, 0]);
        assert_eq!(ModeLattice::new(3, 4).unwrap().len(), 729);
    }

    #[test]
    fn interior_and_shift() {
        let l = ModeLattice::new(1, 3).unwrap();
        let i = l.index_of(&[2]).unwrap();
        assert!(l.is_interior(i, 1));
        assert!(!l.is_interior(i, 2));
        assert_eq!(l.shifted(i, &[1]), l.index_of(&[3]));
        assert_eq!(l.shifted(i, &[2]), None);
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(ModeLattice::new(0, 3).is_err());
        assert!(ModeLattice::new(2, 0).is_err());
        assert!(ModeLattice::new(8, 1000).is_err());
    }
}
