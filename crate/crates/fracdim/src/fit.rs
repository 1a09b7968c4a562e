//! Small dense least-squares helpers (Householder QR with column scaling).

use crate::{Error, Real, Result};

/// Minimise ‖A x − b‖₂ for a tall matrix given as rows.
pub fn least_squares<T: Real>(rows: &[Vec<T>], rhs: &[T]) -> Result<Vec<T>> {
    let m = rows.len();
    let p = rows.first().map_or(0, Vec::len);
    if m < p || p == 0 || rhs.len() != m || rows.iter().any(|r| r.len() != p) {
        return Err(Error::InvalidParameters(format!(
            "least squares needs a tall {m}x{p} system"
        )));
    }
    // column equilibration keeps mixed-scale columns well conditioned
    let scale: Vec<T> = (0..p)
        .map(|j| {
            let s = rows.iter().map(|r| r[j] * r[j]).sum::<T>().sqrt();
            if s > T::zero() { s } else { T::one() }
        })
        .collect();
    let mut a: Vec<Vec<T>> = rows
        .iter()
        .map(|r| r.iter().zip(&scale).map(|(x, s)| *x / *s).collect())
        .collect();
    let mut b = rhs.to_vec();
    for k in 0..p {
        let norm = (k..m).map(|i| a[i][k] * a[i][k]).sum::<T>().sqrt();
        if norm == T::zero() {
            return Err(Error::InvalidParameters("rank-deficient least squares".into()));
        }
        let alpha = if a[k][k] > T::zero() { -norm } else { norm };
        let mut v: Vec<T> = (k..m).map(|i| a[i][k]).collect();
        v[0] -= alpha;
        let vv = v.iter().map(|x| *x * *x).sum::<T>();
        if vv == T::zero() {
            continue;
        }
        for j in k..p {
            let d = (k..m).map(|i| v[i - k] * a[i][j]).sum::<T>() * T::two() / vv;
            for i in k..m {
                a[i][j] -= d * v[i - k];
            }
        }
        let d = (k..m).map(|i| v[i - k] * b[i]).sum::<T>() * T::two() / vv;
        for i in k..m {
            b[i] -= d * v[i - k];
        }
    }
    let mut x = vec![T::zero(); p];
    for k in (0..p).rev() {
        let s = ((k + 1)..p).map(|j| a[k][j] * x[j]).sum::<T>();
        if a[k][k].abs() <= T::epsilon() * T::lit(1e3) {
            return Err(Error::InvalidParameters("rank-deficient least squares".into()));
        }
        x[k] = (b[k] - s) / a[k][k];
    }
    Ok(x.iter().zip(&scale).map(|(x, s)| *x / *s).collect())
}

/// Ordinary straight-line fit y ≈ c₀ + c₁x; returns (c₀, c₁, max |residual|).
pub fn linear_fit<T: Real>(x: &[T], y: &[T]) -> Result<(T, T, T)> {
    let rows: Vec<Vec<T>> = x.iter().map(|&xi| vec![T::one(), xi]).collect();
    let c = least_squares(&rows, y)?;
    let res = x
        .iter()
        .zip(y)
        .fold(T::zero(), |m, (&xi, &yi)| m.max((c[0] + c[1] * xi - yi).abs()));
    Ok((c[0], c[1], res))
}

/// Polynomial fit of given degree; coefficients lowest order first.
pub fn poly_fit<T: Real>(x: &[T], y: &[T], degree: usize) -> Result<Vec<T>> {
    let rows: Vec<Vec<T>> = x
        .iter()
        .map(|&xi| (0..=degree).map(|k| xi.powi(k as i32)).collect())
        .collect();
    least_squares(&rows, y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_exact_polynomial() {
        let x: Vec<f64> = (0..9).map(|i| i as f64 * 0.3 - 1.0).collect();
        let y: Vec<f64> = x.iter().map(|t| 2.0 - 0.5 * t + 3.0 * t * t).collect();
        let c = poly_fit(&x, &y, 2).unwrap();
        for (got, want) in c.iter().zip([2.0, -0.5, 3.0]) {
            assert!((got - want).abs() < 1e-12);
        }
        let (c0, c1, r) = linear_fit(&[1.0f64, 2.0, 3.0], &[1.0, 3.0, 5.0]).unwrap();
        assert!((c0 + 1.0).abs() < 1e-14 && (c1 - 2.0).abs() < 1e-14 && r < 1e-14);
    }

    #[test]
    fn rejects_wide_or_singular() {
        assert!(least_squares(&[vec![1.0, 2.0]], &[1.0]).is_err());
        assert!(least_squares(&[vec![1.0, 2.0], vec![2.0, 4.0], vec![3.0, 6.0]], &[1.0, 2.0, 3.0]).is_err());
    }
}
