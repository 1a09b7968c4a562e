//! Dixmier-trace partial-sum estimator for the scalar action on the
//! deformed torus, with φ a plane wave e^{iq·x}.
//!
//! The diagonal of A = −dφ dφ* |D_α|^{−d} at mode I is B_I²λ_I^{−d}, where
//! B_I = D_α(I−q) − D_α(I) is γ·v_I for a real vector v_I, so its spinor
//! trace is 2^⌊n/2⌋|v_I|²λ_I^{−d}. States are ordered by λ_I, which for
//! α < 1/2 means by |I|; partial sums run over Euclidean balls |I| ≤ Λ.

use crate::fit::{linear_fit, poly_fit};
use crate::params::DeformationParams;
use crate::{Error, Real, Result};
use serde::Serialize;

pub use crate::specfun::sphere_volume;

const MAX_STATES: f64 = 2e7;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DixmierFit<T> {
    pub q: Vec<i64>,
    pub alpha: T,
    pub cutoffs: Vec<usize>,
    /// Retained eigenmode-spinor states N(Λ).
    pub states: Vec<usize>,
    pub partial_sums: Vec<T>,
    /// c in partial_sum ≈ c·ln N + b.
    pub slope: T,
    pub intercept: T,
    /// Max |partial_sum − (c ln N + b)| over the fitted cutoffs.
    pub fit_residual: T,
}

impl<T: Real> DixmierFit<T> {
    /// Refit using only the last `k` cutoffs.
    pub fn window(&self, k: usize) -> Result<(T, T, T)> {
        if k < 2 || k > self.cutoffs.len() {
            return Err(Error::InvalidParameters(format!("window of {k} cutoffs unavailable")));
        }
        let s = self.cutoffs.len() - k;
        let x: Vec<T> = self.states[s..].iter().map(|&m| T::of_usize(m).ln()).collect();
        linear_fit(&x, &self.partial_sums[s..])
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ActionPrediction<T> {
    pub q: Vec<i64>,
    pub value: T,
    /// 2^⌊n/2⌋·V_{S^{n−1}}/(n(2π)^n).
    pub prefactor: T,
}

fn q_sq(q: &[i64]) -> i64 {
    q.iter().map(|c| c * c).sum()
}

/// prefactor·(|q|² + αn/(1−2α))·(1+|q|²)^{−2α} on a unit-volume torus.
pub fn action_prediction<T: Real>(q: &[i64], params: &DeformationParams<T>) -> Result<ActionPrediction<T>> {
    if q.len() != params.n() {
        return Err(Error::DimensionMismatch {
            expected: params.n(),
            found: q.len(),
        });
    }
    let n = params.n_real();
    let prefactor = T::of_usize(params.spinor_dim()) * sphere_volume::<T>(params.n())
        / (n * (T::two() * T::PI()).powf(n));
    let q2 = T::of_i64(q_sq(q));
    let value = prefactor * (q2 + params.mass_coefficient()) * (T::one() + q2).powf(-T::two() * params.alpha());
    Ok(ActionPrediction {
        q: q.to_vec(),
        value,
        prefactor,
    })
}

// v with D_α(J) = −γ·J(1+|J|²)^{−α}: v = −[(I−q)f(I−q) − I f(I)]
fn summand<T: Real>(mode: &[i64], q: &[i64], alpha: T, d: T) -> T {
    let s_i = T::of_i64(mode.iter().map(|c| c * c).sum());
    let shifted: Vec<i64> = mode.iter().zip(q).map(|(a, b)| a - b).collect();
    let s_j = T::of_i64(shifted.iter().map(|c| c * c).sum());
    let f_i = (T::one() + s_i).powf(-alpha);
    let f_j = (T::one() + s_j).powf(-alpha);
    let v2 = mode
        .iter()
        .zip(&shifted)
        .map(|(&i, &j)| {
            let c = T::of_i64(j) * f_j - T::of_i64(i) * f_i;
            c * c
        })
        .sum::<T>();
    let lambda = s_i.sqrt() * f_i;
    v2 * lambda.powf(-d)
}

fn for_each_mode(n: usize, radius: i64, f: &mut dyn FnMut(&[i64])) {
    let mut mode = vec![-radius; n];
    let r2 = radius * radius;
    loop {
        if mode.iter().map(|c| c * c).sum::<i64>() <= r2 {
            f(&mode);
        }
        let mut k = n;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if mode[k] < radius {
                mode[k] += 1;
                break;
            }
            mode[k] = -radius;
        }
    }
}

/// Partial sums Σ_{0<|I|≤Λ} tr⟨I|A|I⟩ for each cutoff, and the fit in ln N(Λ).
pub fn dixmier_partial_sums<T: Real>(q: &[i64], params: &DeformationParams<T>, cutoffs: &[usize]) -> Result<DixmierFit<T>> {
    let n = params.n();
    if q.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: q.len() });
    }
    if n > 3 {
        return Err(Error::UnsupportedDimension { n, min: 1, max: 3 });
    }
    params.require_triple_range()?;
    if cutoffs.len() < 4 || cutoffs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameters("need at least 4 strictly increasing cutoffs".into()));
    }
    let qmax = q.iter().map(|c| c.unsigned_abs() as usize).max().unwrap_or(0);
    if cutoffs[0] < qmax + 4 {
        return Err(Error::CutoffTooSmall {
            cutoff: cutoffs[0],
            minimum: qmax + 4,
        });
    }
    let top = *cutoffs.last().unwrap_or(&0);
    if (2.0 * top as f64 + 1.0).powi(n as i32) > MAX_STATES {
        return Err(Error::InvalidParameters(format!("cutoff {top} too large in dimension {n}")));
    }
    let d = params.spectral_dimension();
    let a = params.alpha();
    // accumulate per shell |I|², then prefix-sum in eigenvalue order
    let max_sq = top * top;
    let mut shell_sum = vec![T::zero(); max_sq + 1];
    let mut shell_count = vec![0usize; max_sq + 1];
    for_each_mode(n, top as i64, &mut |m| {
        let s = m.iter().map(|c| c * c).sum::<i64>() as usize;
        if s == 0 {
            return;
        }
        shell_count[s] += 1;
        shell_sum[s] += summand(m, q, a, d);
    });
    let spinor = params.spinor_dim();
    let mut partial_sums = Vec::with_capacity(cutoffs.len());
    let mut states = Vec::with_capacity(cutoffs.len());
    let (mut acc, mut count, mut s) = (T::zero(), 0usize, 1usize);
    for &cut in cutoffs {
        while s <= cut * cut {
            acc += shell_sum[s];
            count += shell_count[s];
            s += 1;
        }
        partial_sums.push(acc * T::of_usize(spinor));
        states.push(count * spinor);
    }
    let x: Vec<T> = states.iter().map(|&m| T::of_usize(m).ln()).collect();
    let (intercept, slope, fit_residual) = linear_fit(&x, &partial_sums)?;
    Ok(DixmierFit {
        q: q.to_vec(),
        alpha: a,
        cutoffs: cutoffs.to_vec(),
        states,
        partial_sums,
        slope,
        intercept,
        fit_residual,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioReport<T> {
    pub alpha: T,
    pub slope_q1: T,
    pub slope_q2: T,
    pub measured_ratio: T,
    pub predicted_ratio: T,
    /// |measured/predicted − 1|.
    pub discrepancy: T,
    /// Measured ratio from the top-3 cutoff window.
    pub measured_ratio_top3: T,
    /// |top-3 ratio / top-4 ratio − 1|.
    pub window_spread: T,
    pub passed: bool,
}

pub const RATIO_TOLERANCE: f64 = 0.05;
pub const WINDOW_TOLERANCE: f64 = 0.02;

pub fn ratio_check<T: Real>(q1: &[i64], q2: &[i64], params: &DeformationParams<T>, cutoffs: &[usize]) -> Result<RatioReport<T>> {
    let f1 = dixmier_partial_sums(q1, params, cutoffs)?;
    let f2 = dixmier_partial_sums(q2, params, cutoffs)?;
    if f1.slope == T::zero() || f2.slope == T::zero() {
        return Err(Error::InvalidParameters("ratio test needs nonzero momenta".into()));
    }
    let measured = f1.slope / f2.slope;
    let predicted = action_prediction(q1, params)?.value / action_prediction(q2, params)?.value;
    let discrepancy = (measured / predicted - T::one()).abs();
    let k = cutoffs.len().min(4);
    let r3 = f1.window(3)?.1 / f2.window(3)?.1;
    let r4 = f1.window(k)?.1 / f2.window(k)?.1;
    let window_spread = (r3 / r4 - T::one()).abs();
    Ok(RatioReport {
        alpha: params.alpha(),
        slope_q1: f1.slope,
        slope_q2: f2.slope,
        measured_ratio: measured,
        predicted_ratio: predicted,
        discrepancy,
        measured_ratio_top3: r3,
        window_spread,
        passed: discrepancy <= T::lit(RATIO_TOLERANCE),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CanonicalLimitReport<T> {
    pub alphas: Vec<T>,
    pub ratios: Vec<RatioReport<T>>,
    /// αn/(1−2α) at each α.
    pub predicted_mass_coefficients: Vec<T>,
    /// Mass coefficient m̂² solving measured ratio = predicted ratio with m̂² free.
    pub inferred_mass_coefficients: Vec<T>,
    /// Quadratic extrapolation of the inferred coefficient to α = 0.
    pub inferred_at_zero: T,
    /// |quadratic − linear| extrapolations, used as the fit error.
    pub extrapolation_error: T,
    /// predicted coefficient / α → n as α → 0.
    pub predicted_linear_slope: T,
    pub vanishes: bool,
}

pub const CANONICAL_ALPHAS: [f64; 3] = [0.2, 0.1, 0.05];

/// Ratio checks at α ∈ {0.2, 0.1, 0.05} and extrapolation of the mass
/// coefficient to α = 0.
pub fn canonical_limit_check<T: Real>(q1: &[i64], q2: &[i64], n: usize, cutoffs: &[usize]) -> Result<CanonicalLimitReport<T>> {
    let alphas: Vec<T> = CANONICAL_ALPHAS.iter().map(|&a| T::lit(a)).collect();
    let (a1, a2) = (T::of_i64(q_sq(q1)), T::of_i64(q_sq(q2)));
    if a1 == a2 {
        return Err(Error::InvalidParameters("|q1| = |q2| cannot determine the mass term".into()));
    }
    let mut ratios = Vec::new();
    let mut predicted = Vec::new();
    let mut inferred = Vec::new();
    for &a in &alphas {
        let p = DeformationParams::new(n, a)?;
        let r = ratio_check(q1, q2, &p, cutoffs)?;
        // (a1 + m)/(a2 + m) = measured / w with w the (1+|q|²)^{−2α} ratio
        let w = ((T::one() + a1) / (T::one() + a2)).powf(-T::two() * a);
        let rr = r.measured_ratio / w;
        inferred.push((a1 - rr * a2) / (rr - T::one()));
        predicted.push(p.mass_coefficient());
        ratios.push(r);
    }
    let quad = poly_fit(&alphas, &inferred, 2)?;
    let lin = poly_fit(&alphas[1..], &inferred[1..], 1)?;
    let error = (quad[0] - lin[0]).abs();
    let slope = predicted[predicted.len() - 1] / alphas[alphas.len() - 1];
    Ok(CanonicalLimitReport {
        alphas,
        ratios,
        predicted_mass_coefficients: predicted,
        inferred_mass_coefficients: inferred,
        inferred_at_zero: quad[0],
        extrapolation_error: error,
        predicted_linear_slope: slope,
        vanishes: quad[0].abs() <= error.max(T::lit(1e-12)),
    })
}
