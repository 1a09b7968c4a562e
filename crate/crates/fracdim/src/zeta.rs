//! Spectral zeta functions of the canonical and deformed torus triples.
//!
//! The canonical |D| has eigenvalues |I| (I ∈ Zⁿ∖{0}) with multiplicity
//! 2^⌊n/2⌋, so its zeta is a multiple of the Epstein lattice zeta Z_n(s),
//! continued through the symmetric theta integral. The deformed operator has
//! eigenvalues λ_I = |I|(1+|I|²)^{−α}; expanding (1+|I|²)^{αz} binomially
//! turns its zeta into Σ_k binom(αz,k)·Z_n(2k+(1−2α)z), whose poles sit at
//! z_k = (n−2k)/(1−2α).
//!
//! The zero mode is excluded everywhere.

use crate::fit::least_squares;
use crate::params::DeformationParams;
use crate::quad::Integrator;
use crate::specfun::{generalized_binomial_complex, rgamma_complex, sphere_volume, theta_sum_minus_one};
use crate::{Error, Real, Result};
use num_complex::Complex;
use serde::Serialize;

/// Distance below which an argument counts as sitting on a pole.
pub const POLE_GUARD: f64 = 1e-12;
/// Default number of binomial terms beyond k = 0.
pub const DEFAULT_K_MAX: usize = 12;
/// Modes with |I|² ≤ this are summed exactly before expanding the rest.
pub const DEFAULT_SHELL_RADIUS_SQ: u64 = 8;
/// Probe offsets for pole fitting; alternate entries form the two disjoint
/// confirmation sets.
pub const DEFAULT_PROBE_RADII: [f64; 4] = [1e-2, 5e-3, 2e-3, 1e-3];

// lattice-point budget for direct sums when no cutoff is given
const DIRECT_POINT_BUDGET: f64 = 2e7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZetaMethod {
    DirectSum,
    Continued,
    BinomialSum,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ZetaEvaluation<T> {
    pub argument: Complex<T>,
    pub value: Complex<T>,
    pub method: ZetaMethod,
    pub error_estimate: T,
    pub terms_used: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PoleReport<T> {
    pub location: T,
    /// Real-axis fit, so the imaginary part is zero.
    pub fitted_residue: Complex<T>,
    /// max |value − model| / max |value| over the probe points.
    pub fit_residual: T,
    pub predicted_location: T,
    pub location_error: T,
    /// |a₁ − a₂|/|a| between the two disjoint probe sets, when available.
    pub residue_spread: Option<T>,
    pub confirmed: bool,
}

fn c<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

// t^w for real t > 0
fn rpow<T: Real>(t: T, w: Complex<T>) -> Complex<T> {
    (w * t.ln()).exp()
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::UnsupportedDimension { n, min: 1, max: usize::MAX })
    } else {
        Ok(())
    }
}

fn spinor<T: Real>(n: usize) -> T {
    T::of_usize(1usize << (n / 2))
}

/// π^{−s/2}Γ(s/2)Z_n(s) via the theta integral; (value, abs error, evaluations).
fn completed_epstein<T: Real>(s: Complex<T>, n: usize) -> Result<(Complex<T>, T, usize)> {
    let nr = T::of_usize(n);
    let e1 = s * T::half() - c(T::one());
    let e2 = (c(nr) - s) * T::half() - c(T::one());
    let f = |t: T| (rpow(t, e1) + rpow(t, e2)) * theta_sum_minus_one(t, n);
    let p = e1.re.max(e2.re);
    // ∫_T^∞ of the integrand: Θ_n − 1 ≤ 4n e^{−πt} for t ≥ 1
    let tail = |t: T| {
        let den = T::PI() - p.max(T::zero()) / t;
        if den <= T::zero() {
            T::infinity()
        } else {
            T::lit(8.0) * nr * (-T::PI() * t).exp() * t.powf(p) / den
        }
    };
    let poles = c(T::two()) / (s - c(nr)) - c(T::two()) / s;
    let q = Integrator::new((T::epsilon() * T::lit(500.0)).max(T::lit(1e-13)));
    let mut acc = Complex::new(T::zero(), T::zero());
    let mut err = T::zero();
    let mut evals = 0;
    let (mut lo, mut hi) = (T::one(), T::lit(4.0));
    loop {
        let r = q.integrate(f, lo, hi)?;
        acc = acc + r.value;
        err += r.abs_error;
        evals += r.evaluations;
        let scale = (acc + poles).norm().max(acc.norm());
        if tail(hi) <= T::epsilon() * T::lit(0.01) * scale || hi > T::lit(1e4) {
            err += tail(hi);
            break;
        }
        lo = hi;
        hi = hi * T::two();
    }
    Ok((acc + poles, err, evals))
}

// continued Z_n(s) without the pole guard at s = 0 (Z_n(0) = −1)
fn epstein_continued<T: Real>(s: Complex<T>, n: usize) -> Result<(Complex<T>, T, usize)> {
    if s.norm() < T::lit(POLE_GUARD) {
        return Ok((c(-T::one()), T::epsilon(), 0));
    }
    if (s - c(T::of_usize(n))).norm() < T::lit(POLE_GUARD) {
        return Err(Error::AtPole(s.re.as_f64()));
    }
    let (lam, err, evals) = completed_epstein(s, n)?;
    let half = s * T::half();
    let factor = (half * T::PI().ln()).exp() * rgamma_complex(half);
    let value = lam * factor;
    let rounding = T::epsilon() * T::lit(64.0) * (value.norm() + factor.norm() * T::two() / (s - c(T::of_usize(n))).norm());
    Ok((value, err * factor.norm() + rounding, evals))
}

/// Epstein lattice zeta Z_n(s) = Σ'_{I∈Zⁿ} |I|^{−s}, analytically continued.
pub fn epstein_zeta<T: Real>(s: Complex<T>, n: usize) -> Result<ZetaEvaluation<T>> {
    check_n(n)?;
    if s.norm() < T::lit(POLE_GUARD) {
        return Err(Error::AtPole(0.0));
    }
    let (value, error_estimate, terms_used) = epstein_continued(s, n)?;
    Ok(ZetaEvaluation {
        argument: s,
        value,
        method: ZetaMethod::Continued,
        error_estimate,
        terms_used,
    })
}

/// Multiplicities r_n(m) of |I|² = m for 0 ≤ m ≤ max_sq.
fn shell_counts(n: usize, max_sq: u64) -> Vec<u64> {
    let mut counts = vec![0u64; max_sq as usize + 1];
    fn fill(dims: usize, partial: u64, max_sq: u64, counts: &mut [u64]) {
        let r = ((max_sq - partial) as f64).sqrt() as i64 + 1;
        for x in -r..=r {
            let m = partial + (x * x) as u64;
            if m > max_sq {
                continue;
            }
            if dims == 1 {
                counts[m as usize] += 1;
            } else {
                fill(dims - 1, m, max_sq, counts);
            }
        }
    }
    fill(n, 0, max_sq, &mut counts);
    counts
}

// Σ_{|I|>R} g(|I|) ≤ C·V(1+h/ρ₀)^{n−1}ρ₀^{n−σ}/(σ−n) for g(r) ≤ C r^{−σ},
// with h = √n/2 and ρ₀ = R − 2h (cube-to-ball comparison)
fn ball_tail_bound<T: Real>(n: usize, radius: T, sigma: T, constant: T) -> T {
    let nr = T::of_usize(n);
    let h = nr.sqrt() * T::half();
    let rho = radius - T::two() * h;
    if rho <= T::zero() || sigma <= nr {
        return T::infinity();
    }
    constant * sphere_volume::<T>(n) * (T::one() + h / rho).powf(nr - T::one()) * rho.powf(nr - sigma) / (sigma - nr)
}

fn default_radius(n: usize) -> f64 {
    let v = sphere_volume::<f64>(n) / n as f64;
    (DIRECT_POINT_BUDGET / v).powf(1.0 / n as f64).min(1e7)
}

/// Σ over 0 < |I| ≤ R of term(|I|²)·multiplicity, summed from the far shells in.
fn ball_sum<T: Real>(n: usize, radius: T, term: impl Fn(T) -> Complex<T>) -> Result<(Complex<T>, usize)> {
    let mut acc = Complex::new(T::zero(), T::zero());
    if n == 1 {
        // the shells are the squares: no need for a count table
        let r = radius.floor().to_u64().unwrap_or(0);
        for x in (1..=r).rev() {
            let xf = T::lit(x as f64);
            acc = acc + term(xf * xf) * T::two();
        }
        return Ok((acc, 2 * r as usize));
    }
    let max_sq = (radius * radius).floor().to_u64().unwrap_or(0);
    if max_sq > 400_000_000 {
        return Err(Error::InvalidParameters(format!(
            "cutoff {} too large for a direct sum in dimension {n}",
            radius.as_f64()
        )));
    }
    let counts = shell_counts(n, max_sq);
    let mut terms = 0usize;
    for m in (1..counts.len()).rev() {
        if counts[m] > 0 {
            acc = acc + term(T::of_usize(m)) * T::lit(counts[m] as f64);
            terms += counts[m] as usize;
        }
    }
    Ok((acc, terms))
}

/// Z_n(s) by summation over the Euclidean ball |I| ≤ radius, with a rigorous
/// tail bound. Requires Re s > n + 0.1.
pub fn lattice_zeta_direct<T: Real>(s: Complex<T>, n: usize, radius: T) -> Result<ZetaEvaluation<T>> {
    check_n(n)?;
    let nr = T::of_usize(n);
    if !(s.re > nr + T::lit(0.1)) {
        return Err(Error::OutsideConvergence(format!(
            "lattice sum needs Re s > {}, got {}",
            n as f64 + 0.1,
            s.re.as_f64()
        )));
    }
    let (value, terms_used) = ball_sum(n, radius, |m| rpow(m, -s * T::half()))?;
    let bound = ball_tail_bound(n, radius, s.re, T::one());
    Ok(ZetaEvaluation {
        argument: s,
        value,
        method: ZetaMethod::DirectSum,
        error_estimate: bound + T::epsilon() * T::of_usize(terms_used).sqrt() * value.norm(),
        terms_used,
    })
}

/// Spectral zeta of |D| on the canonical torus: 2^⌊n/2⌋·Z_n(z).
///
/// `lattice_free` selects the theta-integral continuation; otherwise the
/// eigenvalue sum is taken directly (convergent region only).
pub fn zeta_abs_dirac<T: Real>(z: Complex<T>, n: usize, lattice_free: bool) -> Result<ZetaEvaluation<T>> {
    check_n(n)?;
    let mut e = if lattice_free {
        let (value, err, evals) = epstein_continued(z, n)?;
        ZetaEvaluation {
            argument: z,
            value,
            method: ZetaMethod::Continued,
            error_estimate: err,
            terms_used: evals,
        }
    } else {
        lattice_zeta_direct(z, n, T::lit(default_radius(n)))?
    };
    let g = spinor::<T>(n);
    e.value = e.value * g;
    e.error_estimate = e.error_estimate * g;
    Ok(e)
}

/// Residue of zeta_abs_dirac at z = n: 2^⌊n/2⌋·2π^{n/2}/Γ(n/2).
pub fn canonical_residue<T: Real>(n: usize) -> T {
    spinor::<T>(n) * sphere_volume::<T>(n)
}

/// Deformed spectral zeta by the binomial expansion, k = 0..=k_max.
pub fn zeta_deformed<T: Real>(z: Complex<T>, params: &DeformationParams<T>, k_max: usize) -> Result<ZetaEvaluation<T>> {
    zeta_deformed_with_shells(z, params, k_max, DEFAULT_SHELL_RADIUS_SQ)
}

/// As [`zeta_deformed`], but with the modes 0 < |I|² ≤ `shell_radius_sq`
/// summed exactly and only the remainder expanded. `shell_radius_sq = 0`
/// gives the plain Σ_k binom(αz,k)·ζ_|D|(2(k−(α−1/2)z)).
///
/// Splitting changes only an entire function of z, and makes the expansion
/// ratio (1+R)^{−1} instead of 1 on the innermost shell.
pub fn zeta_deformed_with_shells<T: Real>(
    z: Complex<T>,
    params: &DeformationParams<T>,
    k_max: usize,
    shell_radius_sq: u64,
) -> Result<ZetaEvaluation<T>> {
    let n = params.n();
    let nr = params.n_real();
    let a = params.alpha();
    let one_minus = T::one() - T::two() * a;
    let counts = shell_counts(n, shell_radius_sq);
    let shells: Vec<(T, T)> = counts
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &k)| k > 0)
        .map(|(m, &k)| (T::of_usize(m), T::lit(k as f64)))
        .collect();

    // exact inner part: Σ λ_I^{−z} = Σ |I|^{−z}(1+|I|²)^{αz}
    let mut value = Complex::new(T::zero(), T::zero());
    for &(m, mult) in &shells {
        value = value + rpow(m, -z * T::half()) * rpow(T::one() + m, z * a) * mult;
    }
    let mut error = T::epsilon() * T::lit(16.0) * value.norm();
    let mut terms_used = shells.len();
    let mut last = T::zero();
    for k in 0..=k_max {
        let b = generalized_binomial_complex(z * a, k);
        let s = c(T::two() * T::of_usize(k)) + z * one_minus;
        if b.norm() == T::zero() {
            last = T::zero();
            continue;
        }
        if (s - c(nr)).norm() < T::lit(POLE_GUARD) {
            return Err(Error::AtPole(z.re.as_f64()));
        }
        let (zk, ek, evals) = epstein_continued(s, n)?;
        let mut rem = zk;
        for &(m, mult) in &shells {
            rem = rem - rpow(m, -s * T::half()) * mult;
        }
        let term = b * rem;
        value = value + term;
        error += b.norm() * (ek + T::epsilon() * T::lit(16.0) * zk.norm());
        last = term.norm();
        terms_used += evals;
    }
    let g = spinor::<T>(n);
    Ok(ZetaEvaluation {
        argument: z,
        value: value * g,
        method: ZetaMethod::BinomialSum,
        error_estimate: (error + T::two() * last) * g,
        terms_used,
    })
}

/// Direct Dirichlet series 2^⌊n/2⌋ Σ'_{|I|≤cutoff} λ_I^{−z} with a tail bound.
/// Requires α < 1/2 and Re z > n/(1−2α) + 0.1.
pub fn zeta_deformed_direct<T: Real>(z: Complex<T>, params: &DeformationParams<T>, mode_cutoff: T) -> Result<ZetaEvaluation<T>> {
    let n = params.n();
    let a = params.alpha();
    if a >= T::half() {
        return Err(Error::OutsideConvergence("direct sum needs alpha < 1/2".into()));
    }
    let edge = params.spectral_dimension() + T::lit(0.1);
    if !(z.re > edge) {
        return Err(Error::OutsideConvergence(format!(
            "direct sum needs Re z > {}, got {}",
            edge.as_f64(),
            z.re.as_f64()
        )));
    }
    let (sum, terms_used) = ball_sum(n, mode_cutoff, |m| rpow(m, -z * T::half()) * rpow(T::one() + m, z * a))?;
    // λ ≥ 2^{−α}|I|^{1−2α} for α ≥ 0 and λ ≥ |I|^{1−2α} for α < 0
    let sigma = z.re * (T::one() - T::two() * a);
    let constant = T::two().powf(a.max(T::zero()) * z.re);
    let bound = ball_tail_bound(n, mode_cutoff, sigma, constant);
    let g = spinor::<T>(n);
    Ok(ZetaEvaluation {
        argument: z,
        value: sum * g,
        method: ZetaMethod::DirectSum,
        error_estimate: (bound + T::epsilon() * T::of_usize(terms_used).sqrt() * sum.norm()) * g,
        terms_used,
    })
}

/// z_k = (n − 2k)/(1 − 2α) for k = 0..=k_max.
pub fn dimension_spectrum<T: Real>(params: &DeformationParams<T>, k_max: usize) -> Vec<T> {
    let den = T::one() - T::two() * params.alpha();
    (0..=k_max)
        .map(|k| (params.n_real() - T::two() * T::of_usize(k)) / den)
        .collect()
}

/// Residue of the deformed zeta at z_k: binom(αz_k, k)·2^⌊n/2⌋·V_{S^{n−1}}/(1−2α).
/// Zero when αz_k is a nonnegative integer below k (e.g. n = 2, k = 1).
pub fn predicted_residue<T: Real>(params: &DeformationParams<T>, k: usize) -> T {
    let den = T::one() - T::two() * params.alpha();
    let zk = (params.n_real() - T::two() * T::of_usize(k)) / den;
    generalized_binomial_complex(c(params.alpha() * zk), k).re * canonical_residue::<T>(params.n()) / den
}

struct PoleFit<T> {
    offset: T,
    residue: T,
    residual: T,
}

// v(u) ≈ a/(u−δ) + b + c·u, linearised as v·u = p₀ + p₁u + p₂u² + p₃v
fn fit_pole<T: Real>(points: &[(T, T)]) -> Result<PoleFit<T>> {
    let rows: Vec<Vec<T>> = points.iter().map(|&(u, v)| vec![T::one(), u, u * u, v]).collect();
    let rhs: Vec<T> = points.iter().map(|&(u, v)| u * v).collect();
    let p = least_squares(&rows, &rhs)?;
    let delta = p[3];
    let cc = p[2];
    let b = p[1] + cc * delta;
    let a = p[0] + b * delta;
    let vmax = points.iter().fold(T::zero(), |m, &(_, v)| m.max(v.abs()));
    let misfit = points
        .iter()
        .fold(T::zero(), |m, &(u, v)| m.max((a / (u - delta) + b + cc * u - v).abs()));
    Ok(PoleFit {
        offset: delta,
        residue: a,
        residual: if vmax > T::zero() { misfit / vmax } else { misfit },
    })
}

/// Fit value(z) ≈ a/(z−z₀) + b + c(z − z_guess) on z_guess ± r for each probe
/// radius. With ≥ 4 radii the alternate radii form two disjoint sets whose
/// residues must agree to 1% for the report to be confirmed.
pub fn locate_pole<T: Real, F>(mut evaluator: F, z_guess: T, probe_radii: &[T]) -> Result<PoleReport<T>>
where
    F: FnMut(T) -> Result<T>,
{
    if probe_radii.len() < 2 || probe_radii.iter().any(|r| !(*r > T::zero())) {
        return Err(Error::InvalidParameters("need at least two positive probe radii".into()));
    }
    let mut samples = Vec::with_capacity(probe_radii.len());
    for &r in probe_radii {
        samples.push([(r, evaluator(z_guess + r)?), (-r, evaluator(z_guess - r)?)]);
    }
    let all: Vec<(T, T)> = samples.iter().flatten().copied().collect();
    let rmax = probe_radii.iter().fold(T::zero(), |m, &r| m.max(r));
    let no_pole = |a: T| Error::NoPoleDetected {
        near: z_guess.as_f64(),
        residue: a.as_f64(),
    };
    let fit = fit_pole(&all).map_err(|_| no_pole(T::zero()))?;
    if !(fit.residue.abs() >= T::lit(1e-8)) || !(fit.offset.abs() <= T::lit(10.0) * rmax) {
        return Err(no_pole(fit.residue));
    }
    let mut spread = None;
    if probe_radii.len() >= 4 {
        let pick = |parity: usize| -> Vec<(T, T)> {
            samples.iter().enumerate().filter(|(i, _)| i % 2 == parity).flat_map(|(_, s)| *s).collect()
        };
        if let (Ok(f1), Ok(f2)) = (fit_pole(&pick(0)), fit_pole(&pick(1))) {
            spread = Some((f1.residue - f2.residue).abs() / fit.residue.abs());
        }
    }
    let location = z_guess + fit.offset;
    Ok(PoleReport {
        location,
        fitted_residue: c(fit.residue),
        fit_residual: fit.residual,
        predicted_location: z_guess,
        location_error: fit.offset.abs(),
        residue_spread: spread,
        confirmed: spread.map_or(false, |s| s <= T::lit(0.01)),
    })
}

fn default_radii<T: Real>() -> Vec<T> {
    DEFAULT_PROBE_RADII.iter().map(|&r| T::lit(r)).collect()
}

/// Pole of the deformed zeta predicted at z_k, probed with the default radii.
pub fn locate_deformed_pole<T: Real>(params: &DeformationParams<T>, k: usize, k_max: usize) -> Result<PoleReport<T>> {
    let zk = dimension_spectrum(params, k)[k];
    locate_pole(|z| Ok(zeta_deformed(c(z), params, k_max)?.value.re), zk, &default_radii())
}

/// Pole of the canonical zeta at z = n.
pub fn locate_canonical_pole<T: Real>(n: usize) -> Result<PoleReport<T>> {
    locate_pole(|z| Ok(zeta_abs_dirac(c(z), n, true)?.value.re), T::of_usize(n), &default_radii())
}
