//! Special functions: Γ and 1/Γ (real and complex), log-Γ, generalized
//! binomials, Gauss ₂F₁ on z < 1, Jacobi theta sums and sphere volumes.

use crate::quad::Integrator;
use crate::{Error, Real, Result};
use num_complex::Complex;
use serde::Serialize;

/// A special-function value together with a bound on its error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EvalResult<T> {
    pub value: Complex<T>,
    /// Upper bound on the absolute error (truncation plus a rounding allowance).
    pub abs_error_estimate: T,
    pub terms_used: usize,
}

impl<T: Real> EvalResult<T> {
    pub fn real(value: T, abs_error_estimate: T, terms_used: usize) -> Self {
        EvalResult {
            value: Complex::new(value, T::zero()),
            abs_error_estimate,
            terms_used,
        }
    }

    /// Real part of the value.
    pub fn re(&self) -> T {
        self.value.re
    }
}

// Lanczos approximation, g = 7, nine terms (P. Godfrey's coefficient set, as
// used in Numerical Recipes 3rd ed. and many libm-style ports). Relative
// accuracy about 2e-15 on the right half-plane.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// sin(πx), exact zeros at the integers.
pub fn sin_pi<T: Real>(x: T) -> T {
    let mut r = x - T::two() * (x * T::half()).round();
    if r > T::half() {
        r = T::one() - r;
    } else if r < -T::half() {
        r = -T::one() - r;
    }
    (T::PI() * r).sin()
}

/// cos(πx), exact zeros at the half-integers.
pub fn cos_pi<T: Real>(x: T) -> T {
    sin_pi(x + T::half())
}

fn sin_pi_complex<T: Real>(z: Complex<T>) -> Complex<T> {
    let py = T::PI() * z.im;
    Complex::new(sin_pi(z.re) * py.cosh(), cos_pi(z.re) * py.sinh())
}

pub(crate) fn is_nonpositive_integer<T: Real>(x: T) -> bool {
    x <= T::zero() && x == x.round()
}

fn lanczos_real<T: Real>(x: T) -> T {
    let z = x - T::one();
    let mut a = T::lit(LANCZOS[0]);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += T::lit(c) / (z + T::of_usize(k));
    }
    let t = z + T::lit(LANCZOS_G + 0.5);
    // split the power so t^{z+1/2} does not overflow before e^{-t} compensates
    let p = t.powf((z + T::half()) * T::half());
    (T::two() * T::PI()).sqrt() * p * ((-t).exp() * p) * a
}

fn lanczos_complex<T: Real>(x: Complex<T>) -> Complex<T> {
    let z = x - T::one();
    let mut a = Complex::new(T::lit(LANCZOS[0]), T::zero());
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        a = a + Complex::new(T::lit(c), T::zero()) / (z + T::of_usize(k));
    }
    let t = z + T::lit(LANCZOS_G + 0.5);
    let p = t.powc((z + T::half()) * T::half());
    p * ((-t).exp() * p) * a * (T::two() * T::PI()).sqrt()
}

fn gamma_rel_bound<T: Real>(mag: T) -> T {
    T::epsilon() * (T::lit(32.0) + T::two() * mag * (T::two() + mag).ln())
}

/// Γ(x) for real x off the poles.
pub fn gamma<T: Real>(x: T) -> Result<EvalResult<T>> {
    if is_nonpositive_integer(x) {
        return Err(Error::PoleArgument {
            function: "Gamma".into(),
            argument: x.as_f64(),
        });
    }
    let v = if x >= T::half() {
        lanczos_real(x)
    } else {
        T::PI() / (sin_pi(x) * lanczos_real(T::one() - x))
    };
    Ok(EvalResult::real(v, v.abs() * gamma_rel_bound(x.abs()), LANCZOS.len()))
}

/// Γ(z) for complex z off the poles.
pub fn gamma_complex<T: Real>(z: Complex<T>) -> Result<EvalResult<T>> {
    if z.im == T::zero() && is_nonpositive_integer(z.re) {
        return Err(Error::PoleArgument {
            function: "Gamma".into(),
            argument: z.re.as_f64(),
        });
    }
    let v = if z.re >= T::half() {
        lanczos_complex(z)
    } else {
        let one = Complex::new(T::one(), T::zero());
        Complex::new(T::PI(), T::zero()) / (sin_pi_complex(z) * lanczos_complex(one - z))
    };
    Ok(EvalResult {
        value: v,
        abs_error_estimate: v.norm() * gamma_rel_bound(z.norm()),
        terms_used: LANCZOS.len(),
    })
}

/// 1/Γ(x), an entire function; exactly zero at the nonpositive integers.
pub fn rgamma<T: Real>(x: T) -> T {
    if is_nonpositive_integer(x) {
        T::zero()
    } else if x >= T::half() {
        T::one() / lanczos_real(x)
    } else {
        sin_pi(x) * lanczos_real(T::one() - x) / T::PI()
    }
}

/// 1/Γ(z) for complex z.
pub fn rgamma_complex<T: Real>(z: Complex<T>) -> Complex<T> {
    if z.im == T::zero() {
        return Complex::new(rgamma(z.re), T::zero());
    }
    if z.re >= T::half() {
        lanczos_complex(z).inv()
    } else {
        let one = Complex::new(T::one(), T::zero());
        sin_pi_complex(z) * lanczos_complex(one - z) / T::PI()
    }
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) {
        return Err(Error::DomainError("ln_gamma needs x > 0".into()));
    }
    if x < T::half() {
        return Ok((T::PI() / (sin_pi(x) * lanczos_real(T::one() - x))).ln());
    }
    let z = x - T::one();
    let mut a = T::lit(LANCZOS[0]);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += T::lit(c) / (z + T::of_usize(k));
    }
    let t = z + T::lit(LANCZOS_G + 0.5);
    Ok(T::half() * (T::two() * T::PI()).ln() + (z + T::half()) * t.ln() - t + a.ln())
}

/// a(a−1)⋯(a−k+1)/k!
pub fn generalized_binomial<T: Real>(a: T, k: usize) -> T {
    let mut r = T::one();
    for j in 0..k {
        r = r * (a - T::of_usize(j)) / T::of_usize(j + 1);
    }
    r
}

pub fn generalized_binomial_complex<T: Real>(a: Complex<T>, k: usize) -> Complex<T> {
    let mut r = Complex::new(T::one(), T::zero());
    for j in 0..k {
        r = r * (a - T::of_usize(j)) / T::of_usize(j + 1);
    }
    r
}

const SERIES_CAP: usize = 1_000_000;
// distance of c−a−b from an integer below which the 1−z connection is not used
const CONNECTION_GUARD: f64 = 1e-4;

struct Partial<T> {
    value: T,
    err: T,
    terms: usize,
}

fn hyp_series<T: Real>(a: T, b: T, c: T, z: T) -> Result<Partial<T>> {
    let mut term = T::one();
    let mut sum = T::one();
    let mut abs_sum = T::one();
    let (aa, ab, ac) = (a.abs(), b.abs(), c.abs());
    let az = z.abs();
    let mut k = 0usize;
    loop {
        let kf = T::of_usize(k);
        term = term * (a + kf) * (b + kf) / ((c + kf) * (kf + T::one())) * z;
        k += 1;
        sum += term;
        abs_sum += term.abs();
        if term == T::zero() {
            // a or b is a nonpositive integer: polynomial, summed exactly
            break;
        }
        let kf = T::of_usize(k);
        if kf > ac {
            // sup_{j≥k} |t_{j+1}/t_j| ≤ |z|·max(1,(k+|a|)/(k+1))·(k+|b|)/(k−|c|)
            let rho = az * T::one().max((kf + aa) / (kf + T::one())) * (kf + ab) / (kf - ac);
            if rho < T::one() {
                let tail = term.abs() * rho / (T::one() - rho);
                if tail <= T::epsilon() * sum.abs() || tail == T::zero() {
                    return Ok(Partial {
                        value: sum,
                        err: tail + T::lit(4.0) * T::epsilon() * abs_sum,
                        terms: k + 1,
                    });
                }
            }
        }
        if k >= SERIES_CAP {
            return Err(Error::NonConvergent {
                what: "hypergeometric series".into(),
                achieved: term.abs().as_f64(),
                requested: (T::epsilon() * sum.abs()).as_f64(),
            });
        }
    }
    Ok(Partial {
        value: sum,
        err: T::lit(4.0) * T::epsilon() * abs_sum,
        terms: k + 1,
    })
}

// 1/2 < z < 1 via the 1−z connection formula.
fn hyp_connection<T: Real>(a: T, b: T, c: T, z: T) -> Result<Partial<T>> {
    let m = c - a - b;
    if (m - m.round()).abs() < T::lit(CONNECTION_GUARD) {
        return hyp_series(a, b, c, z);
    }
    let w = T::one() - z;
    let f1 = hyp_series(a, b, T::one() - m, w)?;
    let f2 = hyp_series(c - a, c - b, T::one() + m, w)?;
    let gc = gamma(c)?.re();
    let a1 = gc * gamma(m)?.re() * rgamma(c - a) * rgamma(c - b);
    let a2 = gc * gamma(-m)?.re() * rgamma(a) * rgamma(b) * w.powf(m);
    let t1 = a1 * f1.value;
    let t2 = a2 * f2.value;
    let mag = a.abs() + b.abs() + c.abs() + m.abs();
    let rel = T::lit(6.0) * gamma_rel_bound(mag) + T::lit(16.0) * T::epsilon();
    Ok(Partial {
        value: t1 + t2,
        err: a1.abs() * f1.err + a2.abs() * f2.err + (t1.abs() + t2.abs()) * rel,
        terms: f1.terms + f2.terms,
    })
}

fn hyp_unit<T: Real>(a: T, b: T, c: T, z: T) -> Result<Partial<T>> {
    if z.abs() <= T::half() {
        hyp_series(a, b, c, z)
    } else {
        hyp_connection(a, b, c, z)
    }
}

/// Gauss ₂F₁(a, b; c; z) for real z < 1.
///
/// Direct series for |z| ≤ 1/2, Pfaff z → z/(z−1) for z < −1/2, and the
/// 1−z connection formula for 1/2 < z < 1. When c−a−b is within 1e−4 of an
/// integer the connection formula is ill-conditioned and the (slower) direct
/// series is used instead.
pub fn hyp2f1<T: Real>(a: T, b: T, c: T, z: T) -> Result<EvalResult<T>> {
    if is_nonpositive_integer(c) {
        return Err(Error::DegenerateC { c: c.as_f64() });
    }
    if !(z < T::one()) {
        return Err(Error::DomainError(format!(
            "hyp2f1 requires z < 1, got {}",
            z.as_f64()
        )));
    }
    if z == T::zero() {
        return Ok(EvalResult::real(T::one(), T::zero(), 1));
    }
    let p = if z >= -T::half() {
        hyp_unit(a, b, c, z)?
    } else {
        let w = z / (z - T::one());
        let inner = hyp_unit(a, c - b, c, w)?;
        let lz = (T::one() - z).ln();
        let s = (-a * lz).exp();
        let v = s * inner.value;
        Partial {
            value: v,
            err: s * inner.err + v.abs() * T::lit(4.0) * T::epsilon() * (T::one() + (a * lz).abs()),
            terms: inner.terms,
        }
    };
    Ok(EvalResult::real(p.value, p.err, p.terms))
}

/// (1/Γ(s))∫₀^∞ τ^{s−1} e^{−τA} dτ by quadrature; equals A^{−s}.
///
/// Split at τ = 1/A: the head uses τ = (u)^{1/s}-type substitution for the
/// τ^{s−1} endpoint, the tail τ = e^u. `tol` is relative.
pub fn power_via_integral<T: Real>(big_a: T, s: T, tol: T) -> Result<T> {
    if !(big_a > T::zero()) || !(s > T::zero()) {
        return Err(Error::DomainError(
            "power_via_integral needs A > 0 and s > 0".into(),
        ));
    }
    let q = Integrator::new(tol * T::lit(0.05));
    let split = T::one() / big_a;
    let head = q.integrate_left_power(|t| Ok((-t * big_a).exp()), T::zero(), split, s)?;
    // pick τ_max so the neglected tail is far below tolerance
    let scale = gamma(s)?.re() * big_a.powf(-s);
    let mut tmax = T::lit(4.0) * split;
    let tail_bound = |tm: T| {
        let lead = tm.powf(s - T::one()) * (-big_a * tm).exp() / big_a;
        let corr = T::one() - (s - T::one()).max(T::zero()) / (big_a * tm);
        if corr > T::zero() {
            lead / corr
        } else {
            T::infinity()
        }
    };
    while tail_bound(tmax) > T::lit(1e-3) * tol * scale {
        tmax = tmax * T::two();
    }
    let tail = q.integrate(
        |u: T| {
            let t = u.exp();
            (s * u - big_a * t).exp()
        },
        split.ln(),
        tmax.ln(),
    )?;
    let total = head.value + tail.value;
    let err = head.abs_error + tail.abs_error + tail_bound(tmax);
    if err > tol * total.abs() {
        return Err(Error::NonConvergent {
            what: "power_via_integral".into(),
            achieved: (err / total.abs()).as_f64(),
            requested: tol.as_f64(),
        });
    }
    Ok(total * rgamma(s))
}

// Σ_{k≥1} e^{−πtk²} with a geometric tail bound; t ≥ 1/2 expected.
fn theta_tail<T: Real>(t: T) -> T {
    let mut s = T::zero();
    let mut k = 1usize;
    loop {
        let kf = T::of_usize(k);
        let term = (-T::PI() * t * kf * kf).exp();
        s += term;
        // Σ_{j>k} e^{−πtj²} ≤ e^{−πt(k+1)²}/(1 − e^{−2πt(k+1)})
        let k1 = kf + T::one();
        let bound = (-T::PI() * t * k1 * k1).exp() / (T::one() - (-T::two() * T::PI() * t * k1).exp());
        if bound <= T::epsilon() * T::lit(0.01) * s || k > 10_000 {
            return s;
        }
        k += 1;
    }
}

/// θ(t) − 1 = 2Σ_{k≥1}e^{−πtk²}, accurate in relative terms for large t.
fn theta1_minus_one<T: Real>(t: T) -> T {
    if t >= T::one() {
        T::two() * theta_tail(t)
    } else {
        // Jacobi inversion θ(t) = t^{-1/2} θ(1/t)
        let u = T::one() / t;
        u.sqrt() * (T::one() + T::two() * theta_tail(u)) - T::one()
    }
}

/// Θ_n(t) = Σ_{I∈Zⁿ} e^{−πt|I|²} = θ(t)ⁿ.
pub fn theta_sum<T: Real>(t: T, n: usize) -> T {
    (T::one() + theta1_minus_one(t)).powi(n as i32)
}

/// Θ_n(t) − 1 without cancellation for large t.
pub fn theta_sum_minus_one<T: Real>(t: T, n: usize) -> T {
    let d = theta1_minus_one(t);
    (T::of_usize(n) * d.ln_1p()).exp_m1()
}

/// Surface volume of the unit sphere S^{n−1}: 2π^{n/2}/Γ(n/2).
pub fn sphere_volume<T: Real>(n: usize) -> T {
    let h = T::of_usize(n) * T::half();
    T::two() * T::PI().powf(h) * rgamma(h)
}
