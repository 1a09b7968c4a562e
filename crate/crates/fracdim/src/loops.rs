//! One-loop integrals with the deformed propagator (M²+p²)^α/(p²+m̃²):
//! the tadpole and the two-propagator bubble, each by closed hypergeometric
//! form, Feynman-parameter quadrature and direct momentum quadrature, plus
//! their α → 0 dimensional-regularisation limits.
//!
//! Everything is dimensionful: M is an explicit input.

use crate::params::DeformationParams;
use crate::quad::Integrator;
use crate::specfun::{gamma, hyp2f1, rgamma, sphere_volume};
use crate::{Error, Real, Result};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LoopMethod {
    ClosedForm,
    FeynmanQuadrature,
    DirectQuadrature,
    DimregLimit,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LoopResult<T> {
    pub value: T,
    pub method: LoopMethod,
    pub error_estimate: T,
    pub params: DeformationParams<T>,
    /// k², bubble only.
    pub external_momentum_sq: Option<T>,
}

/// Convention for d/2 in the bubble.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HalfDimension {
    /// d/2 = n/2 + 2α, what the Schwinger-parameter z-integral produces.
    #[default]
    FromZIntegral,
    /// d/2 = n/2 − 2α.
    MinusShift,
}

impl HalfDimension {
    pub fn value<T: Real>(self, n: usize, alpha: T) -> T {
        let h = T::of_usize(n) * T::half();
        match self {
            HalfDimension::FromZIntegral => h + T::two() * alpha,
            HalfDimension::MinusShift => h - T::two() * alpha,
        }
    }
}

/// Integration region for the four-parameter Feynman representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FeynmanRegion {
    /// The image of the positive orthant: w ∈ [max(0, y−x), min(y, 1−x)].
    Simplex,
    /// 0 ≤ w ≤ y ≤ x ≤ 1.
    Nested,
}

/// m² = M²αn/(1−2α).
pub fn mass_squared<T: Real>(params: &DeformationParams<T>) -> T {
    params.mass_squared()
}

fn positive_mass<T: Real>(params: &DeformationParams<T>) -> Result<T> {
    let m = params.effective_mass_squared();
    if m > T::zero() {
        Ok(m)
    } else {
        Err(Error::NegativeMassSquared(m.as_f64()))
    }
}

fn result<T: Real>(
    value: T,
    method: LoopMethod,
    err: T,
    params: &DeformationParams<T>,
    k_sq: Option<T>,
) -> LoopResult<T> {
    // quadrature results always carry a nonzero estimate
    let floor = if method == LoopMethod::ClosedForm {
        T::zero()
    } else {
        T::epsilon() * value.abs()
    };
    LoopResult {
        value,
        method,
        error_estimate: err.max(floor),
        params: *params,
        external_momentum_sq: k_sq,
    }
}

fn half_n<T: Real>(n: usize) -> T {
    T::of_usize(n) * T::half()
}

/// Closed form with explicit mass inputs; any α with |α| < 1, α ≠ 0, and any
/// m̃² > 0 (no coupling between m̃² and α is assumed).
///
/// −π^{n/2}Γ(1−n/2−α)/(Γ(−α)α)·(M²)^{α+n/2−1}·₂F₁(1, 1−α−n/2; 1−α; 1−m̃²/M²),
/// using Γ(−α)α = −Γ(1−α).
pub fn tadpole_closed_with_mass<T: Real>(n: usize, alpha: T, mass_scale: T, m_tilde_sq: T) -> Result<(T, T)> {
    let g = gamma(T::one() - half_n::<T>(n) - alpha)?;
    if alpha == T::zero() {
        return Err(Error::DomainError("alpha = 0 is the undeformed limit".into()));
    }
    if !(m_tilde_sq > T::zero()) {
        return Err(Error::NegativeMassSquared(m_tilde_sq.as_f64()));
    }
    let m2 = mass_scale * mass_scale;
    let f = hyp2f1(
        T::one(),
        T::one() - alpha - half_n(n),
        T::one() - alpha,
        T::one() - m_tilde_sq / m2,
    )?;
    let pre = T::PI().powf(half_n(n)) * rgamma(T::one() - alpha) * m2.powf(alpha + half_n::<T>(n) - T::one());
    let value = pre * g.re() * f.re();
    let err = (pre * g.re()).abs() * f.abs_error_estimate + (pre * f.re()).abs() * g.abs_error_estimate
        + T::lit(8.0) * T::epsilon() * value.abs();
    Ok((value, err))
}

pub fn tadpole_closed<T: Real>(params: &DeformationParams<T>) -> Result<LoopResult<T>> {
    let (v, e) = tadpole_closed_with_mass(params.n(), params.alpha(), params.mass_scale(), params.effective_mass_squared())?;
    Ok(result(v, LoopMethod::ClosedForm, e, params, None))
}

/// π^{n/2}Γ(1−n/2−α)/Γ(−α)·∫₀¹(1−x)^{−α−1}[(1−x)M² + x m̃²]^{α+n/2−1}dx, α < 0.
pub fn tadpole_feynman<T: Real>(params: &DeformationParams<T>, tol: T) -> Result<LoopResult<T>> {
    let a = params.alpha();
    if !(a < T::zero()) {
        return Err(Error::DomainError("Feynman-parameter tadpole needs alpha < 0".into()));
    }
    let n = params.n();
    let g = gamma(T::one() - half_n::<T>(n) - a)?;
    let mt = positive_mass(params)?;
    let m2 = params.mass_scale() * params.mass_scale();
    let e = a + half_n::<T>(n) - T::one();
    let q = Integrator::new(tol * T::lit(0.1));
    let r = q.integrate_right_power(|x: T| Ok(((T::one() - x) * m2 + x * mt).powf(e)), T::zero(), T::one(), -a)?;
    let pre = T::PI().powf(half_n(n)) * g.re() * rgamma(-a);
    let value = pre * r.value;
    let err = pre.abs() * r.abs_error + (r.value * T::PI().powf(half_n(n)) * rgamma(-a)).abs() * g.abs_error_estimate;
    Ok(result(value, LoopMethod::FeynmanQuadrature, err, params, None))
}

/// V_{S^{n−1}}∫₀^∞ p^{n−1}(M²+p²)^α/(p²+m̃²)dp, convergent for n + 2α < 2.
pub fn tadpole_direct<T: Real>(params: &DeformationParams<T>, tol: T) -> Result<LoopResult<T>> {
    let n = params.n();
    let a = params.alpha();
    let decay = T::two() - T::of_usize(n) - T::two() * a;
    if !(decay > T::zero()) {
        return Err(Error::OutsideConvergence(format!(
            "tadpole integral needs n + 2 alpha < 2, got {}",
            (T::two() - decay).as_f64()
        )));
    }
    let mt = positive_mass(params)?;
    let m2 = params.mass_scale() * params.mass_scale();
    let split = m2.max(mt).sqrt();
    let q = Integrator::new(tol * T::lit(0.05));
    let head = q.integrate_left_power(
        |p: T| Ok((m2 + p * p).powf(a) / (p * p + mt)),
        T::zero(),
        split,
        T::of_usize(n),
    )?;
    // p = 1/t: p^{n−1}(M²+p²)^α/(p²+m̃²) = p^{−1−γ}(1+M²t²)^α/(1+m̃²t²), γ = 2−n−2α
    let tail = q.integrate_power_tail(
        |t: T| Ok((T::one() + m2 * t * t).powf(a) / (T::one() + mt * t * t)),
        split,
        decay,
    )?;
    let v = sphere_volume::<T>(n);
    Ok(result(
        v * (head.value + tail.value),
        LoopMethod::DirectQuadrature,
        v * (head.abs_error + tail.abs_error),
        params,
        None,
    ))
}

/// π^{n/2}Γ(1−n/2)(m₀²)^{n/2−1}.
pub fn tadpole_dimreg_limit<T: Real>(n: usize, m0_sq: T) -> Result<LoopResult<T>> {
    let g = gamma(T::one() - half_n::<T>(n))?;
    if !(m0_sq > T::zero()) {
        return Err(Error::NegativeMassSquared(m0_sq.as_f64()));
    }
    let value = T::PI().powf(half_n(n)) * g.re() * m0_sq.powf(half_n::<T>(n) - T::one());
    let params = DeformationParams::new(n, T::zero())?.with_m0_sq(m0_sq)?;
    Ok(result(value, LoopMethod::DimregLimit, T::lit(8.0) * T::epsilon() * value.abs(), &params, None))
}

/// Analytic continuation in β of ∫₀¹ x^{β−1} g(x) dx for β > −1, β ≠ 0.
/// For β < 0 the x = 0 value is subtracted: ∫x^{β}(g−g(0))/x dx + g(0)/β.
fn integrate_continued<T: Real, F>(q: &Integrator<T>, mut g: F, beta: T) -> Result<(T, T)>
where
    F: FnMut(T) -> Result<T>,
{
    if beta > T::zero() {
        let r = q.integrate_left_power(g, T::zero(), T::one(), beta)?;
        return Ok((r.value, r.abs_error));
    }
    if !(beta > -T::one()) || beta == T::zero() {
        return Err(Error::DomainError(format!("x-exponent {} outside (-1, 0) ∪ (0, ∞)", beta.as_f64())));
    }
    let g0 = g(T::zero())?;
    let h = T::lit(1e-4);
    let (g1, g2) = (g(h)?, g(T::two() * h)?);
    let slope0 = (T::lit(4.0) * g1 - g2 - T::lit(3.0) * g0) / (T::two() * h);
    let near = T::lit(1e-5);
    let r = q.integrate_left_power(
        |x: T| {
            if x < near {
                Ok(slope0)
            } else {
                Ok((g(x)? - g0) / x)
            }
        },
        T::zero(),
        T::one(),
        beta + T::one(),
    )?;
    // rounding in g(x)−g(0) near the origin
    let extra = T::epsilon() * g0.abs() / near * T::lit(10.0);
    Ok((r.value + g0 / beta, r.abs_error + extra))
}

/// Closed form for the bubble: Γ(2−d/2)·2^{1+2α}/√π·cos(απ)Γ(1/2+α)/(Γ(−α)2α)
/// times ∫₀¹ x^{−2α}(m̃²+k²x(1−x))^{d/2−2}₂F₁(−2α, 2−d/2; 1−2α; ζ(x))dx,
/// with ζ(x) = (m̃²−M²)x/(m̃²+k²x(1−x)). Uses cos(απ)Γ(1/2+α) = π/Γ(1/2−α)
/// and 1/(Γ(−α)α) = −1/Γ(1−α).
pub fn bubble_closed_with<T: Real>(
    params: &DeformationParams<T>,
    k_sq: T,
    half_dim: HalfDimension,
    tol: T,
) -> Result<LoopResult<T>> {
    let n = params.n();
    let a = params.alpha();
    if a == T::zero() {
        return Err(Error::DomainError("alpha = 0 is the undeformed limit".into()));
    }
    if !(k_sq >= T::zero()) {
        return Err(Error::DomainError("k^2 must be nonnegative".into()));
    }
    let dh = half_dim.value(n, a);
    let g = gamma(T::two() - dh)?;
    let mt = positive_mass(params)?;
    let m2 = params.mass_scale() * params.mass_scale();
    let e = dh - T::two();
    let (fa, fb, fc) = (-T::two() * a, T::two() - dh, T::one() - T::two() * a);
    if crate::specfun::is_nonpositive_integer(fc) {
        return Err(Error::DegenerateC { c: fc.as_f64() });
    }
    let mut f_err = T::zero();
    let q = Integrator::new(tol * T::lit(0.05));
    let (integral, q_err) = integrate_continued(
        &q,
        |x: T| {
            let b = mt + k_sq * x * (T::one() - x);
            let f = hyp2f1(fa, fb, fc, (mt - m2) * x / b)?;
            f_err = f_err.max(f.abs_error_estimate);
            Ok(b.powf(e) * f.re())
        },
        T::one() - T::two() * a,
    )?;
    let pre = T::PI().powf(half_n(n)) * g.re() * T::two().powf(T::one() + T::two() * a) / T::PI().sqrt()
        * T::PI()
        * rgamma(T::half() - a)
        * (-rgamma(T::one() - a) * T::half());
    let value = pre * integral;
    let err = pre.abs() * (q_err + f_err * mt.max(T::one()).powf(e.abs()))
        + (value / g.re()).abs() * g.abs_error_estimate;
    Ok(result(value, LoopMethod::ClosedForm, err, params, Some(k_sq)))
}

pub fn bubble_closed<T: Real>(params: &DeformationParams<T>, k_sq: T, tol: T) -> Result<LoopResult<T>> {
    bubble_closed_with(params, k_sq, HalfDimension::default(), tol)
}

// ∫₀^y [w(y−w)]^{−1−α} g(w) dw split at y/2
fn beta_kernel<T: Real, F>(q: &Integrator<T>, mut g: F, lo: T, hi: T, y: T, a: T) -> Result<(T, T)>
where
    F: FnMut(T) -> Result<T>,
{
    let ex = -T::one() - a;
    let mid = (lo + hi) * T::half();
    let left_sing = lo == T::zero();
    let right_sing = hi == y;
    let mut total = (T::zero(), T::zero());
    let mut add = |r: crate::quad::QuadResult<T, T>| {
        total.0 += r.value;
        total.1 += r.abs_error;
    };
    if left_sing {
        add(q.integrate_left_power(|w| Ok((y - w).powf(ex) * g(w)?), lo, mid, -a)?);
    } else {
        add(q.try_integrate(|w| Ok((w * (y - w)).powf(ex) * g(w)?), lo, mid)?);
    }
    if right_sing {
        add(q.integrate_right_power(|w| Ok(w.powf(ex) * g(w)?), mid, hi, -a)?);
    } else {
        add(q.try_integrate(|w| Ok((w * (y - w)).powf(ex) * g(w)?), mid, hi)?);
    }
    Ok(total)
}

/// Four-parameter Feynman representation after the z and momentum integrals:
/// π^{n/2}Γ(2−d/2)/Γ(−α)² ∫ [w(y−w)]^{−1−α}[x(1−x)k² + yM² + (1−y)m̃²]^{d/2−2},
/// d/2 = n/2+2α, over the chosen region. α < 0.
pub fn bubble_feynman<T: Real>(
    params: &DeformationParams<T>,
    k_sq: T,
    region: FeynmanRegion,
    tol: T,
) -> Result<LoopResult<T>> {
    let n = params.n();
    let a = params.alpha();
    if !(a < T::zero()) {
        return Err(Error::DomainError("Feynman-parameter bubble needs alpha < 0".into()));
    }
    let dh = HalfDimension::FromZIntegral.value(n, a);
    let g = gamma(T::two() - dh)?;
    let mt = positive_mass(params)?;
    let m2 = params.mass_scale() * params.mass_scale();
    let e = dh - T::two();
    let bracket = |x: T, y: T| (x * (T::one() - x) * k_sq + y * m2 + (T::one() - y) * mt).powf(e);
    let inner = Integrator::new(tol * T::lit(0.01));
    let outer = Integrator::new(tol * T::lit(0.05));
    let r = match region {
        // ∫₀^y[w(y−w)]^{−1−α}dw = y^{−1−2α}·∫₀¹[s(1−s)]^{−1−α}ds (w = ys)
        FeynmanRegion::Nested => {
            let (kernel, kernel_err) = beta_kernel(&inner, |_| Ok(T::one()), T::zero(), T::one(), T::one(), a)?;
            let r = outer.try_integrate(
                |x: T| {
                    if x == T::zero() {
                        return Ok(T::zero());
                    }
                    let r = inner.integrate_left_power(|y: T| Ok(bracket(x, y)), T::zero(), x, -T::two() * a)?;
                    Ok(r.value)
                },
                T::zero(),
                T::one(),
            )?;
            crate::quad::QuadResult {
                value: r.value * kernel,
                abs_error: r.abs_error * kernel + r.value.abs() * kernel_err,
                ..r
            }
        }
        // with u = ã/z, v = b̃/z the region is u, v ≥ 0, u+v ≤ 1, and
        // x = s + u, y = u + v with s = a/z ∈ [0, 1−u−v]
        FeynmanRegion::Simplex => outer.integrate_left_power(
            |u: T| {
                let r = inner.integrate_left_power(
                    |v: T| {
                        let rest = T::one() - u - v;
                        if rest <= T::zero() {
                            return Ok(T::zero());
                        }
                        let s = inner.integrate(|s: T| bracket(s + u, u + v), T::zero(), rest)?;
                        Ok(s.value)
                    },
                    T::zero(),
                    T::one() - u,
                    -a,
                )?;
                Ok(r.value)
            },
            T::zero(),
            T::one(),
            -a,
        )?,
    };
    let pre = T::PI().powf(half_n(n)) * g.re() * rgamma(-a) * rgamma(-a);
    let value = pre * r.value;
    Ok(result(
        value,
        LoopMethod::FeynmanQuadrature,
        pre.abs() * r.abs_error + T::lit(10.0) * tol * value.abs(),
        params,
        Some(k_sq),
    ))
}

/// ∫dⁿp [(M²+p²)(M²+(p+k)²)]^α/[(p²+m̃²)((p+k)²+m̃²)], n + 4α < 4.
pub fn bubble_direct<T: Real>(params: &DeformationParams<T>, k_sq: T, tol: T) -> Result<LoopResult<T>> {
    let n = params.n();
    let a = params.alpha();
    let decay = T::lit(4.0) - T::of_usize(n) - T::lit(4.0) * a;
    if !(decay > T::zero()) {
        return Err(Error::OutsideConvergence(format!(
            "bubble integral needs n + 4 alpha < 4, got {}",
            (T::lit(4.0) - decay).as_f64()
        )));
    }
    if !(k_sq >= T::zero()) {
        return Err(Error::DomainError("k^2 must be nonnegative".into()));
    }
    let mt = positive_mass(params)?;
    let m2 = params.mass_scale() * params.mass_scale();
    let k = k_sq.sqrt();
    // integrand in p = 1/t, multiplied by p^{4−4α}; c = cos θ
    let scaled = move |t: T, c: T| {
        let t2 = t * t;
        let shift = T::two() * k * t * c;
        let q1 = T::one() / (T::one() + mt * t2);
        let q2 = T::one() / (T::one() + shift + (k_sq + mt) * t2);
        let w = ((T::one() + m2 * t2) * (T::one() + shift + (k_sq + m2) * t2)).powf(a);
        q1 * q2 * w
    };
    let plain = move |p: T, c: T| {
        let pk = p * p + k_sq + T::two() * p * k * c;
        ((m2 + p * p) * (m2 + pk)).powf(a) / ((p * p + mt) * (pk + mt))
    };
    let angular = Integrator::new(tol * T::lit(0.01));
    let radial = Integrator::new(tol * T::lit(0.05));
    let sin_pow = T::of_usize(n.saturating_sub(2));
    let angle_avg = |f: &dyn Fn(T) -> T| -> Result<T> {
        if n == 1 {
            return Ok(f(T::one()) + f(-T::one()));
        }
        let r = angular.integrate(|th: T| th.sin().powf(sin_pow) * f(th.cos()), T::zero(), T::PI())?;
        Ok(r.value)
    };
    let split = T::two() * m2.max(mt).max(k_sq).sqrt();
    let head = radial.integrate_left_power(|p: T| angle_avg(&|c| plain(p, c)), T::zero(), split, T::of_usize(n))?;
    let tail = radial.integrate_power_tail(|t: T| angle_avg(&|c| scaled(t, c)), split, decay)?;
    // n = 1 has no angular volume factor; the ±p sum already covers the line
    let vol = if n == 1 { T::one() } else { sphere_volume::<T>(n - 1) };
    let value = vol * (head.value + tail.value);
    Ok(result(
        value,
        LoopMethod::DirectQuadrature,
        vol * (head.abs_error + tail.abs_error) + tol * T::lit(0.01) * value.abs(),
        params,
        Some(k_sq),
    ))
}

fn bubble_limit<T: Real>(n: usize, m0_sq: T, k_sq: T, exponent: T, tol: T) -> Result<LoopResult<T>> {
    let g = gamma(T::two() - half_n::<T>(n))?;
    if !(m0_sq > T::zero()) {
        return Err(Error::NegativeMassSquared(m0_sq.as_f64()));
    }
    let q = Integrator::new(tol * T::lit(0.1));
    let r = q.integrate(|x: T| (m0_sq + k_sq * x * (T::one() - x)).powf(exponent), T::zero(), T::one())?;
    let pre = -T::PI().powf(half_n(n)) * g.re();
    let params = DeformationParams::new(n, T::zero())?.with_m0_sq(m0_sq)?;
    Ok(result(pre * r.value, LoopMethod::DimregLimit, pre.abs() * r.abs_error, &params, Some(k_sq)))
}

/// −π^{n/2}Γ(2−n/2)∫₀¹(m₀²+k²x(1−x))^{n/2−2}dx.
pub fn bubble_dimreg_limit<T: Real>(n: usize, m0_sq: T, k_sq: T, tol: T) -> Result<LoopResult<T>> {
    bubble_limit(n, m0_sq, k_sq, half_n::<T>(n) - T::two(), tol)
}

/// Same prefactor with the exponent n/2 instead of n/2−2, for comparison.
pub fn bubble_dimreg_limit_half_n_exponent<T: Real>(n: usize, m0_sq: T, k_sq: T, tol: T) -> Result<LoopResult<T>> {
    bubble_limit(n, m0_sq, k_sq, half_n(n), tol)
}

fn require_identity_alpha<T: Real>(a: T) -> Result<()> {
    if a > -T::half() && a < T::zero() {
        Ok(())
    } else {
        Err(Error::DomainError(format!("identity needs -1/2 < alpha < 0, got {}", a.as_f64())))
    }
}

/// (∫₀^y[w(y−w)]^{−(1+α)}dw by quadrature,
///  2^{1+2α}/√π·cos(απ)Γ(−α)Γ(1/2+α)·y^{−1−2α}).
pub fn identity_w_integral<T: Real>(alpha: T, y: T, tol: T) -> Result<(T, T)> {
    require_identity_alpha(alpha)?;
    if !(y > T::zero()) {
        return Err(Error::DomainError("y must be positive".into()));
    }
    let q = Integrator::new(tol * T::lit(0.05));
    let (lhs, _) = beta_kernel(&q, |_| Ok(T::one()), T::zero(), y, y, alpha)?;
    let rhs = T::two().powf(T::one() + T::two() * alpha) / T::PI().sqrt()
        * (alpha * T::PI()).cos()
        * gamma(-alpha)?.re()
        * gamma(T::half() + alpha)?.re()
        * y.powf(-T::one() - T::two() * alpha);
    Ok((lhs, rhs))
}

/// Both sides of the y-integral identity, with the closed side evaluated for
/// the two candidate second ₂F₁ parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct YIdentity<T> {
    /// ∫₀^x y^{−1−2α}[x(1−x)k² + yM² + (1−y)m̃²]^{d/2−2}dy.
    pub quadrature: T,
    /// −x^{−2α}/(2α)·(m̃²+k²x(1−x))^{d/2−2}·₂F₁(−2α, 2−d/2; 1−2α; ζ).
    pub closed: T,
    /// Same with second parameter 2−4α−d/2.
    pub closed_alt_parameter: T,
}

pub fn identity_y_integral<T: Real>(
    alpha: T,
    x: T,
    k_sq: T,
    mass_scale: T,
    m_tilde_sq: T,
    d: T,
    tol: T,
) -> Result<YIdentity<T>> {
    require_identity_alpha(alpha)?;
    if !(x > T::zero() && x <= T::one()) || !(m_tilde_sq > T::zero()) || !(k_sq >= T::zero()) {
        return Err(Error::DomainError("need 0 < x ≤ 1, m̃² > 0, k² ≥ 0".into()));
    }
    let m2 = mass_scale * mass_scale;
    let e = d * T::half() - T::two();
    let kx = k_sq * x * (T::one() - x);
    let q = Integrator::new(tol * T::lit(0.05));
    let lhs = q.integrate_left_power(
        |y: T| Ok((kx + y * m2 + (T::one() - y) * m_tilde_sq).powf(e)),
        T::zero(),
        x,
        -T::two() * alpha,
    )?;
    let b = m_tilde_sq + kx;
    let zeta = (m_tilde_sq - m2) * x / b;
    let front = -x.powf(-T::two() * alpha) / (T::two() * alpha) * b.powf(e);
    let c = T::one() - T::two() * alpha;
    let closed = front * hyp2f1(-T::two() * alpha, -e, c, zeta)?.re();
    let alt = front * hyp2f1(-T::two() * alpha, -e - T::lit(4.0) * alpha, c, zeta)?.re();
    Ok(YIdentity {
        quadrature: lhs.value,
        closed,
        closed_alt_parameter: alt,
    })
}

/// α → 0 limit from samples at small α by first-order elimination.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Extrapolation<T> {
    pub alphas: Vec<T>,
    pub values: Vec<T>,
    /// Two-point elimination from the two smallest |α|.
    pub limit: T,
    /// log(|f₁−f₂|/|f₂−f₃|)/log(α₁/α₂) from the first three samples.
    pub observed_order: Option<T>,
    /// |limit − limit from the previous pair|.
    pub error_estimate: T,
}

/// Richardson extrapolation of f(α) to α = 0, assuming f(α) = L + cα + O(α²).
/// `alphas` must be nonzero, distinct and ordered by decreasing |α|.
pub fn extrapolate_to_zero<T: Real, F>(mut f: F, alphas: &[T]) -> Result<Extrapolation<T>>
where
    F: FnMut(T) -> Result<T>,
{
    if alphas.len() < 2 || alphas.iter().any(|a| *a == T::zero()) {
        return Err(Error::InvalidParameters("need at least two nonzero alphas".into()));
    }
    let values = alphas.iter().map(|&a| f(a)).collect::<Result<Vec<T>>>()?;
    let elim = |i: usize| {
        let (a1, a2, f1, f2) = (alphas[i], alphas[i + 1], values[i], values[i + 1]);
        (a1 * f2 - a2 * f1) / (a1 - a2)
    };
    let m = alphas.len();
    let limit = elim(m - 2);
    let error_estimate = if m >= 3 { (limit - elim(m - 3)).abs() } else { T::zero() };
    let observed_order = (m >= 3).then(|| {
        ((values[0] - values[1]).abs() / (values[1] - values[2]).abs()).ln() / (alphas[0] / alphas[1]).abs().ln()
    });
    Ok(Extrapolation {
        alphas: alphas.to_vec(),
        values,
        limit,
        observed_order,
        error_estimate,
    })
}

/// The extra mass used in α sweeps: m₀² = 1 + max(0, −m²), so m̃² ≥ 1.
pub fn sweep_m0_sq<T: Real>(n: usize, alpha: T, mass_scale: T) -> Result<T> {
    let m2 = DeformationParams::new(n, alpha)?.with_mass_scale(mass_scale)?.mass_squared();
    Ok(T::one() + (-m2).max(T::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const TOL: f64 = 1e-10;

    fn p(n: usize, a: f64, m0: f64) -> DeformationParams<f64> {
        DeformationParams::new(n, a).unwrap().with_m0_sq(m0).unwrap()
    }

    #[test]
    fn mass_examples() {
        assert_eq!(mass_squared(&p(3, 0.0, 0.0)), 0.0);
        assert_eq!(mass_squared(&p(4, 0.25, 0.0)), 2.0);
        let q = DeformationParams::new(1, -0.25).unwrap().with_mass_scale(2.0).unwrap();
        assert_relative_eq!(mass_squared(&q), -2.0 / 3.0, max_relative = 1e-15);
    }

    #[test]
    fn tadpole_reference_values() {
        // mpmath: closed form and radial quadrature
        let cases = [
            (p(1, -0.25, 1.0), 2.672111071441749084027532),
            (p(1, 0.2, 1.0), 4.093040349895348149309538),
            (p(1, 0.4, 4.0), 8.780051115295377309484151),
            (p(2, -0.5, 2.0), 5.469008592868691590112764),
            (p(3, -0.3, 1.0), -32.07414860064918129951672),
        ];
        for (prm, want) in cases {
            let c = tadpole_closed(&prm).unwrap();
            assert_relative_eq!(c.value, want, max_relative = 1e-12);
            assert!(c.error_estimate < 1e-12 * want.abs());
        }
    }

    #[test]
    fn tadpole_routes_agree() {
        for n in 1..=3usize {
            for a in [-0.4, -0.3, -0.2, -0.05] {
                let prm = p(n, a, sweep_m0_sq(n, a, 1.0).unwrap());
                let c = tadpole_closed(&prm).unwrap().value;
                let f = tadpole_feynman(&prm, TOL).unwrap();
                assert!((c - f.value).abs() <= 1e-8 * c.abs(), "n={n} a={a}");
                assert!(f.error_estimate > 0.0);
            }
        }
        for (a, m0) in [(0.1, 1.0), (0.2, 1.0), (0.4, 1.0), (0.4, 4.0), (-0.25, 1.0)] {
            let prm = p(1, a, m0);
            let c = tadpole_closed(&prm).unwrap().value;
            let d = tadpole_direct(&prm, TOL).unwrap();
            assert!((c - d.value).abs() <= 1e-8 * c, "a={a}: {c} vs {}", d.value);
        }
    }

    #[test]
    fn tadpole_trivial_hypergeometric() {
        // m̃² = M²: the bracket is constant, integral −1/α·(M²)^{α+n/2−1}
        let (n, a, big_m) = (2usize, -0.3f64, 1.7f64);
        let mt = big_m * big_m;
        let prm = DeformationParams::new(n, a).unwrap().with_mass_scale(big_m).unwrap();
        let prm = prm.with_m0_sq(mt - prm.mass_squared()).unwrap();
        let f = tadpole_feynman(&prm, TOL).unwrap().value;
        let want = std::f64::consts::PI * gamma(1.0 - 1.0 - a).unwrap().re() / gamma(-a).unwrap().re()
            * (-1.0 / a)
            * mt.powf(a);
        assert_relative_eq!(f, want, max_relative = 1e-10);
        assert_relative_eq!(tadpole_closed(&prm).unwrap().value, want, max_relative = 1e-12);
    }

    #[test]
    fn tadpole_domain_errors() {
        assert!(matches!(tadpole_direct(&p(2, 0.1, 1.0), TOL), Err(Error::OutsideConvergence(_))));
        assert!(matches!(tadpole_direct(&p(1, -0.2, 0.0), TOL), Err(Error::NegativeMassSquared(_))));
        assert!(matches!(tadpole_feynman(&p(1, 0.2, 1.0), TOL), Err(Error::DomainError(_))));
    }

    #[test]
    fn tadpole_poles_follow_dimension() {
        for n in 1..=4usize {
            for i in -19..=19 {
                let a = i as f64 * 0.05;
                let r = tadpole_closed_with_mass(n, a, 1.0, 1.0);
                let d = n as f64 + 2.0 * a;
                let even = (d / 2.0 - (d / 2.0).round()).abs() < 1e-9 && d >= 2.0 - 1e-9;
                match r {
                    Err(Error::PoleArgument { .. }) => assert!(even, "n={n} a={a}"),
                    Err(Error::DomainError(_)) => assert_eq!(a, 0.0),
                    Ok((v, _)) => assert!(!even && v.is_finite(), "n={n} a={a}"),
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    #[test]
    fn tadpole_limits() {
        assert_relative_eq!(tadpole_dimreg_limit(3, 1.0).unwrap().value, -19.73920880217871723766898, max_relative = 1e-13);
        assert_relative_eq!(tadpole_dimreg_limit(1, 1.0).unwrap().value, std::f64::consts::PI, max_relative = 1e-13);
        assert!(matches!(tadpole_dimreg_limit(2, 1.0), Err(Error::PoleArgument { .. })));
        for n in [1usize, 3] {
            let ex = extrapolate_to_zero(|a| Ok(tadpole_closed(&p(n, a, 1.0))?.value), &[-1e-2, -1e-3, -1e-4]).unwrap();
            let want = tadpole_dimreg_limit(n, 1.0).unwrap().value;
            assert!((ex.limit - want).abs() <= 1e-3 * want.abs());
            let order = ex.observed_order.unwrap();
            assert!((0.8..=1.2).contains(&order), "order {order}");
        }
    }

    #[test]
    fn bubble_reference_values() {
        // mpmath nested quadrature
        let d = bubble_direct(&p(2, -0.2, 1.0), 1.0, 1e-9).unwrap();
        assert_relative_eq!(d.value, 2.49311673170066, max_relative = 1e-9);
        assert_relative_eq!(
            bubble_dimreg_limit(1, 1.0, 1.0, 1e-12).unwrap().value,
            -1.256637061435917295385057,
            max_relative = 1e-11
        );
        assert_relative_eq!(
            bubble_dimreg_limit(3, 1.0, 0.0, 1e-12).unwrap().value,
            -std::f64::consts::PI.powi(2),
            max_relative = 1e-13
        );
        assert!(matches!(bubble_dimreg_limit(4, 1.0, 1.0, 1e-10), Err(Error::PoleArgument { .. })));
    }

    #[test]
    fn bubble_closed_equals_nested_region() {
        for (n, a, k2) in [(2usize, -0.2, 1.0), (3, -0.3, 0.5), (1, -0.1, 4.0)] {
            let prm = p(n, a, 1.0);
            let c = bubble_closed(&prm, k2, 1e-11).unwrap().value;
            let f = bubble_feynman(&prm, k2, FeynmanRegion::Nested, 1e-9).unwrap().value;
            assert!((c + f).abs() <= 1e-7 * f.abs(), "n={n}: {c} vs {f}");
        }
    }

    #[test]
    fn simplex_region_reproduces_direct() {
        let prm = p(2, -0.2, 1.0);
        let s = bubble_feynman(&prm, 1.0, FeynmanRegion::Simplex, 1e-8).unwrap().value;
        let d = bubble_direct(&prm, 1.0, 1e-9).unwrap().value;
        assert_relative_eq!(s, d, max_relative = 1e-6);
    }

    #[test]
    fn bubble_limit_exponent() {
        let ex = extrapolate_to_zero(|a| Ok(bubble_closed(&p(3, a, 1.0), 1.0, 1e-11)?.value), &[-1e-2, -1e-3]).unwrap();
        let want = bubble_dimreg_limit(3, 1.0, 1.0, 1e-12).unwrap().value;
        assert_relative_eq!(want, -9.152036964697828334204334, max_relative = 1e-11);
        assert!((ex.limit - want).abs() <= 1e-3 * want.abs());
        let half_n = bubble_dimreg_limit_half_n_exponent(3, 1.0, 1.0, 1e-12).unwrap().value;
        assert!((ex.limit - half_n).abs() > 0.05 * want.abs());
    }

    #[test]
    fn bubble_finite_over_alpha() {
        for n in 1..=3usize {
            for i in 1..=9 {
                for a in [i as f64 * 0.1, -(i as f64) * 0.1] {
                    // α = 1/2 is where n/(1−2α) blows up
                    if a == 0.5 {
                        continue;
                    }
                    let prm = p(n, a, sweep_m0_sq(n, a, 1.0).unwrap());
                    match bubble_closed(&prm, 1.0, 1e-8) {
                        Ok(r) => assert!(r.value.is_finite(), "n={n} a={a}"),
                        Err(Error::PoleArgument { .. }) => {}
                        Err(e) => panic!("n={n} a={a}: {e}"),
                    }
                    assert!(tadpole_closed(&prm).map_or(true, |r| r.value.is_finite()));
                }
            }
        }
    }

    #[test]
    fn bubble_direct_structure() {
        // k = 0: the angular integral is trivial, leaving a squared propagator
        let prm = p(3, -0.1, 1.0);
        let mt = prm.effective_mass_squared();
        let d = bubble_direct(&prm, 0.0, 1e-10).unwrap().value;
        let q = Integrator::new(1e-12);
        let r = q
            .integrate_power_tail(|t: f64| Ok((1.0 + t * t).powf(-0.2) / (1.0 + mt * t * t).powi(2)), 1.0, 1.4)
            .unwrap()
            .value
            + q.integrate(|p: f64| p * p * (1.0 + p * p).powf(-0.2) / (p * p + mt).powi(2), 0.0, 1.0).unwrap().value;
        assert_relative_eq!(d, 4.0 * std::f64::consts::PI * r, max_relative = 1e-9);
        // α = 0 in three dimensions is the textbook bubble, up to sign
        let z = bubble_direct(&p(3, 0.0, 1.0), 1.0, 1e-10).unwrap().value;
        assert_relative_eq!(z, -bubble_dimreg_limit(3, 1.0, 1.0, 1e-12).unwrap().value, max_relative = 1e-8);
        assert!(matches!(bubble_direct(&p(3, 0.3, 1.0), 1.0, 1e-8), Err(Error::OutsideConvergence(_))));
    }

    #[test]
    fn trivial_argument_bubble() {
        // k² = 0 and m̃² = M²: ₂F₁ ≡ 1 and the x-integral is 1/(1−2α)
        let (n, a) = (2usize, -0.2f64);
        let base = DeformationParams::new(n, a).unwrap();
        let prm = base.with_m0_sq(1.0 - base.mass_squared()).unwrap();
        let c = bubble_closed(&prm, 0.0, 1e-12).unwrap().value;
        let dh = 1.0 + 2.0 * a;
        let want = std::f64::consts::PI * gamma(2.0 - dh).unwrap().re() * 2f64.powf(1.0 + 2.0 * a)
            / std::f64::consts::PI.sqrt()
            * (a * std::f64::consts::PI).cos()
            * gamma(0.5 + a).unwrap().re()
            / (gamma(-a).unwrap().re() * 2.0 * a)
            / (1.0 - 2.0 * a);
        assert_relative_eq!(c, want, max_relative = 1e-10);
    }

    #[test]
    fn w_identity() {
        let (l, r) = identity_w_integral(-0.25, 1.0, 1e-12).unwrap();
        assert_relative_eq!(l, 7.416298709205487673735401, max_relative = 1e-10);
        assert_relative_eq!(r, 7.416298709205487673735401, max_relative = 1e-13);
        let (l4, r4) = identity_w_integral(-0.25, 4.0, 1e-12).unwrap();
        assert_relative_eq!(l4, l * 0.5, max_relative = 1e-10);
        assert_relative_eq!(r4, r * 0.5, max_relative = 1e-13);
        let (l, r) = identity_w_integral(-0.4, 1.0, 1e-12).unwrap();
        assert_relative_eq!(l, 4.226169203171730408223869, max_relative = 1e-10);
        assert_relative_eq!(r, l, max_relative = 1e-9);
        assert!(identity_w_integral(0.1, 1.0, 1e-10).is_err());
    }

    #[test]
    fn y_identity() {
        let (a, n) = (-0.25, 2usize);
        let d = n as f64 + 4.0 * a;
        let y = identity_y_integral(a, 0.5, 1.0, 1.0, 2.0, d, 1e-12).unwrap();
        assert_relative_eq!(y.quadrature, y.closed, max_relative = 1e-10);
        assert!((y.closed_alt_parameter - y.quadrature).abs() > 1e-3 * y.quadrature.abs());
        // m̃² = M²: elementary
        let e = identity_y_integral(-0.3, 0.7, 2.0, 1.0, 1.0, 2.2, 1e-12).unwrap();
        let want = 0.7f64.powf(0.6) / 0.6 * (1.0 + 2.0 * 0.21f64).powf(1.1 - 2.0);
        assert_relative_eq!(e.quadrature, want, max_relative = 1e-10);
        assert_relative_eq!(e.closed, want, max_relative = 1e-13);
        // x → 0 scales like x^{−2α}
        let s1 = identity_y_integral(-0.3, 1e-4, 1.0, 1.0, 2.0, 2.0, 1e-12).unwrap().closed;
        let s2 = identity_y_integral(-0.3, 2e-4, 1.0, 1.0, 2.0, 2.0, 1e-12).unwrap().closed;
        assert_relative_eq!(s2 / s1, 2f64.powf(0.6), max_relative = 1e-3);
    }

    #[test]
    fn loop_result_serialises() {
        let r = tadpole_closed(&p(1, -0.25, 1.0)).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"method\":\"closed-form\""));
        assert!(json.contains("\"M\":1.0"));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn scale_covariance(n in 1usize..=3, a in -0.45f64..-0.05, m0 in 0.5f64..3.0, k2 in 0.0f64..3.0) {
            let lam = 2.0;
            let base = DeformationParams::new(n, a).unwrap();
            let m0 = m0 - base.mass_squared().min(0.0);
            let p1 = base.with_m0_sq(m0).unwrap();
            let p2 = base.with_mass_scale(lam).unwrap().with_m0_sq(lam * lam * m0).unwrap();
            let t1 = tadpole_closed(&p1).unwrap().value;
            let t2 = tadpole_closed(&p2).unwrap().value;
            prop_assert!((t2 - t1 * lam.powf(n as f64 + 2.0 * a - 2.0)).abs() <= 1e-9 * t2.abs());
            let b1 = bubble_closed(&p1, k2, 1e-12).unwrap().value;
            let b2 = bubble_closed(&p2, lam * lam * k2, 1e-12).unwrap().value;
            prop_assert!((b2 - b1 * lam.powf(n as f64 + 4.0 * a - 4.0)).abs() <= 1e-9 * b2.abs());
        }
    }
}
