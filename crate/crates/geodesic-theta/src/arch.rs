//! Floating-point validation of the archimedean pieces: the Schwartz
//! function on the split plane, its orbital integral in closed form and by
//! quadrature, the symmetric-space coefficient it comes from, and the
//! per-place factorization of a Fourier term.
//!
//! These are validation routines, not part of the exact pipeline: double
//! precision with Gaussian decay and generous truncation is plenty for the
//! 1e-9 tolerances they are tested at.

use num_complex::Complex64;

use crate::biquad::RealPlace;
use crate::error::{Error, Result};
use crate::qform::FFormContext;
use crate::quat::Quaternion;

/// (x + y) exp(-pi (x^2 + y^2)).
pub fn phi_inf(x: f64, y: f64) -> f64 {
    (x + y) * (-std::f64::consts::PI * (x * x + y * y)).exp()
}

/// Closed form of the orbital integral of phi_inf along the torus:
/// sgn(x) exp(-2 pi x y) when x y > 0, else 0.
pub fn i_closed(x: f64, y: f64) -> f64 {
    if x * y > 0.0 {
        x.signum() * (-2.0 * std::f64::consts::PI * x * y).exp()
    } else {
        0.0
    }
}

/// The integral of phi_inf(x/t, t y) dt/t over t in (0, inf), by trapezoid
/// refinement in the substitution t = e^s. The integrand decays
/// double-exponentially, so |s| <= 12 truncation is far below tolerance.
pub fn i_quadrature(x: f64, y: f64, tol: f64) -> Result<f64> {
    assert!(tol > 0.0);
    let integrand = |s: f64| phi_inf((-s).exp() * x, s.exp() * y);
    let bound = 12.0f64;
    let mut steps = 1usize << 8;
    let mut prev = f64::NAN;
    for _ in 0..16 {
        let h = 2.0 * bound / steps as f64;
        let mut sum = 0.5 * (integrand(-bound) + integrand(bound));
        for k in 1..steps {
            sum += integrand(-bound + k as f64 * h);
        }
        let value = sum * h;
        if (value - prev).abs() < tol / 2.0 {
            return Ok(value);
        }
        prev = value;
        steps *= 2;
    }
    Err(Error::ToleranceNotAchieved((prev - i_closed(x, y)).abs()))
}

/// Coefficient of dt/t in the symmetric-space form at parameter t:
/// (x/t + y t) exp(-pi ((x/t)^2 + (y t)^2)). At t = 1 this is phi_inf.
pub fn km_coeff(x: f64, y: f64, t: f64) -> f64 {
    assert!(t > 0.0);
    phi_inf(x / t, y * t)
}

/// Quadrature of km_coeff dt/t; equals i_closed by the orbital integral
/// identity.
pub fn km_integral(x: f64, y: f64, tol: f64) -> Result<f64> {
    i_quadrature(x, y, tol)
}

/// The isometry of the scaled hyperbolic plane onto R^{1,1}:
/// (x, y) -> (sqrt|sa| x, sgn(sa) sqrt|sa| y), so that x' y' = sa * x y.
pub fn iota_sigma(x: f64, y: f64, sa: f64) -> (f64, f64) {
    assert!(sa != 0.0);
    let r = sa.abs().sqrt();
    (r * x, sa.signum() * r * y)
}

/// Per-place data needed for a Fourier term: the value of q_F(b) and the
/// two components of iota_L(b) at the extensions of that place.
struct PlaceData {
    q: f64,
    comp_first: f64,
    comp_second: f64,
    alpha: f64,
}

fn place_data(ctx: &FFormContext, b: &Quaternion, plus_place: bool) -> PlaceData {
    let x = ctx.iota_l(b);
    let q = ctx.q_f(b);
    let s = if plus_place { 1 } else { -1 };
    // distinguished extension has s1 = +1; its partner negates both signs
    let first = if plus_place {
        RealPlace::new(1, 1)
    } else {
        RealPlace::new(1, -1)
    };
    let second = RealPlace::new(-first.s1, -first.s2);
    PlaceData {
        q: q.eval_f64(s),
        comp_first: x.eval_f64(first),
        comp_second: x.eval_f64(second),
        alpha: ctx.alpha.eval_f64(s),
    }
}

/// One place's factor by the closed form: zero off the positive cone,
/// otherwise sign(first component) * exp(2 pi i q_sigma(b) tau_sigma).
fn place_factor_closed(data: &PlaceData, tau: Complex64) -> Complex64 {
    if data.q <= 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let sign = if data.comp_first >= 0.0 { 1.0 } else { -1.0 };
    let phase = Complex64::new(0.0, 2.0 * std::f64::consts::PI * data.q) * tau;
    sign * phase.exp()
}

/// One place's factor by quadrature of the integral representation: apply
/// the isometry to the sqrt(y)-scaled components and integrate.
fn place_factor_quadrature(data: &PlaceData, tau: Complex64, tol: f64) -> Result<Complex64> {
    let y = tau.im;
    assert!(y > 0.0);
    let (xx, yy) = iota_sigma(
        y.sqrt() * data.comp_first,
        y.sqrt() * data.comp_second,
        data.alpha,
    );
    let radial = i_quadrature(xx, yy, tol)?;
    let phase = Complex64::new(0.0, 2.0 * std::f64::consts::PI * data.q * tau.re).exp();
    Ok(phase * radial)
}

/// The Fourier term of b at (tau1, tau2): the product over the two places of
/// the closed-form factors, with the configured sign convention. Vanishes
/// unless q_F(b) is totally positive.
pub fn fourier_term(ctx: &FFormContext, b: &Quaternion, tau1: Complex64, tau2: Complex64) -> Complex64 {
    assert!(!b.is_zero());
    let d1 = place_data(ctx, b, true);
    let d2 = place_data(ctx, b, false);
    ctx.sign_convention as f64 * place_factor_closed(&d1, tau1) * place_factor_closed(&d2, tau2)
}

/// The same term with the radial integral evaluated by quadrature at each
/// place instead of the closed form.
pub fn fourier_term_quadrature(
    ctx: &FFormContext,
    b: &Quaternion,
    tau1: Complex64,
    tau2: Complex64,
    tol: f64,
) -> Result<Complex64> {
    assert!(!b.is_zero());
    let d1 = place_data(ctx, b, true);
    let d2 = place_data(ctx, b, false);
    Ok(ctx.sign_convention as f64
        * place_factor_quadrature(&d1, tau1, tol)?
        * place_factor_quadrature(&d2, tau2, tol)?)
}
