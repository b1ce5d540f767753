//! Ratios and logarithmic derivatives of Jacobi polynomials.
//!
//! Polynomial values themselves are never formed: the upward recurrence is
//! run on consecutive ratios, and the ratio in the `alpha` direction comes
//! from its continued fraction.

use crate::error::{QuadError, Result};
use twofloat::TwoFloat;

use crate::params::{PrecisionConfig, QuadParams};

/// Output of a continued-fraction or recurrence evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioResult {
    pub value: f64,
    pub terms_used: usize,
    pub converged: bool,
}

const CF_MAX_TERMS: usize = 10_000;
const LENTZ_TINY: f64 = 1e-300;

fn signum(v: f64) -> f64 {
    if v.is_sign_negative() {
        -1.0
    } else {
        1.0
    }
}

/// Runs the ratio recurrence up to degree `n`.  Returns `P_n / P_{n-1}` and
/// the sign of `P_{n-1}(x)`.
pub(crate) fn ratio_with_sign(p: &QuadParams, x: f64) -> (f64, f64) {
    let (a, b) = (p.alpha, p.beta);
    let mut r = 0.5 * (a - b + (a + b + 2.0) * x);
    let mut sign_prev = 1.0;
    for k in 1..p.n {
        let kf = k as f64;
        let lk = 2.0 * kf + a + b + 1.0;
        let ak = 2.0 * (kf + 1.0) * (kf + a + b + 1.0) * (lk - 1.0);
        let bk = lk * ((lk - 1.0) * (lk + 1.0) * x + (a - b) * (a + b));
        let ck = 2.0 * (kf + a) * (kf + b) * (lk + 1.0);
        sign_prev *= signum(r);
        // r = 0 gives an infinite quotient and the next ratio recovers B/A
        r = (bk - ck / r) / ak;
    }
    (r, sign_prev)
}

/// `P_n(x) / P_{n-1}(x)` by the upward ratio recurrence.  An interior zero of
/// `P_{n-1}` yields a signed infinity.
pub fn ratio_ttrr(p: &QuadParams, x: f64) -> f64 {
    debug_assert!(p.n >= 1);
    ratio_with_sign(p, x).0
}

/// Sign of `P_n(x)`, taken as the sign of `P_{n-1}(x)` when `x` is a zero.
pub(crate) fn sign_pn(p: &QuadParams, x: f64) -> f64 {
    let (r, s) = ratio_with_sign(p, x);
    if r == 0.0 {
        s
    } else {
        s * signum(r)
    }
}

/// `Y~'(x) / Y~(x)` for `Y~ = (1-x)^{(a+1)/2} (1+x)^{(b+1)/2} P_n(x)`.
/// Infinite at zeros of `P_n`.
pub fn log_deriv_tilde(p: &QuadParams, x: f64) -> f64 {
    let nf = p.n as f64;
    let (a, b) = (p.alpha, p.beta);
    let ends = (nf + b + 1.0) / (2.0 * (1.0 + x)) - (nf + a + 1.0) / (2.0 * (1.0 - x));
    if p.n == 0 {
        return (b + 1.0) / (2.0 * (1.0 + x)) - (a + 1.0) / (2.0 * (1.0 - x));
    }
    let r = ratio_ttrr(p, x);
    if r == 0.0 {
        return f64::INFINITY.copysign(r);
    }
    if let Some(v) = log_deriv_tilde_dd(p, x) {
        return v;
    }
    let inner = nf * (a - b) + 2.0 * (nf + a) * (nf + b) / r;
    ends + inner / ((p.l - 1.0) * (1.0 - x) * (1.0 + x))
}

// The same in double-double.  None when the recurrence passes through an
// exact zero, which the f64 path handles through its infinities.
fn log_deriv_tilde_dd(p: &QuadParams, x: f64) -> Option<f64> {
    let nf = p.n as f64;
    let (a, b) = (TwoFloat::from(p.alpha), TwoFloat::from(p.beta));
    let s = TwoFloat::new_add(p.alpha, p.beta);
    let d = TwoFloat::new_sub(p.alpha, p.beta);
    let xd = TwoFloat::from(x);
    let mut r = (d + (s + 2.0) * xd) * 0.5;
    for k in 1..p.n {
        if r.hi() == 0.0 || !r.hi().is_finite() {
            return None;
        }
        let kf = k as f64;
        let lk = s + (2.0 * kf + 1.0);
        let ak = (s + (kf + 1.0)) * (lk - 1.0) * (2.0 * (kf + 1.0));
        let bk = lk * ((lk - 1.0) * (lk + 1.0) * xd + d * s);
        let ck = (a + kf) * (b + kf) * (lk + 1.0) * 2.0;
        r = div_dd(bk - div_dd(ck, r), ak);
    }
    if r.hi() == 0.0 || !r.hi().is_finite() {
        return None;
    }
    let (omx, opx) = (TwoFloat::new_sub(1.0, x), TwoFloat::new_add(1.0, x));
    let ends = div_dd(b + (nf + 1.0), opx * 2.0) - div_dd(a + (nf + 1.0), omx * 2.0);
    let inner = d * nf + div_dd((a + nf) * (b + nf) * 2.0, r);
    let v = ends + div_dd(inner, (s + 2.0 * nf) * omx * opx);
    Some(v.hi() + v.lo())
}

/// `P_n^{(a+1,b)}(x) / P_n^{(a,b)}(x)` from the continued fraction in the
/// `alpha` direction.
pub fn cf_ratio_alpha(p: &QuadParams, x: f64, cfg: &PrecisionConfig) -> Result<RatioResult> {
    cf_ratio_alpha_omx(p, 1.0 - x, cfg)
}

/// As [`cf_ratio_alpha`], with `1 - x` supplied directly so that callers near
/// `x = 1` keep its relative accuracy.
pub(crate) fn cf_ratio_alpha_omx(
    p: &QuadParams,
    omx: f64,
    cfg: &PrecisionConfig,
) -> Result<RatioResult> {
    if p.n == 0 {
        return Ok(RatioResult {
            value: 1.0,
            terms_used: 0,
            converged: true,
        });
    }
    let nf = p.n as f64;
    let tol = cfg.cf_tol();
    let coeffs = |j: usize| {
        let g = p.alpha + j as f64;
        let den = (nf + g + p.beta + 1.0) * omx;
        let a = -2.0 * (g + nf) / den;
        let b = -1.0 - (nf * omx + 2.0 * g) / den;
        (a, b)
    };
    // modified Lentz with an empty leading term
    let mut f = LENTZ_TINY;
    let mut c = f;
    let mut d = 0.0;
    for j in 1..=CF_MAX_TERMS {
        let (a, b) = coeffs(j);
        d = b + a * d;
        if d.abs() < LENTZ_TINY {
            d = LENTZ_TINY;
        }
        c = b + a / c;
        if c.abs() < LENTZ_TINY {
            c = LENTZ_TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() <= tol {
            return Ok(RatioResult {
                value: f,
                terms_used: j,
                converged: true,
            });
        }
    }
    Err(QuadError::NoConvergence {
        what: "alpha continued fraction",
        terms: CF_MAX_TERMS,
    })
}

/// `h(theta)` with `1/h = sin(theta) Y'(theta) / Y(theta)` for the angular
/// normal form.  Infinite where that derivative vanishes.
pub fn h_theta(p: &QuadParams, theta: f64, cfg: &PrecisionConfig) -> Result<f64> {
    if !(theta > 0.0 && theta < std::f64::consts::PI) {
        return Err(QuadError::DomainError {
            what: "h_theta",
            value: theta,
        });
    }
    let sh = (0.5 * theta).sin();
    let s = sh * sh;
    let hr = cf_ratio_alpha_omx(p, 2.0 * s, cfg)?;
    let nf = p.n as f64;
    let inv = 0.5 + p.alpha + p.l * s - 2.0 * (nf + p.alpha + p.beta + 1.0) * s * hr.value;
    Ok(1.0 / inv)
}

/// Terminating `2F1(-n+1, n+a+b+2; a+2; s2)` summed in ascending order.
///
/// Away from `s2 = 0` the terms alternate and grow far beyond the sum, so
/// the series is carried in double-double arithmetic.
pub fn terminating_2f1(p: &QuadParams, s2: f64) -> f64 {
    let nf = p.n as f64;
    let c = TwoFloat::new_add(p.alpha, p.beta) + (nf + 2.0);
    let d = TwoFloat::new_add(p.alpha, 2.0);
    let mut term = TwoFloat::from(1.0);
    let mut sum = term;
    for k in 0..p.n.saturating_sub(1) {
        let kf = k as f64;
        let num = (c + kf) * (kf + 1.0 - nf) * s2;
        term = div_dd(term * num, d + kf) / (kf + 1.0);
        sum += term;
    }
    sum.hi() + sum.lo()
}

// x / y through the f64 divisor path, which is exact to double-double
// precision; the low word of y enters as a first-order correction.
pub(crate) fn div_dd(x: TwoFloat, y: TwoFloat) -> TwoFloat {
    (x / y.hi()) * TwoFloat::new_sub(1.0, y.lo() / y.hi())
}
