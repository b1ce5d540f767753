//! Log-gamma, weight moments and the logarithmic normalization constants.
//!
//! Every constant that involves gamma functions is produced in log form so
//! that large degrees and exponents never overflow before the final
//! exponentiation.

use std::f64::consts::{LN_2, PI};

use crate::error::{QuadError, Result};
use crate::params::QuadParams;
use crate::polyeval::div_dd;
use crate::scaled::Scaled;
use twofloat::TwoFloat;

/// `ln Gamma(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(QuadError::DomainError {
            what: "log_gamma",
            value: x,
        });
    }
    Ok(libm::lgamma(x))
}

fn lgamma_unchecked(x: f64) -> f64 {
    libm::lgamma(x)
}

// Bernoulli terms B_{2k} / (2k (2k-1)) of the Stirling series.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

fn stirling_tail(z: f64) -> f64 {
    let z2 = 1.0 / (z * z);
    let mut acc = 0.0;
    for c in STIRLING.iter().rev() {
        acc = acc * z2 + c;
    }
    acc / z
}

const RATIO_ASYMPTOTIC_FROM: f64 = 20.0;

/// `ln Gamma(x + d) - ln Gamma(x)` without the cancellation of subtracting two
/// large log-gamma values.
pub fn ln_gamma_ratio(x: f64, d: f64) -> f64 {
    if d == 0.0 {
        return 0.0;
    }
    let y = x + d;
    if x < RATIO_ASYMPTOTIC_FROM || y < RATIO_ASYMPTOTIC_FROM {
        return lgamma_unchecked(y) - lgamma_unchecked(x);
    }
    // (y - 1/2) ln y - (x - 1/2) ln x, rewritten around ln x
    d * x.ln() + (y - 0.5) * (d / x).ln_1p() - d + (stirling_tail(y) - stirling_tail(x))
}

/// `ln mu_0`, the log of the total mass of the weight.
pub fn log_moment0(alpha: f64, beta: f64) -> f64 {
    if let Some(m) = moment0_direct(alpha, beta) {
        return m.ln();
    }
    let (x, y) = (alpha + 1.0, beta + 1.0);
    let (lo, hi) = (x.min(y), x.max(y));
    if lo >= RATIO_ASYMPTOTIC_FROM {
        // with z = x + y the large Stirling terms pair into (x - 1/2) ln(2x/z),
        // which is small when the exponents are close
        let (x, y) = (lo, hi);
        let z = TwoFloat::new_add(x, y);
        let u = div_dd(TwoFloat::new_sub(x, y), z);
        // ln(1 + u) with the low part of u carried to first order
        let lp = |u: TwoFloat| u.hi().ln_1p() + u.lo() / (1.0 + u.hi());
        let z = z.hi() + z.lo();
        return 0.5 * (2.0 * PI).ln() + (x - 0.5) * lp(u) + (y - 0.5) * lp(-u) - 0.5 * z.ln()
            + (stirling_tail(x) + stirling_tail(y) - stirling_tail(z));
    }
    (x + y - 1.0) * LN_2 + lgamma_unchecked(lo) - ln_gamma_ratio(hi, lo)
}

// Below the overflow of Gamma the product of gamma values is accurate to a
// few ulps, where the sum of log-gammas cancels to a small result.
const DIRECT_GAMMA_BELOW: f64 = 170.0;

fn moment0_direct(alpha: f64, beta: f64) -> Option<f64> {
    let s = alpha + beta;
    if !(s + 2.0 < DIRECT_GAMMA_BELOW) {
        return None;
    }
    if let Some(m) = moment0_half_integer(alpha + 1.0, beta + 1.0) {
        return Some(m);
    }
    // the product first, so that swapping the exponents gives the same bits
    let g = libm::tgamma(alpha + 1.0) * libm::tgamma(beta + 1.0) / libm::tgamma(s + 2.0);
    let m = (s + 1.0).exp2() * g;
    (m.is_normal() && m.is_finite()).then_some(m)
}

// Gamma at a positive multiple of 1/2, as a product times sqrt(pi)^h.
fn gamma_half_integer(x: f64) -> (TwoFloat, u32) {
    let (mut t, h) = if x.fract() == 0.0 { (1.0, 0) } else { (0.5, 1) };
    let mut v = TwoFloat::from(1.0);
    while t < x {
        v *= t;
        t += 1.0;
    }
    (v, h)
}

// On the half-integer grid, which holds Legendre and both Chebyshev weights,
// the Beta function is rational or pi times rational, so mu_0 can be
// correctly rounded where a product of gamma values is off by an ulp or two.
fn moment0_half_integer(x: f64, y: f64) -> Option<f64> {
    if (2.0 * x).fract() != 0.0 || (2.0 * y).fract() != 0.0 {
        return None;
    }
    let ((gx, hx), (gy, hy), (gz, hz)) = (
        gamma_half_integer(x),
        gamma_half_integer(y),
        gamma_half_integer(x + y),
    );
    let mut b = div_dd(gx * gy, gz);
    if hx + hy > hz {
        b *= twofloat::consts::PI;
    }
    let mut e = x + y - 1.0;
    if e.fract() != 0.0 {
        b *= twofloat::consts::SQRT_2;
        e -= 0.5;
    }
    let m = libm::ldexp(b.hi() + b.lo(), e as i32);
    (m.is_normal() && m.is_finite()).then_some(m)
}

/// `mu_0` with an exponent that cannot overflow.
pub fn moment0_scaled(alpha: f64, beta: f64) -> Scaled {
    match moment0_direct(alpha, beta) {
        Some(m) => Scaled::new(m),
        None => Scaled::from_ln(log_moment0(alpha, beta)),
    }
}

/// Moment `mu_k`, `k` in `{0, 1, 2}`, of `(1-x)^alpha (1+x)^beta` on `[-1, 1]`.
pub fn moment(alpha: f64, beta: f64, k: u32) -> Result<f64> {
    if !(alpha > -1.0 && beta > -1.0) {
        return Err(QuadError::DomainError {
            what: "moment",
            value: alpha.min(beta),
        });
    }
    let s = alpha + beta;
    let mu0 = moment0_scaled(alpha, beta).to_f64();
    if !mu0.is_finite() {
        return Err(QuadError::Overflow { what: "moment" });
    }
    match k {
        0 => Ok(mu0),
        1 => Ok(mu0 * (beta - alpha) / (s + 2.0)),
        2 => Ok(mu0 * ((alpha - beta).powi(2) + s + 2.0) / ((s + 2.0) * (s + 3.0))),
        _ => Err(QuadError::DomainError {
            what: "moment order",
            value: k as f64,
        }),
    }
}

/// `ln M_{n,alpha,beta}` with
/// `M = 2^{a+b+1} Gamma(n+a+1) Gamma(n+b+1) / (n! Gamma(n+a+b+1))`.
pub fn log_m(p: &QuadParams) -> f64 {
    let n = p.n as f64;
    (p.alpha + p.beta + 1.0) * LN_2 + ln_gamma_ratio(n + 1.0, p.alpha)
        - ln_gamma_ratio(n + p.beta + 1.0, p.alpha)
}

/// `ln K_{n,alpha,beta}`, the constant of the hypergeometric form of the
/// weights near `x = 1`:
/// `K = (2 (n-1)! / ((n+a+b+1) (a+2)_{n-1}))^2 M`.
pub fn log_k(p: &QuadParams) -> f64 {
    let n = p.n as f64;
    // ln (n-1)! - ln (a+2)_{n-1} = ln Gamma(n) - ln Gamma(n+a+1) + ln Gamma(a+2)
    let inner = LN_2 - (n + p.alpha + p.beta + 1.0).ln() - ln_gamma_ratio(n, p.alpha + 1.0)
        + lgamma_unchecked(p.alpha + 2.0);
    2.0 * inner + log_m(p)
}

// Up to this degree K is a short rational product times mu_0, evaluated in
// double-double; the log form loses about |ln K| ulps.
const DIRECT_K_UP_TO: usize = 100;

fn k_direct(p: &QuadParams) -> Option<Scaled> {
    if p.n > DIRECT_K_UP_TO {
        return None;
    }
    let (a, b, n) = (p.alpha, p.beta, p.n);
    let ab = TwoFloat::new_add(a, b);
    let mut prod = TwoFloat::from(1.0);
    for k in 1..=n {
        let kf = k as f64;
        let mut f = TwoFloat::new_add(kf, a) * TwoFloat::new_add(kf, b);
        let mut d = TwoFloat::from(kf);
        if k > 1 {
            d *= ab + kf;
        }
        if k < n {
            let r = div_dd(TwoFloat::from(kf), TwoFloat::new_add(kf + 1.0, a));
            f *= r * r;
        }
        prod *= div_dd(f, d);
    }
    let c = div_dd(TwoFloat::from(2.0), ab + (n as f64 + 1.0));
    prod *= c * c;
    let v = prod.hi() + prod.lo();
    v.is_normal()
        .then(|| moment0_scaled(p.alpha, p.beta) * Scaled::new(v))
}

/// `K_{n,alpha,beta}` with an exponent that cannot overflow.
pub fn k_scaled(p: &QuadParams) -> Scaled {
    k_direct(p).unwrap_or_else(|| Scaled::from_ln(log_k(p)))
}
