//! Normal-form coefficients and the Taylor propagator for
//! `Y~ = (1-x)^{(a+1)/2} (1+x)^{(b+1)/2} P_n(x)`.
//!
//! `Y~` solves `Q Y~'' + R Y~ = 0` with `Q = 4 (1-x^2)^2`, so its Taylor
//! coefficients obey a five-term recurrence with polynomial data.

use crate::error::{QuadError, Result};
use twofloat::TwoFloat;

use crate::params::{PrecisionConfig, QuadParams};
use crate::polyeval::div_dd;

/// Change of variable whose normal form is queried.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    /// `z = x`.
    Trivial,
    /// `x = cos(theta)`.
    Angular,
    /// `x = tanh(z)`.
    TanhR,
}

/// `Omega` of the normal form `Y'' + Omega Y = 0` for the given transform.
/// `coord` is `x` for `Trivial` and `TanhR`, `theta` for `Angular`.
pub fn omega(t: Transform, p: &QuadParams, coord: f64) -> Result<f64> {
    let (a2, b2) = (p.alpha * p.alpha, p.beta * p.beta);
    let l2 = p.l * p.l;
    match t {
        Transform::Trivial | Transform::TanhR => {
            if !(coord > -1.0 && coord < 1.0) {
                return Err(QuadError::DomainError {
                    what: "omega",
                    value: coord,
                });
            }
            let (omx, opx) = (1.0 - coord, 1.0 + coord);
            if t == Transform::TanhR {
                Ok(omega_tanh(p, omx, opx))
            } else {
                let r = (l2 - 1.0) * omx * opx - 2.0 * (a2 - 1.0) * opx - 2.0 * (b2 - 1.0) * omx;
                let q = omx * opx;
                Ok(r / (4.0 * q * q))
            }
        }
        Transform::Angular => {
            if !(coord > 0.0 && coord < std::f64::consts::PI) {
                return Err(QuadError::DomainError {
                    what: "omega",
                    value: coord,
                });
            }
            let s = (0.5 * coord).sin().powi(2);
            let c = (0.5 * coord).cos().powi(2);
            Ok(0.25 * (l2 + (0.25 - a2) / s + (0.25 - b2) / c))
        }
    }
}

/// `Omega` of the tanh transform from `1 - x` and `1 + x`.
pub(crate) fn omega_tanh(p: &QuadParams, omx: f64, opx: f64) -> f64 {
    let (a2, b2) = (p.alpha * p.alpha, p.beta * p.beta);
    0.25 * ((p.l * p.l - 1.0) * omx * opx - 2.0 * a2 * opx - 2.0 * b2 * omx)
}

/// Expansion point with the values of `Y~` and `Y~'` there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaylorSeed {
    pub x: f64,
    pub y: f64,
    pub yp: f64,
}

/// Values transported by [`taylor_step`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaylorResult {
    pub y: f64,
    pub yp: f64,
    /// Terms summed, over all substeps.
    pub terms: usize,
    /// Distance from the original center to the nearest endpoint.
    pub radius: f64,
}

// Derivatives of Q and R at the center, Taylor-scaled for the recurrence.
struct OdeData {
    q0: f64,
    q1: f64,
    q2: f64,
    q3: f64,
    q4: f64,
    r0: f64,
    r1: f64,
    r2: f64,
}

impl OdeData {
    fn at(p: &QuadParams, x: f64) -> Self {
        let (a2, b2) = (p.alpha * p.alpha, p.beta * p.beta);
        let l2m1 = p.l * p.l - 1.0;
        let (omx, opx) = (1.0 - x, 1.0 + x);
        let s = omx * opx;
        Self {
            q0: 4.0 * s * s,
            q1: -16.0 * x * s,
            q2: -16.0 + 48.0 * x * x,
            q3: 96.0 * x,
            q4: 96.0,
            r0: l2m1 * s - 2.0 * (a2 - 1.0) * opx - 2.0 * (b2 - 1.0) * omx,
            r1: -2.0 * l2m1 * x - 2.0 * (a2 - 1.0) + 2.0 * (b2 - 1.0),
            r2: -2.0 * l2m1,
        }
    }

    // a_{j+2} from a_{j+1}, a_j, a_{j-1}, a_{j-2}, each already multiplied by h^index;
    // returns the same scaling for index j + 2.
    #[inline]
    fn next(&self, j: usize, h: f64, b: [f64; 4]) -> f64 {
        let jf = j as f64;
        let [b1, b0, bm1, bm2] = b;
        let c1 = (jf + 1.0) * jf * self.q1;
        let c0 = 0.5 * jf * (jf - 1.0) * self.q2 + self.r0;
        let cm1 = (jf - 1.0) * (jf - 2.0) / 6.0 * self.q3 + self.r1;
        let cm2 = 0.5 * ((jf - 2.0) * (jf - 3.0) / 12.0 * self.q4 + self.r2);
        let num = h * (c1 * b1 + h * (c0 * b0 + h * (cm1 * bm1 + h * cm2 * bm2)));
        -num / ((jf + 2.0) * (jf + 1.0) * self.q0)
    }
}

/// Scaled derivatives `a_j = Y~^{(j)}(x) / j!`, `j = 0..=n_terms`.
pub fn taylor_coeffs(p: &QuadParams, seed: &TaylorSeed, n_terms: usize) -> Vec<f64> {
    let d = OdeData::at(p, seed.x);
    let mut a = Vec::with_capacity(n_terms + 1);
    a.push(seed.y);
    if n_terms >= 1 {
        a.push(seed.yp);
    }
    for j in 0..n_terms.saturating_sub(1) {
        let get = |k: isize| if k >= 0 { a[k as usize] } else { 0.0 };
        let ji = j as isize;
        let next = d.next(j, 1.0, [get(ji + 1), get(ji), get(ji - 1), get(ji - 2)]);
        a.push(next);
    }
    a
}

const NEGLIGIBLE_RUN: usize = 3;

// The propagator works in double-double: the step length is the exact
// difference of two centers and rounding does not pile up along a sweep.
struct OdeDd {
    q0_inv: TwoFloat,
    q1: TwoFloat,
    q2: TwoFloat,
    x: TwoFloat,
    r0: TwoFloat,
    r1: TwoFloat,
    r2: TwoFloat,
}

impl OdeDd {
    fn at(p: &QuadParams, x: TwoFloat) -> Self {
        let (omx, opx) = (1.0 - x, 1.0 + x);
        let s = omx * opx;
        let a2m1 = TwoFloat::new_mul(p.alpha, p.alpha) - 1.0;
        let b2m1 = TwoFloat::new_mul(p.beta, p.beta) - 1.0;
        let l = TwoFloat::new_add(p.alpha, p.beta) + (2.0 * p.n as f64 + 1.0);
        let l2m1 = l * l - 1.0;
        Self {
            q0_inv: div_dd(TwoFloat::from(1.0), s * s * 4.0),
            q1: x * s * -16.0,
            q2: x * x * 48.0 - 16.0,
            x,
            r0: l2m1 * s - a2m1 * opx * 2.0 - b2m1 * omx * 2.0,
            r1: (b2m1 - a2m1 - l2m1 * x) * 2.0,
            r2: l2m1 * -2.0,
        }
    }

    // as OdeData::next, with q3 = 96 x and q4 = 96 folded into the integer factors
    #[inline]
    fn next(&self, j: usize, h: TwoFloat, b: [TwoFloat; 4]) -> TwoFloat {
        let jf = j as f64;
        let [b1, b0, bm1, bm2] = b;
        let c1 = self.q1 * ((jf + 1.0) * jf);
        let c0 = self.q2 * (0.5 * jf * (jf - 1.0)) + self.r0;
        let cm1 = self.x * (16.0 * (jf - 1.0) * (jf - 2.0)) + self.r1;
        let cm2 = self.r2 * 0.5 + 4.0 * (jf - 2.0) * (jf - 3.0);
        let num = h * (c1 * b1 + h * (c0 * b0 + h * (cm1 * bm1 + h * (cm2 * bm2))));
        -(num * self.q0_inv) / ((jf + 2.0) * (jf + 1.0))
    }
}

// Where a center lies: next to x = 1 its complement is the exact record.
fn position(x: f64, omx: f64) -> TwoFloat {
    if omx < 0.5 {
        1.0 - TwoFloat::from(omx)
    } else {
        TwoFloat::from(x)
    }
}

// One series evaluation with |h| <= radius / 2.
fn sum_series(
    d: &OdeDd,
    y: TwoFloat,
    yp: TwoFloat,
    h: TwoFloat,
    cfg: &PrecisionConfig,
) -> Result<(TwoFloat, TwoFloat, usize)> {
    // b_j = a_j h^j
    let zero = TwoFloat::from(0.0);
    let (mut bm2, mut bm1, mut b0, mut b1) = (zero, zero, y, yp * h);
    let mut sy = y + b1;
    let mut shp = b1;
    let mut quiet = 0;
    let mut j = 0;
    loop {
        let b2 = d.next(j, h, [b1, b0, bm1, bm2]);
        let idx = (j + 2) as f64;
        sy += b2;
        shp += b2 * idx;
        let bound = cfg.taylor_tol * (sy.hi().abs() + shp.hi().abs());
        let last = b2.hi().abs();
        if last <= bound && idx * last <= bound {
            quiet += 1;
            if quiet == NEGLIGIBLE_RUN {
                return Ok((sy, div_dd(shp, h), j + 3));
            }
        } else {
            quiet = 0;
        }
        j += 1;
        if j + 3 > cfg.max_taylor_terms {
            return Err(QuadError::NoConvergence {
                what: "Taylor series",
                terms: j + 2,
            });
        }
        bm2 = bm1;
        bm1 = b0;
        b0 = b1;
        b1 = b2;
    }
}

/// Transports `(Y~, Y~')` from `seed.x` to `seed.x + h`, splitting the step
/// so that each piece stays within half the local radius of convergence.
pub fn taylor_step(
    p: &QuadParams,
    seed: &TaylorSeed,
    h: f64,
    cfg: &PrecisionConfig,
) -> Result<TaylorResult> {
    let radius = (1.0 - seed.x).min(1.0 + seed.x);
    if h == 0.0 {
        return Ok(TaylorResult {
            y: seed.y,
            yp: seed.yp,
            terms: 1,
            radius,
        });
    }
    if !(h.abs() < radius) {
        return Err(QuadError::StepOutOfRadius { step: h, radius });
    }
    let target = seed.x + h;
    let r = step_between(p, seed, 1.0 - seed.x, target, 1.0 - target, cfg)?;
    Ok(TaylorResult { radius, ..r })
}

/// As [`taylor_step`] toward `x1`, with `1 - x` given separately at both
/// ends.  Next to `x = 1` the step is measured on the complements, which
/// resolves it far below one ulp of `x`.  The target may lie beyond the
/// radius of the first center; the substeps stay inside their own.
pub(crate) fn step_between(
    p: &QuadParams,
    seed: &TaylorSeed,
    omx0: f64,
    x1: f64,
    omx1: f64,
    cfg: &PrecisionConfig,
) -> Result<TaylorResult> {
    let near_one = omx1 < 0.5;
    let (mut x, mut omx) = (seed.x, omx0);
    let (mut y, mut yp) = (TwoFloat::from(seed.y), TwoFloat::from(seed.yp));
    let remaining = |x: f64, omx: f64| if near_one { omx - omx1 } else { x1 - x };
    let radius = omx0.min(2.0 - omx0);
    let target = position(x1, omx1);
    let mut from = position(x, omx);
    if target == from {
        return Ok(TaylorResult {
            y: seed.y,
            yp: seed.yp,
            terms: 1,
            radius,
        });
    }
    let mut terms = 0;
    loop {
        let rem = remaining(x, omx);
        let local = omx.min(2.0 - omx);
        let last = rem.abs() <= 0.5 * local;
        let hs = (0.5 * local).copysign(rem);
        let (nx, nomx) = if last {
            (x1, omx1)
        } else if near_one {
            (1.0 - (omx - hs), omx - hs)
        } else {
            (x + hs, 1.0 - (x + hs))
        };
        let to = if last { target } else { position(nx, nomx) };
        let h = to - from;
        if h.hi() != 0.0 {
            let (ny, nyp, t) = sum_series(&OdeDd::at(p, from), y, yp, h, cfg)?;
            y = ny;
            yp = nyp;
            terms += t;
        }
        if last {
            break;
        }
        (x, omx, from) = (nx, nomx, to);
    }
    Ok(TaylorResult {
        y: y.hi() + y.lo(),
        yp: yp.hi() + yp.lo(),
        terms,
        radius,
    })
}

/// Largest `|a_j|^{1/j}` over the last quarter of the coefficients; tends to
/// `1 / min(1-x, 1+x)` unless the solution is a polynomial.
pub fn growth_diagnostic(coeffs: &[f64], _x: f64) -> f64 {
    let n = coeffs.len();
    let start = (3 * n / 4).max(1);
    coeffs[start..]
        .iter()
        .enumerate()
        .map(|(i, &a)| a.abs().powf(1.0 / (start + i) as f64))
        .fold(0.0, f64::max)
}
