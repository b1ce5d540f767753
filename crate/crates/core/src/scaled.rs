//! Positive numbers with an unbounded binary exponent.
//!
//! Unnormalized weights such as `(1-x)^alpha (1+x)^beta / Y'^2` leave the
//! range of f64 for large exponents.  Carrying their logarithm instead costs
//! about `|ln w|` ulps, which is tens of ulps once `beta` is in the tens.
//! A mantissa and an integer exponent keep the range without that loss.

use std::f64::consts::LN_2;
use std::ops::{Div, Mul};

use twofloat::TwoFloat;

/// The value `m * 2^e`, with `m` in `[0.5, 1)` once normalized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub m: f64,
    pub e: i64,
}

impl Scaled {
    /// `v` itself; `v` must be positive and finite.
    pub fn new(v: f64) -> Self {
        Scaled { m: v, e: 0 }.normalized()
    }

    fn normalized(self) -> Self {
        let (m, e) = libm::frexp(self.m);
        Scaled {
            m,
            e: self.e + e as i64,
        }
    }

    /// `exp(l)`, as accurate as `l` itself.
    pub fn from_ln(l: f64) -> Self {
        let k = (l / LN_2).floor();
        let r = TwoFloat::from(l) - twofloat::consts::LN_2 * k;
        Scaled {
            m: r.hi().exp() * (1.0 + r.lo()),
            e: k as i64,
        }
        .normalized()
    }

    /// `c^a` for positive `c`, within a few ulps for `|a|` up to about 2000.
    /// Beyond that the mantissa power underflows and the log form is used.
    pub fn pow(c: f64, a: f64) -> Self {
        if a == 0.0 {
            return Scaled::new(1.0);
        }
        let (mut m, mut e) = libm::frexp(c);
        // centering the mantissa on 1 delays underflow of its power
        if m < std::f64::consts::FRAC_1_SQRT_2 {
            m *= 2.0;
            e -= 1;
        }
        let pm = m.powf(a);
        if !pm.is_normal() {
            return Scaled::from_ln(a * c.ln());
        }
        // a * e is exact in double-double; its integer part goes to the exponent
        let t = TwoFloat::new_mul(a, e as f64);
        let k = t.hi().floor();
        let f = (t.hi() - k) + t.lo();
        Scaled {
            m: pm * f.exp2(),
            e: k as i64,
        }
        .normalized()
    }

    pub fn recip(self) -> Self {
        Scaled {
            m: 1.0 / self.m,
            e: -self.e,
        }
        .normalized()
    }

    pub fn ln(self) -> f64 {
        self.m.ln() + self.e as f64 * LN_2
    }

    /// `self / 2^shift` as an f64; underflows to subnormals or zero.
    pub fn to_f64_shifted(self, shift: i64) -> f64 {
        let e = (self.e - shift).clamp(i32::MIN as i64, i32::MAX as i64);
        libm::ldexp(self.m, e as i32)
    }

    pub fn to_f64(self) -> f64 {
        self.to_f64_shifted(0)
    }
}

impl Mul for Scaled {
    type Output = Scaled;
    fn mul(self, o: Scaled) -> Scaled {
        Scaled {
            m: self.m * o.m,
            e: self.e + o.e,
        }
        .normalized()
    }
}

impl Div for Scaled {
    type Output = Scaled;
    fn div(self, o: Scaled) -> Scaled {
        Scaled {
            m: self.m / o.m,
            e: self.e - o.e,
        }
        .normalized()
    }
}
