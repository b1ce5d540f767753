//! Reference rules from the Jacobi matrix and accuracy measures.

use crate::error::{QuadError, Result};
use crate::params::QuadParams;
use crate::rule::QuadratureRule;
use crate::special::{log_moment0, moment};

/// Symmetric tridiagonal matrix of the monic recurrence.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalJacobiMatrix {
    pub diag: Vec<f64>,
    /// `offdiag[k]` couples rows `k` and `k + 1`.
    pub offdiag: Vec<f64>,
    pub mu0: f64,
}

/// Recurrence coefficients `a_k` and `b_k` of the monic Jacobi polynomials,
/// `p_{k+1} = (x - a_k) p_k - b_k p_{k-1}`.
pub fn recurrence_coefficients(alpha: f64, beta: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let (a, b) = (alpha, beta);
    let s = a + b;
    let diag = (0..n)
        .map(|k| {
            if k == 0 {
                (b - a) / (s + 2.0)
            } else {
                let t = 2.0 * k as f64 + s;
                (b - a) * (b + a) / (t * (t + 2.0))
            }
        })
        .collect();
    let off = (1..n)
        .map(|k| {
            if k == 1 {
                4.0 * (1.0 + a) * (1.0 + b) / ((s + 2.0).powi(2) * (s + 3.0))
            } else {
                let kf = k as f64;
                let t = 2.0 * kf + s;
                4.0 * kf * (kf + a) * (kf + b) * (kf + s) / (t * t * (t + 1.0) * (t - 1.0))
            }
        })
        .collect();
    (diag, off)
}

pub fn jacobi_matrix(p: &QuadParams) -> Result<TridiagonalJacobiMatrix> {
    let (diag, b) = recurrence_coefficients(p.alpha, p.beta, p.n);
    Ok(TridiagonalJacobiMatrix {
        diag,
        offdiag: b.iter().map(|v| v.sqrt()).collect(),
        mu0: moment(p.alpha, p.beta, 0)?,
    })
}

const GW_MAX_N: usize = 10_000;
const QL_MAX_SWEEPS: usize = 60;

// Implicit QL with Wilkinson-type shifts; returns eigenvalues and the first
// component of each normalized eigenvector.
fn ql_first_row(mut d: Vec<f64>, off: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = d.len();
    let mut e = off.to_vec();
    e.push(0.0);
    let mut v = vec![0.0; n];
    v[0] = 1.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > QL_MAX_SWEEPS {
                return Err(QuadError::EigenNoConvergence);
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let t = v[i + 1];
                v[i + 1] = s * v[i] + c * t;
                v[i] = c * v[i] - s * t;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok((d, v))
}

// Newton steps on the monic recurrence.  Eigenvalues carry an absolute
// error of a few ulps of the matrix norm; this restores relative accuracy
// for zeros close to the origin.
fn polish(diag: &[f64], b: &[f64], mut x: f64) -> f64 {
    for _ in 0..2 {
        let (mut p0, mut p1) = (0.0, 1.0);
        let (mut d0, mut d1) = (0.0, 0.0);
        for (k, &a) in diag.iter().enumerate() {
            let bk = if k == 0 { 0.0 } else { b[k - 1] };
            let p2 = (x - a) * p1 - bk * p0;
            let d2 = p1 + (x - a) * d1 - bk * d0;
            (p0, p1, d0, d1) = (p1, p2, d1, d2);
            let big = p1.abs().max(d1.abs());
            if !(1e-100..=1e100).contains(&big) && big > 0.0 {
                let s = big.recip();
                (p0, p1, d0, d1) = (p0 * s, p1 * s, d0 * s, d1 * s);
            }
        }
        let step = p1 / d1;
        if !(step.abs() <= 1e-10) {
            break;
        }
        x -= step;
    }
    x
}

/// Golub–Welsch rule: eigenvalues of the Jacobi matrix, weights from the
/// first eigenvector components.
pub fn golub_welsch(p: &QuadParams) -> Result<QuadratureRule> {
    if p.n > GW_MAX_N {
        return Err(QuadError::DomainError {
            what: "golub_welsch degree",
            value: p.n as f64,
        });
    }
    let m = jacobi_matrix(p)?;
    let (diag, b) = recurrence_coefficients(p.alpha, p.beta, p.n);
    let (d, v) = ql_first_row(m.diag, &m.offdiag)?;
    let d: Vec<f64> = d.into_iter().map(|x| polish(&diag, &b, x)).collect();
    let mut pairs: Vec<(f64, f64)> = d
        .into_iter()
        .zip(v.into_iter().map(|z| m.mu0 * z * z))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (nodes, weights) = pairs.into_iter().unzip();
    Ok(QuadratureRule::new(nodes, weights))
}

/// Compensated sum.
fn neumaier<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    let (mut s, mut c) = (0.0f64, 0.0f64);
    for v in it {
        let t = s + v;
        if s.abs() >= v.abs() {
            c += (s - t) + v;
        } else {
            c += (v - t) + s;
        }
        s = t;
    }
    s + c
}

/// `mu_k / mu_0` for `k = 0..=kmax`, from the recursion obtained by
/// integrating `x^k (1-x)^{alpha+1} (1+x)^{beta+1}` by parts.
pub fn moment_ratios(alpha: f64, beta: f64, kmax: usize) -> Vec<f64> {
    let mut m = Vec::with_capacity(kmax + 1);
    m.push(1.0);
    for k in 0..kmax {
        let kf = k as f64;
        let prev = if k == 0 { 0.0 } else { m[k - 1] };
        m.push(((beta - alpha) * m[k] + kf * prev) / (alpha + beta + 2.0 + kf));
    }
    m
}

/// Largest relative defect `|sum w x^k - mu_k| / sum w |x|^k`, `k <= kmax`.
pub fn exactness_check(rule: &QuadratureRule, p: &QuadParams, kmax: usize) -> f64 {
    let log_mu0 = log_moment0(p.alpha, p.beta);
    let m = moment_ratios(p.alpha, p.beta, kmax);
    let w: Vec<f64> = rule
        .weights
        .iter()
        .map(|&w| (w.ln() - log_mu0).exp())
        .collect();
    let mut worst = 0.0f64;
    let mut pw: Vec<f64> = w.clone();
    for (k, &mk) in m.iter().enumerate() {
        if k > 0 {
            for (v, &x) in pw.iter_mut().zip(&rule.nodes) {
                *v *= x;
            }
        }
        let sum = neumaier(pw.iter().copied());
        let abs = neumaier(pw.iter().map(|v| v.abs()));
        let d = (sum - mk).abs() / abs;
        worst = worst.max(d);
    }
    worst
}

/// Node and weight discrepancies of `a` measured against `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RuleErrors {
    /// Maximum relative node error.
    pub nodes_mr: f64,
    /// Maximum absolute weight error over the largest weight.
    pub weights_rm: f64,
    /// Maximum relative weight error.
    pub weights_mr: f64,
}

pub fn compare_rules(a: &QuadratureRule, b: &QuadratureRule) -> Result<RuleErrors> {
    if a.len() != b.len() {
        return Err(QuadError::LengthMismatch(a.len(), b.len()));
    }
    let nodes_mr = a
        .nodes
        .iter()
        .zip(&b.nodes)
        .map(|(&x, &y)| {
            if y == 0.0 {
                (x - y).abs()
            } else {
                (1.0 - x / y).abs()
            }
        })
        .fold(0.0, f64::max);
    let wmax = b.weights.iter().fold(0.0f64, |m, &w| m.max(w));
    let weights_rm = a
        .weights
        .iter()
        .zip(&b.weights)
        .map(|(&x, &y)| (x - y).abs())
        .fold(0.0, f64::max)
        / wmax;
    let weights_mr = a
        .weights
        .iter()
        .zip(&b.weights)
        .map(|(&x, &y)| (1.0 - x / y).abs())
        .fold(0.0, f64::max);
    Ok(RuleErrors {
        nodes_mr,
        weights_rm,
        weights_mr,
    })
}
