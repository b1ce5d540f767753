//! General Jacobi weights: two sweeps away from the maximum of `Omega`,
//! angular refinement of the extreme nodes and moment normalization.

use crate::error::{QuadError, Result};
use crate::fixedpoint::{converge, refine_angular, Iterate, NodeSolution, Outcome};
use crate::params::{make_params, PrecisionConfig, QuadParams};
use twofloat::TwoFloat;

use crate::polyeval::{div_dd, log_deriv_tilde, ratio_with_sign, sign_pn, terminating_2f1};
use crate::rule::{NodeRecord, NodeSource, QuadratureRule, RunStats};
use crate::scaled::Scaled;
use crate::special::{k_scaled, moment0_scaled};
use crate::taylor::{step_between, TaylorSeed};

/// Starting data at `x_e`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XeSeed {
    pub seed: TaylorSeed,
    /// `x_e` is itself a zero of `P_n`.
    pub is_node: bool,
}

/// Seed values at `x_e`, scaled so that the larger of `Y~`, `Y~'` is one.
pub fn seed_at_xe(p: &QuadParams) -> XeSeed {
    let x = p.x_e;
    let r = log_deriv_tilde(p, x);
    let (y, yp, is_node) = if r.is_infinite() {
        (0.0, 1.0, true)
    } else if r.abs() <= 1.0 {
        (1.0, r, false)
    } else {
        (1.0 / r, 1.0, false)
    };
    XeSeed {
        seed: TaylorSeed { x, y, yp },
        is_node,
    }
}

/// Why a sweep stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    OmegaNonpositive,
    BoundaryGuard,
    CountCap,
}

/// Zeros found by one forward sweep, in increasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutput {
    pub nodes: Vec<f64>,
    pub one_minus_x: Vec<f64>,
    pub yprimes: Vec<f64>,
    pub iters: Vec<usize>,
    pub terms: Vec<usize>,
    pub count: usize,
    pub terminated_by: Termination,
    ys: Vec<f64>,
}

impl SweepOutput {
    fn push(&mut self, x: f64, omx: f64, y: f64, yp: f64, iters: usize, terms: usize) {
        self.nodes.push(x);
        self.one_minus_x.push(omx);
        self.ys.push(y);
        self.yprimes.push(yp);
        self.iters.push(iters);
        self.terms.push(terms);
        self.count += 1;
    }
}

/// Collects consecutive zeros above `seed.x`.  A seed with `y = 0` sits on a
/// zero, which is stepped over without being recorded.
pub fn sweep_from_xe(
    p: &QuadParams,
    seed: &TaylorSeed,
    max_nodes: usize,
    cfg: &PrecisionConfig,
) -> Result<SweepOutput> {
    let mut out = SweepOutput {
        nodes: Vec::new(),
        one_minus_x: Vec::new(),
        yprimes: Vec::new(),
        iters: Vec::new(),
        terms: Vec::new(),
        count: 0,
        terminated_by: Termination::CountCap,
        ys: Vec::new(),
    };
    let mut it = Iterate::new(seed.x, seed.y, seed.yp);
    while out.count < max_nodes {
        match converge(p, it, cfg, None)? {
            Outcome::Node(s) => {
                out.push(s.x, s.one_minus_x, s.y, s.yp, s.iters, s.terms);
                it = Iterate::at_zero(&s);
            }
            Outcome::OmegaEnd => {
                out.terminated_by = Termination::OmegaNonpositive;
                return Ok(out);
            }
            Outcome::Boundary => {
                out.terminated_by = Termination::BoundaryGuard;
                return Ok(out);
            }
        }
    }
    Ok(out)
}

fn theta_from_complement(c: f64) -> f64 {
    2.0 * (0.5 * c).sqrt().asin()
}

// The zero between the last node of a sweep and x = 1 lies where Omega is no
// longer positive.  It is bracketed by the sign of P_n and then polished in
// the angular variable.  `from` is the last point reached, with `c0 = 1 - x`.
pub(crate) fn tail_zero(
    p: &QuadParams,
    from: &TaylorSeed,
    c0: f64,
    cfg: &PrecisionConfig,
) -> Result<Option<NodeSolution>> {
    let (mut lo, mut hi) = (0.0, c0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if 1.0 - mid == 1.0 - lo || 1.0 - mid == 1.0 - hi {
            break;
        }
        if sign_pn(p, 1.0 - mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let c_guess = 0.5 * (lo + hi);
    let (theta, iters) = refine_angular(p, theta_from_complement(c_guess), cfg)?;
    let c = 2.0 * (0.5 * theta).sin().powi(2);
    if !(c > 0.0 && c < c0) {
        return Ok(None);
    }
    let x = if c < 0.5 { 1.0 - c } else { theta.cos() };
    let r = step_between(p, from, c0, x, c, cfg)?;
    Ok(Some(NodeSolution {
        x,
        one_minus_x: c,
        y: r.y,
        yp: r.yp,
        iters,
        terms: r.terms,
    }))
}

fn complete_tail(
    p: &QuadParams,
    out: &mut SweepOutput,
    seed: &TaylorSeed,
    cfg: &PrecisionConfig,
) -> Result<()> {
    let (x0, c0, y0, yp0) = match out.count {
        0 => (seed.x, 1.0 - seed.x, seed.y, seed.yp),
        k => (
            out.nodes[k - 1],
            out.one_minus_x[k - 1],
            out.ys[k - 1],
            out.yprimes[k - 1],
        ),
    };
    let Some(z) = tail_zero(
        p,
        &TaylorSeed {
            x: x0,
            y: y0,
            yp: yp0,
        },
        c0,
        cfg,
    )?
    else {
        return Err(QuadError::CountMismatch {
            expected: out.count + 1,
            found: out.count,
        });
    };
    out.push(z.x, z.one_minus_x, z.y, z.yp, z.iters, z.terms);
    Ok(())
}

// The weight given by the hypergeometric form at angle `theta`.
fn scaled_extreme_weight(p: &QuadParams, theta: f64) -> Scaled {
    let s2 = (0.5 * theta).sin().powi(2);
    let d = Scaled::new((theta.sin() * terminating_2f1(p, s2)).abs());
    k_scaled(p) / (d * d)
}

/// Weight of the node `cos(theta)` from the hypergeometric representation.
/// Zero or infinite where the value leaves the f64 range.
pub fn extreme_weight(p: &QuadParams, theta: f64) -> f64 {
    scaled_extreme_weight(p, theta).to_f64()
}

/// When to polish extreme nodes in the angular variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Refine {
    /// Next to each endpoint whose exponent is negative.
    #[default]
    Auto,
    On,
    Off,
}

/// How weights are normalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// `Mu0` when both exponents exceed `-3/4`, `Moments` otherwise.
    #[default]
    Auto,
    Mu0,
    Moments,
}

/// Normalization actually applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// Refined weights taken as absolute, the rest scaled to total mass.
    Mu0WithExplicitK,
    /// One scale per node group, fitted to the first moments.
    ThreeMoments,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct JacobiOptions {
    pub cfg: PrecisionConfig,
    pub refine: Refine,
    pub normalization: Normalization,
}

/// A complete Gauss–Jacobi rule.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralRule {
    pub params: QuadParams,
    pub rule: QuadratureRule,
    /// `1 - x_i` and `1 + x_i` at full relative accuracy.
    pub one_minus_x: Vec<f64>,
    pub one_plus_x: Vec<f64>,
    pub refined_low: usize,
    pub refined_high: usize,
    pub scheme: Scheme,
    pub stats: RunStats,
    pub flushed_underflow_count: usize,
}

/// Nodes with unnormalized weights.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NodeSet {
    pub x: Vec<f64>,
    pub w: Vec<Scaled>,
}

impl NodeSet {
    fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

/// Final weights of the three node groups.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedWeights {
    pub taylor: Vec<f64>,
    pub high: Vec<f64>,
    pub low: Vec<f64>,
    pub flushed: usize,
}

// The moment system is solved in double-double.  When the refined nodes hold
// nearly all of the mass the Taylor scale is ill conditioned, and f64
// rounding in the sums would be amplified by the same factor.
fn moment_ratios(p: &QuadParams) -> [TwoFloat; 3] {
    let s2 = TwoFloat::new_add(p.alpha, p.beta) + 2.0;
    let d = TwoFloat::new_sub(p.alpha, p.beta);
    let m1 = div_dd(-d, s2);
    let m2 = div_dd(d * d + s2, s2 * (s2 + 1.0));
    [TwoFloat::from(1.0), m1, m2]
}

// Gaussian elimination with full pivoting on the leading g x g block.
fn solve_small(mut a: [[TwoFloat; 3]; 3], mut rhs: [TwoFloat; 3], g: usize) -> Result<[f64; 3]> {
    let norm = a[..g]
        .iter()
        .flat_map(|r| r[..g].iter())
        .fold(0.0f64, |m, v| m.max(v.hi().abs()));
    let mut perm = [0usize, 1, 2];
    for k in 0..g {
        let (mut pi, mut pj, mut best) = (k, k, 0.0);
        for (i, row) in a.iter().enumerate().take(g).skip(k) {
            for (j, v) in row.iter().enumerate().take(g).skip(k) {
                if v.hi().abs() > best {
                    (pi, pj, best) = (i, j, v.hi().abs());
                }
            }
        }
        if !(best > 1e3 * f64::EPSILON * norm) {
            return Err(QuadError::SingularNormalization);
        }
        a.swap(k, pi);
        rhs.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        perm.swap(k, pj);
        for i in k + 1..g {
            let f = div_dd(a[i][k], a[k][k]);
            let pivot = a[k];
            for (v, &q) in a[i][k..g].iter_mut().zip(&pivot[k..g]) {
                *v -= f * q;
            }
            rhs[i] -= f * rhs[k];
        }
    }
    let mut z = [TwoFloat::from(0.0); 3];
    for k in (0..g).rev() {
        let mut s = rhs[k];
        for j in k + 1..g {
            s -= a[k][j] * z[j];
        }
        z[k] = div_dd(s, a[k][k]);
    }
    let mut out = [0.0; 3];
    for k in 0..g {
        out[perm[k]] = z[k].hi() + z[k].lo();
    }
    Ok(out)
}

fn flush(w: Scaled, count: &mut usize) -> f64 {
    let v = w.to_f64();
    if v < f64::MIN_POSITIVE {
        *count += 1;
        0.0
    } else {
        v
    }
}

// The group relative to its largest binary exponent, which is returned too.
fn relative(s: &NodeSet) -> (i64, impl Iterator<Item = f64> + '_) {
    let top = s.w.iter().map(|w| w.e).max().unwrap_or(0);
    (top, s.w.iter().map(move |w| w.to_f64_shifted(top)))
}

/// Turns unnormalized weights into final weights.  Under
/// `Mu0WithExplicitK` the refined groups are already absolute; under
/// `ThreeMoments` every nonempty group receives its own scale.
pub fn normalize_general(
    p: &QuadParams,
    scheme: Scheme,
    taylor: &NodeSet,
    high: &NodeSet,
    low: &NodeSet,
) -> Result<NormalizedWeights> {
    let mu0 = moment0_scaled(p.alpha, p.beta);
    let mut flushed = 0;
    let mut fin = |s: &NodeSet, f: Scaled| -> Vec<f64> {
        s.w.iter().map(|&w| flush(w * f, &mut flushed)).collect()
    };
    match scheme {
        Scheme::Mu0WithExplicitK => {
            let refined = high
                .w
                .iter()
                .chain(&low.w)
                .fold(TwoFloat::from(0.0), |acc, &w| acc + (w / mu0).to_f64());
            let rest = {
                let r = 1.0 - refined;
                r.hi() + r.lo()
            };
            let taylor_w = if taylor.is_empty() {
                Vec::new()
            } else {
                if !(rest > 0.0) {
                    return Err(QuadError::SingularNormalization);
                }
                let (top, vs) = relative(taylor);
                let sum = vs.fold(TwoFloat::from(0.0), |acc, v| acc + v);
                let g = Scaled::new(rest / (sum.hi() + sum.lo())) * mu0;
                fin(
                    taylor,
                    Scaled {
                        m: g.m,
                        e: g.e - top,
                    },
                )
            };
            let one = Scaled::new(1.0);
            let high_w = fin(high, one);
            let low_w = fin(low, one);
            Ok(NormalizedWeights {
                taylor: taylor_w,
                high: high_w,
                low: low_w,
                flushed,
            })
        }
        Scheme::ThreeMoments => {
            let groups: Vec<&NodeSet> = [taylor, high, low]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect();
            let g = groups.len();
            let mr = moment_ratios(p);
            let mut a = [[TwoFloat::from(0.0); 3]; 3];
            let mut rhs = [TwoFloat::from(0.0); 3];
            let mut tops = Vec::with_capacity(g);
            for (col, s) in groups.iter().enumerate() {
                let (top, vs) = relative(s);
                tops.push(top);
                for (&x, v) in s.x.iter().zip(vs) {
                    let mut xp = TwoFloat::from(v);
                    for row in a.iter_mut().take(g) {
                        row[col] += xp;
                        xp *= x;
                    }
                }
            }
            rhs[..g].copy_from_slice(&mr[..g]);
            let scales = solve_small(a, rhs, g)?;
            let mut results: Vec<Vec<f64>> = Vec::with_capacity(g);
            for (col, s) in groups.iter().enumerate() {
                if !(scales[col] > 0.0) {
                    return Err(QuadError::SingularNormalization);
                }
                let f = Scaled::new(scales[col]) * mu0;
                results.push(fin(
                    s,
                    Scaled {
                        m: f.m,
                        e: f.e - tops[col],
                    },
                ));
            }
            let mut it = results.into_iter();
            let mut take = |s: &NodeSet| {
                if s.is_empty() {
                    Vec::new()
                } else {
                    it.next().unwrap()
                }
            };
            let taylor_w = take(taylor);
            let high_w = take(high);
            let low_w = take(low);
            Ok(NormalizedWeights {
                taylor: taylor_w,
                high: high_w,
                low: low_w,
                flushed,
            })
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Entry {
    x: f64,
    omx: f64,
    opx: f64,
    yp: f64,
    iters: usize,
    terms: usize,
    theta: Option<f64>,
    w: Scaled,
}

/// Number of extreme nodes refined next to one endpoint.
pub fn refinement_count(n: usize) -> usize {
    let decades = (n as f64).log10().floor() as usize;
    3 + decades.saturating_sub(1)
}

/// Gauss–Jacobi rule of degree `n` for the weight `(1-x)^alpha (1+x)^beta`.
pub fn jacobi_rule(n: usize, alpha: f64, beta: f64, opts: &JacobiOptions) -> Result<GeneralRule> {
    let p = make_params(n, alpha, beta)?;
    let cfg = &opts.cfg;
    cfg.validate()?;
    let ps = p.swapped();

    let xs = seed_at_xe(&p);
    let flag = xs.is_node as usize;
    let seed2 = TaylorSeed {
        x: -p.x_e,
        y: xs.seed.y,
        yp: -xs.seed.yp,
    };
    let mut s1 = sweep_from_xe(&p, &xs.seed, n - flag, cfg)?;
    let mut s2 = sweep_from_xe(&ps, &seed2, n - flag - s1.count, cfg)?;

    if s1.count + s2.count + flag < n {
        let (above, below) = if xs.is_node {
            let prev = ratio_with_sign(&p, p.x_e).1;
            (prev, -prev)
        } else {
            let s = sign_pn(&p, p.x_e);
            (s, s)
        };
        // P_n(1) > 0 and sign P_n(-1) = (-1)^n fix the parity of each count
        let odd_above = above < 0.0;
        let odd_below = (below < 0.0) != (n % 2 == 1);
        if (s1.count % 2 == 1) != odd_above {
            complete_tail(&p, &mut s1, &xs.seed, cfg)?;
        }
        if (s2.count % 2 == 1) != odd_below {
            complete_tail(&ps, &mut s2, &seed2, cfg)?;
        }
    }
    let total = s1.count + s2.count + flag;
    if total != n {
        return Err(QuadError::CountMismatch {
            expected: n,
            found: total,
        });
    }

    let mut entries: Vec<Entry> = Vec::with_capacity(n);
    for i in (0..s2.count).rev() {
        let c = s2.one_minus_x[i];
        entries.push(Entry {
            x: -s2.nodes[i],
            omx: 2.0 - c,
            opx: c,
            yp: s2.yprimes[i],
            iters: s2.iters[i],
            terms: s2.terms[i],
            theta: None,
            w: Scaled::new(1.0),
        });
    }
    if xs.is_node {
        entries.push(Entry {
            x: p.x_e,
            omx: 1.0 - p.x_e,
            opx: 1.0 + p.x_e,
            yp: xs.seed.yp,
            iters: 0,
            terms: 0,
            theta: None,
            w: Scaled::new(1.0),
        });
    }
    for i in 0..s1.count {
        let c = s1.one_minus_x[i];
        entries.push(Entry {
            x: s1.nodes[i],
            omx: c,
            opx: 2.0 - c,
            yp: s1.yprimes[i],
            iters: s1.iters[i],
            terms: s1.terms[i],
            theta: None,
            w: Scaled::new(1.0),
        });
    }
    for e in entries.iter_mut() {
        let d = Scaled::new(e.yp.abs());
        e.w = (d * d).recip() * Scaled::pow(e.omx, alpha) * Scaled::pow(e.opx, beta);
    }

    let (want_hi, want_lo) = match opts.refine {
        Refine::Auto => (alpha < 0.0, beta < 0.0),
        Refine::On => (true, true),
        Refine::Off => (false, false),
    };
    let c = refinement_count(n);
    // each end draws only on its own sweep; a zero sitting at x_e is exact
    let n_hi = if want_hi { c.min(s1.count) } else { 0 };
    let n_lo = if want_lo { c.min(s2.count) } else { 0 };
    for e in entries[n - n_hi..].iter_mut() {
        let (theta, _) = refine_angular(&p, theta_from_complement(e.omx), cfg)?;
        let s = (0.5 * theta).sin().powi(2);
        e.omx = 2.0 * s;
        e.opx = 2.0 * (0.5 * theta).cos().powi(2);
        e.x = if e.omx < 0.5 {
            1.0 - e.omx
        } else {
            theta.cos()
        };
        e.theta = Some(theta);
        e.w = scaled_extreme_weight(&p, theta);
    }
    for e in entries[..n_lo].iter_mut() {
        let (theta, _) = refine_angular(&ps, theta_from_complement(e.opx), cfg)?;
        let s = (0.5 * theta).sin().powi(2);
        e.opx = 2.0 * s;
        e.omx = 2.0 * (0.5 * theta).cos().powi(2);
        e.x = if e.opx < 0.5 {
            e.opx - 1.0
        } else {
            -theta.cos()
        };
        e.theta = Some(std::f64::consts::PI - theta);
        e.w = scaled_extreme_weight(&ps, theta);
    }

    if n == 1 {
        // P_1 is linear; its zero in closed form is correctly rounded, the
        // sweep leaves it an ulp away through 1 - x
        let (d, e) = (alpha + beta + 2.0, &mut entries[0]);
        (e.x, e.omx, e.opx) = (
            (beta - alpha) / d,
            2.0 * (alpha + 1.0) / d,
            2.0 * (beta + 1.0) / d,
        );
    }

    let scheme = match opts.normalization {
        Normalization::Mu0 => Scheme::Mu0WithExplicitK,
        Normalization::Moments => Scheme::ThreeMoments,
        Normalization::Auto if alpha.min(beta) > -0.75 => Scheme::Mu0WithExplicitK,
        Normalization::Auto => Scheme::ThreeMoments,
    };
    let set = |r: &[Entry]| NodeSet {
        x: r.iter().map(|e| e.x).collect(),
        w: r.iter().map(|e| e.w).collect(),
    };
    let low = set(&entries[..n_lo]);
    let taylor = set(&entries[n_lo..n - n_hi]);
    let high = set(&entries[n - n_hi..]);
    let nw = normalize_general(&p, scheme, &taylor, &high, &low)?;
    let weights: Vec<f64> = nw
        .low
        .iter()
        .chain(&nw.taylor)
        .chain(&nw.high)
        .copied()
        .collect();

    let records: Vec<NodeRecord> = entries
        .iter()
        .enumerate()
        .map(|(i, e)| NodeRecord {
            x: e.x,
            theta: e.theta,
            scaled_weight: Some(1.0 / (e.yp * e.yp)),
            iters: e.iters,
            terms: e.terms,
            source: if i < n_lo || i >= n - n_hi {
                NodeSource::AngularRefined
            } else {
                NodeSource::TaylorSweep
            },
        })
        .collect();
    let stats = RunStats::from_records(&records, (s1.count + flag, s2.count));
    Ok(GeneralRule {
        params: p,
        rule: QuadratureRule {
            nodes: entries.iter().map(|e| e.x).collect(),
            weights,
            scaled_weights: Some(records.iter().filter_map(|r| r.scaled_weight).collect()),
            records,
        },
        one_minus_x: entries.iter().map(|e| e.omx).collect(),
        one_plus_x: entries.iter().map(|e| e.opx).collect(),
        refined_low: n_lo,
        refined_high: n_hi,
        scheme,
        stats,
        flushed_underflow_count: nw.flushed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::moment;
    use std::f64::consts::PI;

    const EPS: f64 = f64::EPSILON;

    #[test]
    fn seed_examples() {
        let s = seed_at_xe(&make_params(6, 0.7, 0.7).unwrap());
        assert_eq!(
            (s.seed.x, s.seed.y, s.seed.yp, s.is_node),
            (0.0, 1.0, 0.0, false)
        );
        let s = seed_at_xe(&make_params(7, 0.7, 0.7).unwrap());
        assert!(s.is_node);
        assert_eq!((s.seed.y, s.seed.yp), (0.0, 1.0));
        let s = seed_at_xe(&make_params(1, 0.0, 2.0).unwrap());
        assert!(!s.is_node);
        // r = -81/35, so the seed is (1/r, 1)
        assert!((s.seed.y + 35.0 / 81.0).abs() < 16.0 * EPS);
        assert_eq!(s.seed.yp, 1.0);
        let s = seed_at_xe(&make_params(90, -0.99, 2.0).unwrap());
        assert!(s.seed.y.is_finite() && s.seed.yp.is_finite());
    }

    #[test]
    fn sweep_examples() {
        let cfg = PrecisionConfig::default();
        let p = make_params(2, 0.0, 0.0).unwrap();
        let out = sweep_from_xe(&p, &seed_at_xe(&p).seed, 1, &cfg).unwrap();
        assert_eq!(out.terminated_by, Termination::CountCap);
        assert!((out.nodes[0] - 1.0 / 3f64.sqrt()).abs() <= EPS);

        let p = make_params(4, -0.5, -0.5).unwrap();
        let out = sweep_from_xe(&p, &seed_at_xe(&p).seed, 2, &cfg).unwrap();
        assert!((out.nodes[0] - (3.0 * PI / 8.0).cos()).abs() < 4.0 * EPS);
        assert!((out.nodes[1] - (PI / 8.0).cos()).abs() < 4.0 * EPS);

        let p = make_params(5, -0.5, 1.5).unwrap();
        let xs = seed_at_xe(&p);
        let a = sweep_from_xe(&p, &xs.seed, 5, &cfg).unwrap();
        let ps = p.swapped();
        let b = sweep_from_xe(
            &ps,
            &TaylorSeed {
                x: -p.x_e,
                y: xs.seed.y,
                yp: -xs.seed.yp,
            },
            5,
            &cfg,
        )
        .unwrap();
        assert_eq!(a.count + b.count + xs.is_node as usize, 5);
        assert_ne!(a.terminated_by, Termination::CountCap);
    }

    #[test]
    fn single_node_rule() {
        let r = jacobi_rule(1, 0.0, 2.0, &JacobiOptions::default()).unwrap();
        assert!((r.rule.nodes[0] - 0.5).abs() <= 2.0 * EPS);
        assert!((r.rule.weights[0] - 8.0 / 3.0).abs() <= 8.0 * EPS);
    }

    #[test]
    fn extreme_weight_examples() {
        let p = make_params(1, 0.0, 0.0).unwrap();
        assert!((extreme_weight(&p, PI / 2.0) - 2.0).abs() < 8.0 * EPS);
        let p = make_params(2, 0.0, 0.0).unwrap();
        let th = (1.0 / 3f64.sqrt()).acos();
        assert!((extreme_weight(&p, th) - 1.0).abs() < 16.0 * EPS);
    }

    #[test]
    fn refinement_counts() {
        assert_eq!(refinement_count(1), 3);
        assert_eq!(refinement_count(99), 3);
        assert_eq!(refinement_count(100), 4);
        assert_eq!(refinement_count(1000), 5);
        assert_eq!(refinement_count(100_000), 7);
    }

    #[test]
    fn empty_refined_sets_rescale() {
        let p = make_params(3, 0.5, 1.0).unwrap();
        let t = NodeSet {
            x: vec![-0.5, 0.1, 0.6],
            w: [1.0, 1.0, 3.0].map(Scaled::new).to_vec(),
        };
        let w = normalize_general(
            &p,
            Scheme::Mu0WithExplicitK,
            &t,
            &NodeSet::default(),
            &NodeSet::default(),
        )
        .unwrap();
        let mu0 = moment(0.5, 1.0, 0).unwrap();
        let total: f64 = w.taylor.iter().sum();
        assert!(((total - mu0) / mu0).abs() < 8.0 * EPS);
        assert!((w.taylor[2] / w.taylor[0] - 3.0).abs() < 8.0 * EPS);
    }

    #[test]
    fn mu0_scheme_keeps_absolute_weights() {
        let p = make_params(4, -0.3, 0.2).unwrap();
        let t = NodeSet {
            x: vec![-0.6, 0.0, 0.4],
            w: [-1.0, -0.5, -0.7].map(Scaled::from_ln).to_vec(),
        };
        let h = NodeSet {
            x: vec![0.9],
            w: vec![Scaled::from_ln(-2.0)],
        };
        let w =
            normalize_general(&p, Scheme::Mu0WithExplicitK, &t, &h, &NodeSet::default()).unwrap();
        assert!((w.high[0] / (-2.0f64).exp() - 1.0).abs() < 2.0 * EPS);
        let total: f64 = w.taylor.iter().chain(&w.high).sum();
        let mu0 = moment(-0.3, 0.2, 0).unwrap();
        assert!(((total - mu0) / mu0).abs() < 8.0 * EPS);
    }

    #[test]
    fn singular_system_detected() {
        let p = make_params(4, -0.9, -0.9).unwrap();
        let t = NodeSet {
            x: vec![0.5, 0.5],
            w: vec![Scaled::new(1.0); 2],
        };
        let h = NodeSet {
            x: vec![0.5],
            w: vec![Scaled::new(1.0)],
        };
        assert_eq!(
            normalize_general(&p, Scheme::ThreeMoments, &t, &h, &NodeSet::default()),
            Err(QuadError::SingularNormalization)
        );
    }
}
