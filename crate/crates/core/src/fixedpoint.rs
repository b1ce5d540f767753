//! Fourth-order fixed-point iterations for consecutive zeros.
//!
//! The global iteration works in `z` with `x = tanh z`, but all state is kept
//! in `x` together with an accurately tracked `1 - x`.  The local iteration
//! in `theta = arccos x` polishes zeros next to the endpoint `x = 1`.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{QuadError, Result};
use crate::params::{PrecisionConfig, QuadParams};
use crate::polyeval::h_theta;
use crate::taylor::{omega_tanh, step_between, TaylorSeed};

/// `arctan` on the branch selected by `j`: the plain value when `j zeta > 0`,
/// otherwise shifted by `j pi`.
pub fn arctan_branch(j: i32, zeta: f64) -> f64 {
    let jf = j as f64;
    if zeta.is_infinite() {
        return jf * FRAC_PI_2;
    }
    if jf * zeta > 0.0 {
        zeta.atan()
    } else {
        zeta.atan() + jf * PI
    }
}

/// Current iterate of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepState {
    pub x: f64,
    pub y: f64,
    pub yp: f64,
    pub iters: usize,
    pub nodes_found: usize,
}

/// A converged zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeSolution {
    pub x: f64,
    /// `1 - x`, accurate to full relative precision.
    pub one_minus_x: f64,
    pub y: f64,
    pub yp: f64,
    /// Iterations after the first (advance or seed) step.
    pub iters: usize,
    /// Taylor terms summed on the way.
    pub terms: usize,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Iterate {
    pub x: f64,
    pub omx: f64,
    pub y: f64,
    pub yp: f64,
    /// Set on a converged zero: the first step goes to the next one, whichever
    /// side of the zero rounding has left `(y, yp)` on.
    pub on_zero: bool,
}

impl Iterate {
    pub(crate) fn new(x: f64, y: f64, yp: f64) -> Self {
        Self {
            x,
            omx: 1.0 - x,
            y,
            yp,
            on_zero: false,
        }
    }

    pub(crate) fn at_zero(s: &NodeSolution) -> Self {
        Self {
            x: s.x,
            omx: s.one_minus_x,
            y: s.y,
            yp: s.yp,
            on_zero: true,
        }
    }
}

pub(crate) enum Outcome {
    Node(NodeSolution),
    OmegaEnd,
    Boundary,
}

// Returns (F, x_next, 1 - x_next).  With `near_tol` set, an iterate that
// rounding has put just past a zero steps back on the principal branch
// instead of jumping to the next zero.
fn tanh_step(p: &QuadParams, it: &Iterate, near_tol: Option<f64>) -> Result<(f64, f64, f64)> {
    let opx = if it.x < 0.0 { 1.0 + it.x } else { 2.0 - it.omx };
    let om = omega_tanh(p, it.omx, opx);
    if !(om > 0.0) {
        return Err(QuadError::OmegaNonpositive { x: it.x });
    }
    let sq = om.sqrt();
    let den = it.omx * opx * it.yp + it.x * it.y;
    let zeta = sq * it.y / den;
    let principal = zeta.atan();
    let f = match near_tol {
        _ if it.on_zero => (principal - PI) / sq,
        Some(tol) if zeta >= 0.0 && principal <= tol * sq => principal / sq,
        _ => arctan_branch(-1, zeta) / sq,
    };
    let t = f.tanh();
    let one_plus_t = 2.0 / (1.0 + (-2.0 * f).exp());
    let q = 1.0 - it.x * t;
    let omx = it.omx * one_plus_t / q;
    // away from x = 1 the complement follows x, so the two never drift apart
    if omx < 0.5 {
        Ok((f, 1.0 - omx, omx))
    } else {
        let x = (it.x - t) / q;
        Ok((f, x, 1.0 - x))
    }
}

/// One step of the global iteration; returns the next abscissa.
/// A state with `y = 0` advances past the zero it sits on.
pub fn step_tanh(p: &QuadParams, state: &SweepState) -> Result<f64> {
    tanh_step(p, &Iterate::new(state.x, state.y, state.yp), None).map(|(_, x, _)| x)
}

pub(crate) fn boundary_guard(cfg: &PrecisionConfig) -> f64 {
    8.0 * cfg.eps
}

pub(crate) fn converge(
    p: &QuadParams,
    start: Iterate,
    cfg: &PrecisionConfig,
    mut trace: Option<&mut Vec<f64>>,
) -> Result<Outcome> {
    let mut it = start;
    let mut iters = 0;
    let mut terms = 0;
    let mut first = true;
    loop {
        let near = if first { None } else { Some(cfg.fp_tol) };
        let (f, x, omx) = match tanh_step(p, &it, near) {
            Ok(v) => v,
            Err(QuadError::OmegaNonpositive { .. }) => return Ok(Outcome::OmegaEnd),
            Err(e) => return Err(e),
        };
        if omx <= boundary_guard(cfg) {
            return Ok(Outcome::Boundary);
        }
        let seed = TaylorSeed {
            x: it.x,
            y: it.y,
            yp: it.yp,
        };
        let r = step_between(p, &seed, it.omx, x, omx, cfg)?;
        terms += r.terms;
        it = Iterate {
            x,
            omx,
            y: r.y,
            yp: r.yp,
            on_zero: false,
        };
        if let Some(t) = trace.as_deref_mut() {
            t.push(x);
        }
        if !first {
            iters += 1;
        }
        first = false;
        if f.abs() <= cfg.fp_tol {
            return Ok(Outcome::Node(NodeSolution {
                x,
                one_minus_x: omx,
                y: it.y,
                yp: it.yp,
                iters,
                terms,
            }));
        }
        if iters >= cfg.max_fp_iters {
            return Err(QuadError::MaxItersExceeded(cfg.max_fp_iters));
        }
    }
}

/// Iterates from `state` to the next zero of `Y~` above `state.x`.
pub fn solve_node(
    p: &QuadParams,
    state: &SweepState,
    cfg: &PrecisionConfig,
) -> Result<NodeSolution> {
    solve_node_traced(p, state, cfg).map(|(s, _)| s)
}

/// As [`solve_node`], also returning every iterate in order.
pub fn solve_node_traced(
    p: &QuadParams,
    state: &SweepState,
    cfg: &PrecisionConfig,
) -> Result<(NodeSolution, Vec<f64>)> {
    let mut trace = Vec::new();
    let start = Iterate::new(state.x, state.y, state.yp);
    match converge(p, start, cfg, Some(&mut trace))? {
        Outcome::Node(s) => Ok((s, trace)),
        Outcome::OmegaEnd => Err(QuadError::OmegaNonpositive {
            x: *trace.last().unwrap_or(&state.x),
        }),
        Outcome::Boundary => Err(QuadError::NoConvergence {
            what: "sweep reached x = 1",
            terms: trace.len(),
        }),
    }
}

/// `Delta(theta) = sin^2(theta) Omega(theta)` of the angular normal form.
pub(crate) fn delta(p: &QuadParams, theta: f64) -> f64 {
    let s = (0.5 * theta).sin().powi(2);
    let (a2, b2) = (p.alpha * p.alpha, p.beta * p.beta);
    0.25 - a2 + (a2 - b2) * s + 0.25 * p.l * p.l * theta.sin().powi(2)
}

// arctan(sqrt(D) u) / sqrt(D), continued analytically to D <= 0.
fn scaled_atan(d: f64, u: f64) -> f64 {
    if u.is_infinite() {
        if d > 0.0 {
            return FRAC_PI_2.copysign(u) / d.sqrt();
        }
        return 0.0;
    }
    if d > 0.0 {
        let s = d.sqrt();
        (s * u).atan() / s
    } else if d < 0.0 {
        let s = (-d).sqrt();
        let v = s * u;
        if v.abs() < 1.0 {
            v.atanh() / s
        } else {
            u
        }
    } else {
        u
    }
}

/// Local fourth-order iteration in `theta` started from `theta0`.
/// Returns the zero and the number of iterations.
pub fn refine_angular(p: &QuadParams, theta0: f64, cfg: &PrecisionConfig) -> Result<(f64, usize)> {
    let mut theta = theta0;
    for k in 1..=cfg.max_fp_iters {
        let h = h_theta(p, theta, cfg)?;
        let step = theta.sin() * scaled_atan(delta(p, theta), h);
        let next = theta - step;
        if !(next > 0.0 && next < PI) {
            return Err(QuadError::DomainError {
                what: "angular iterate",
                value: next,
            });
        }
        theta = next;
        if step.abs() <= cfg.fp_tol * theta {
            return Ok((theta, k));
        }
    }
    Err(QuadError::MaxItersExceeded(cfg.max_fp_iters))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::make_params;

    const EPS: f64 = f64::EPSILON;

    #[test]
    fn branch_examples() {
        assert!((arctan_branch(-1, -1.0) + PI / 4.0).abs() < EPS);
        assert!((arctan_branch(-1, 1.0) + 3.0 * PI / 4.0).abs() < 2.0 * EPS);
        assert_eq!(arctan_branch(1, f64::INFINITY), FRAC_PI_2);
        assert_eq!(arctan_branch(-1, 0.0), -PI);
        assert_eq!(arctan_branch(-1, -0.0), -PI);
        for &z in &[-1e300, -3.0, -1e-20, 1e-20, 0.7, 1e300, f64::NEG_INFINITY] {
            let v = arctan_branch(-1, z);
            assert!((-PI..=0.0).contains(&v));
        }
    }

    fn legendre2_start() -> (QuadParams, SweepState) {
        let p = make_params(2, 0.0, 0.0).unwrap();
        // x = 0 with (Y~, Y~') = (1, 0) moves to tanh(pi / sqrt(24))
        let x1 = (PI / 24f64.sqrt()).tanh();
        let first = step_tanh(
            &p,
            &SweepState {
                x: 0.0,
                y: 1.0,
                yp: 0.0,
                iters: 0,
                nodes_found: 0,
            },
        )
        .unwrap();
        assert!((first - x1).abs() < 4.0 * EPS);
        (
            p,
            SweepState {
                x: 0.0,
                y: 1.0,
                yp: 0.0,
                iters: 0,
                nodes_found: 0,
            },
        )
    }

    #[test]
    fn legendre_two() {
        let cfg = PrecisionConfig::default();
        let (p, st) = legendre2_start();
        let (sol, trace) = solve_node_traced(&p, &st, &cfg).unwrap();
        let node = 1.0 / 3f64.sqrt();
        assert!((sol.x - 0.5773502691896258).abs() <= EPS);
        assert!(sol.iters <= 3);
        assert!(sol.y.abs() <= 10.0 * EPS * sol.yp.abs() * (1.0 - node * node));
        for w in trace.windows(2) {
            assert!(w[1] >= w[0] - 2.0 * EPS && w[1] <= node + EPS);
        }
    }

    #[test]
    fn advance_from_node() {
        let p = make_params(6, 0.4, 0.4).unwrap();
        let x: f64 = 0.3;
        let om = omega_tanh(&p, 1.0 - x, 1.0 + x);
        let t = (PI / om.sqrt()).tanh();
        let st = SweepState {
            x,
            y: 0.0,
            yp: 2.0,
            iters: 0,
            nodes_found: 1,
        };
        let next = step_tanh(&p, &st).unwrap();
        assert!((next - (x + t) / (1.0 + x * t)).abs() < 4.0 * EPS);
    }

    #[test]
    fn omega_end_signalled() {
        let p = make_params(3, 0.9, 0.0).unwrap();
        let st = SweepState {
            x: 0.999,
            y: 1.0,
            yp: 1.0,
            iters: 0,
            nodes_found: 0,
        };
        assert!(matches!(
            step_tanh(&p, &st),
            Err(QuadError::OmegaNonpositive { .. })
        ));
    }

    #[test]
    fn chebyshev_consecutive() {
        let cfg = PrecisionConfig::default();
        let p = make_params(4, -0.5, -0.5).unwrap();
        let mut st = SweepState {
            x: 0.0,
            y: 1.0,
            yp: 0.0,
            iters: 0,
            nodes_found: 0,
        };
        let want = [(3.0 * PI / 8.0).cos(), (PI / 8.0).cos()];
        for w in want {
            let s = solve_node(&p, &st, &cfg).unwrap();
            assert!((s.x - w).abs() < 4.0 * EPS, "{} vs {w}", s.x);
            assert!(s.iters <= 6);
            st = SweepState {
                x: s.x,
                y: 0.0,
                yp: s.yp,
                iters: 0,
                nodes_found: st.nodes_found + 1,
            };
        }
    }

    #[test]
    fn angular_examples() {
        let cfg = PrecisionConfig::default();
        let p = make_params(2, -0.5, -0.5).unwrap();
        let th = PI / 4.0;
        let h = h_theta(&p, th, &cfg).unwrap();
        let g = th - th.sin() * scaled_atan(delta(&p, th), h);
        assert!((g - th).abs() <= 4.0 * EPS);
        let (t, k) = refine_angular(&p, th + 0.01, &cfg).unwrap();
        assert!((t - th).abs() < 1e-12);
        assert!(k <= 2);
    }

    #[test]
    fn angular_idempotent() {
        let cfg = PrecisionConfig::default();
        for &(n, a, b) in &[(20usize, -0.7, 1.0), (90, -0.99, 2.0), (7, -0.3, -0.9)] {
            let p = make_params(n, a, b).unwrap();
            // start near the largest zero using the Bessel-type estimate
            let guess = 2.4 / p.l;
            let (t1, _) = refine_angular(&p, guess, &cfg).unwrap();
            let (t2, _) = refine_angular(&p, t1, &cfg).unwrap();
            assert!((t1 - t2).abs() <= cfg.fp_tol * t1);
        }
    }
}
