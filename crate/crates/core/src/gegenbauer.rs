//! Symmetric weights `(1-x^2)^lambda`: one sweep from the origin, reflection,
//! and normalization against the even moments.

use crate::error::{QuadError, Result};
use crate::fixedpoint::{converge, Iterate, Outcome};
use crate::jacobi::tail_zero;
use crate::params::{make_params, PrecisionConfig};
use crate::rule::{NodeRecord, NodeSource, QuadratureRule, RunStats};
use crate::scaled::Scaled;
use crate::special::moment;
use crate::taylor::TaylorSeed;

/// A complete symmetric rule.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricRule {
    pub lambda: f64,
    pub rule: QuadratureRule,
    pub gamma: f64,
    pub corrected_last: bool,
    pub stats: RunStats,
}

/// Weights of the non-negative nodes produced by [`normalize_symmetric`].
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricWeights {
    /// Weight of the node at the origin, for odd degree.
    pub zero: Option<f64>,
    /// Weights of the positive nodes, in the order given.
    pub positive: Vec<f64>,
    pub gamma: f64,
}

/// Normalizes scaled weights of the positive nodes (plus the origin when
/// `odd`, whose scaled weight is `scaled_zero`) to total mass `mu_0`.
///
/// `one_minus_x` holds `1 - x_i` for the positive nodes; passing it keeps the
/// factor `(1 - x_i^2)^lambda` accurate next to the endpoint.
pub fn normalize_symmetric(
    nodes: &[f64],
    one_minus_x: &[f64],
    scaled: &[f64],
    lambda: f64,
    scaled_zero: Option<f64>,
    correct_last: bool,
) -> Result<SymmetricWeights> {
    let mu0 = moment(lambda, lambda, 0)?;
    let v: Vec<f64> = one_minus_x
        .iter()
        .zip(scaled)
        .map(|(&c, &w)| (Scaled::pow(c, lambda) * Scaled::pow(2.0 - c, lambda)).to_f64() * w)
        .collect();
    let v0 = scaled_zero.unwrap_or(0.0);
    let m = nodes.len();
    if correct_last && m >= 1 && (m >= 2 || scaled_zero.is_some()) {
        let xm2 = nodes[m - 1] * nodes[m - 1];
        let s0 = 0.5 * v0 + v[..m - 1].iter().sum::<f64>();
        let sx2: f64 = nodes[..m - 1]
            .iter()
            .zip(&v)
            .map(|(&x, &w)| w * x * x)
            .sum();
        let den = xm2 * s0 - sx2;
        if den.abs() <= 1e3 * f64::EPSILON * (xm2 * s0).abs() {
            return Err(QuadError::SingularNormalization);
        }
        let g = (xm2 - 1.0 / (2.0 * lambda + 3.0)) / den;
        let last = 1.0 - g * s0;
        let half = 0.5 * mu0;
        let mut positive: Vec<f64> = v[..m - 1].iter().map(|&w| half * g * w).collect();
        positive.push(half * last);
        return Ok(SymmetricWeights {
            zero: scaled_zero.map(|z| half * g * z),
            positive,
            gamma: half * g,
        });
    }
    let total = v0 + 2.0 * v.iter().sum::<f64>();
    let gamma = mu0 / total;
    Ok(SymmetricWeights {
        zero: scaled_zero.map(|z| gamma * z),
        positive: v.iter().map(|&w| gamma * w).collect(),
        gamma,
    })
}

/// Gauss–Gegenbauer rule of degree `n` for the weight `(1-x^2)^lambda`.
pub fn gegenbauer_rule(
    n: usize,
    lambda: f64,
    cfg: &PrecisionConfig,
    correct_last: bool,
) -> Result<SymmetricRule> {
    let p = make_params(n, lambda, lambda)?;
    cfg.validate()?;
    let half = n / 2;
    let odd = n % 2 == 1;
    let (y0, yp0) = if odd { (0.0, 1.0) } else { (1.0, 0.0) };
    let mut it = Iterate::new(0.0, y0, yp0);
    let mut found = Vec::with_capacity(half);
    while found.len() < half {
        match converge(&p, it, cfg, None)? {
            Outcome::Node(s) => {
                it = Iterate::at_zero(&s);
                found.push(s);
            }
            // no oscillation where Omega <= 0, so at most one zero is left there
            Outcome::OmegaEnd | Outcome::Boundary if found.len() + 1 == half => {
                let from = TaylorSeed {
                    x: it.x,
                    y: it.y,
                    yp: it.yp,
                };
                match tail_zero(&p, &from, it.omx, cfg)? {
                    Some(s) => found.push(s),
                    None => {
                        return Err(QuadError::CountMismatch {
                            expected: half,
                            found: found.len(),
                        })
                    }
                }
            }
            Outcome::OmegaEnd | Outcome::Boundary => {
                return Err(QuadError::CountMismatch {
                    expected: half,
                    found: found.len(),
                });
            }
        }
    }
    let pos_x: Vec<f64> = found.iter().map(|s| s.x).collect();
    let pos_c: Vec<f64> = found.iter().map(|s| s.one_minus_x).collect();
    let scaled: Vec<f64> = found.iter().map(|s| 1.0 / (s.yp * s.yp)).collect();
    let apply = correct_last && lambda < -0.5 && n > 2;
    let sw = normalize_symmetric(&pos_x, &pos_c, &scaled, lambda, odd.then_some(1.0), apply)?;

    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let mut scaled_all = Vec::with_capacity(n);
    let mut records = Vec::with_capacity(n);
    let record = |x: f64, w: f64, s: Option<&crate::fixedpoint::NodeSolution>| NodeRecord {
        x,
        theta: None,
        scaled_weight: Some(w),
        iters: s.map_or(0, |s| s.iters),
        terms: s.map_or(0, |s| s.terms),
        source: NodeSource::TaylorSweep,
    };
    for i in (0..half).rev() {
        nodes.push(-pos_x[i]);
        weights.push(sw.positive[i]);
        scaled_all.push(scaled[i]);
        records.push(record(-pos_x[i], scaled[i], Some(&found[i])));
    }
    if let Some(w0) = sw.zero {
        nodes.push(0.0);
        weights.push(w0);
        scaled_all.push(1.0);
        records.push(record(0.0, 1.0, None));
    }
    for i in 0..half {
        nodes.push(pos_x[i]);
        weights.push(sw.positive[i]);
        scaled_all.push(scaled[i]);
        records.push(record(pos_x[i], scaled[i], Some(&found[i])));
    }
    let stats = RunStats::from_records(&records[n - half..], (half, half));
    Ok(SymmetricRule {
        lambda,
        rule: QuadratureRule {
            nodes,
            weights,
            scaled_weights: Some(scaled_all),
            records,
        },
        gamma: sw.gamma,
        corrected_last: apply,
        stats,
    })
}
