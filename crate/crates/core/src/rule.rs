//! Quadrature rule containers shared by the algorithms and the oracle.

/// How a node was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeSource {
    TaylorSweep,
    AngularRefined,
    Oracle,
}

/// One computed node with its diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeRecord {
    pub x: f64,
    /// `arccos x` for nodes refined in the angular variable.
    pub theta: Option<f64>,
    pub scaled_weight: Option<f64>,
    pub iters: usize,
    /// Taylor terms summed while converging to this node.
    pub terms: usize,
    pub source: NodeSource,
}

/// Aggregated iteration and term counts of one rule computation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunStats {
    pub mean_iters: f64,
    pub max_iters: usize,
    pub mean_terms: f64,
    pub max_terms: usize,
    /// Nodes found above and below the seed abscissa.
    pub sweep_counts: (usize, usize),
}

impl RunStats {
    pub(crate) fn from_records(records: &[NodeRecord], sweep_counts: (usize, usize)) -> Self {
        let swept: Vec<&NodeRecord> = records
            .iter()
            .filter(|r| r.source != NodeSource::Oracle)
            .collect();
        if swept.is_empty() {
            return Self {
                sweep_counts,
                ..Self::default()
            };
        }
        let m = swept.len() as f64;
        Self {
            mean_iters: swept.iter().map(|r| r.iters as f64).sum::<f64>() / m,
            max_iters: swept.iter().map(|r| r.iters).max().unwrap_or(0),
            mean_terms: swept.iter().map(|r| r.terms as f64).sum::<f64>() / m,
            max_terms: swept.iter().map(|r| r.terms).max().unwrap_or(0),
            sweep_counts,
        }
    }
}

/// Nodes in increasing order with their weights.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub scaled_weights: Option<Vec<f64>>,
    pub records: Vec<NodeRecord>,
}

impl QuadratureRule {
    pub fn new(nodes: Vec<f64>, weights: Vec<f64>) -> Self {
        Self {
            nodes,
            weights,
            scaled_weights: None,
            records: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `sum w_i f(x_i)`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}
