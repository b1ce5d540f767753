//! Validated Jacobi parameters and numerical tolerances.

use crate::error::{QuadError, Result};

/// Degree and exponents of the weight `(1-x)^alpha (1+x)^beta`, together with
/// the derived quantities every algorithm needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadParams {
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
    /// `2n + alpha + beta + 1`.
    pub l: f64,
    /// Abscissa where Omega of the tanh transform is maximal.
    pub x_e: f64,
}

/// Validates `(n, alpha, beta)` for rule construction.
pub fn make_params(n: usize, alpha: f64, beta: f64) -> Result<QuadParams> {
    if n < 1 {
        return Err(QuadError::DegreeOutOfRange(n));
    }
    QuadParams::polynomial(n, alpha, beta)
}

impl QuadParams {
    /// Like [`make_params`] but also admits `n = 0`, which is meaningful for
    /// polynomial ratios though not for a quadrature rule.
    pub fn polynomial(n: usize, alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(QuadError::NotFinite { name: "alpha" });
        }
        if !beta.is_finite() {
            return Err(QuadError::NotFinite { name: "beta" });
        }
        if alpha <= -1.0 {
            return Err(QuadError::ParameterOutOfRange {
                name: "alpha",
                value: alpha,
            });
        }
        if beta <= -1.0 {
            return Err(QuadError::ParameterOutOfRange {
                name: "beta",
                value: beta,
            });
        }
        let nf = n as f64;
        let l = 2.0 * nf + alpha + beta + 1.0;
        // (beta^2 - alpha^2) / (L^2 - 1), factored to stay exact when alpha = beta
        let x_e = if n == 0 {
            0.0
        } else {
            (beta - alpha) * (beta + alpha) / ((l - 1.0) * (l + 1.0))
        };
        Ok(Self {
            n,
            alpha,
            beta,
            l,
            x_e,
        })
    }

    /// Parameters of the reflected family `P_n^{(beta,alpha)}(-x)`.
    pub fn swapped(&self) -> Self {
        Self {
            n: self.n,
            alpha: self.beta,
            beta: self.alpha,
            l: self.l,
            x_e: -self.x_e,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.alpha == self.beta
    }
}

/// Tolerances and iteration caps for the active scalar type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionConfig {
    /// Unit roundoff of the scalar type.
    pub eps: f64,
    /// A fixed-point iteration stops once the applied step is below this.
    pub fp_tol: f64,
    /// Relative size of a Taylor increment that counts as negligible.
    pub taylor_tol: f64,
    pub max_fp_iters: usize,
    pub max_taylor_terms: usize,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        let eps = f64::EPSILON;
        Self {
            eps,
            fp_tol: eps.powf(0.75),
            taylor_tol: eps / 4.0,
            max_fp_iters: 30,
            max_taylor_terms: 512,
        }
    }
}

impl PrecisionConfig {
    pub fn validate(&self) -> Result<()> {
        let in_unit = |v: f64| v > 0.0 && v < 1.0;
        if !in_unit(self.fp_tol) {
            return Err(QuadError::DomainError {
                what: "fp_tol",
                value: self.fp_tol,
            });
        }
        if !in_unit(self.taylor_tol) {
            return Err(QuadError::DomainError {
                what: "taylor_tol",
                value: self.taylor_tol,
            });
        }
        if self.max_fp_iters < 5 {
            return Err(QuadError::DomainError {
                what: "max_fp_iters",
                value: self.max_fp_iters as f64,
            });
        }
        if self.max_taylor_terms < 32 {
            return Err(QuadError::DomainError {
                what: "max_taylor_terms",
                value: self.max_taylor_terms as f64,
            });
        }
        Ok(())
    }

    /// Relative tolerance for continued fractions; never below one ulp, since
    /// consecutive convergents cannot agree more closely than that.
    pub(crate) fn cf_tol(&self) -> f64 {
        self.taylor_tol.max(self.eps)
    }
}
