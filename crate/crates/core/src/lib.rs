//! Gauss–Jacobi and Gauss–Gegenbauer quadrature.
//!
//! Nodes are the zeros of `P_n^{(alpha,beta)}`, found one after another by a
//! globally convergent fourth-order fixed-point iteration on the Liouville
//! normal form of the Jacobi equation.  Function values between iterates come
//! from local Taylor series of the ODE solution.  Extreme nodes next to a
//! singular endpoint are polished in the angular variable, and the weights
//! are normalized against the moments of the weight function.
//!
//! ```
//! use gaussjacobi::{jacobi_rule, JacobiOptions};
//!
//! let rule = jacobi_rule(5, 0.0, 0.0, &JacobiOptions::default()).unwrap();
//! let integral = rule.rule.integrate(|x| x.powi(8));
//! assert!((integral - 2.0 / 9.0).abs() < 1e-14);
//! ```

// `!(v > 0.0)` is how NaN is rejected along with the non-positive values
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// reference values keep every digit they were computed with
#![cfg_attr(test, allow(clippy::excessive_precision))]

pub mod error;
pub mod fixedpoint;
pub mod gegenbauer;
pub mod jacobi;
pub mod oracle;
pub mod params;
pub mod polyeval;
pub mod rule;
pub mod scaled;
pub mod special;
pub mod taylor;

pub use error::{QuadError, Result};
pub use gegenbauer::{gegenbauer_rule, SymmetricRule};
pub use jacobi::{jacobi_rule, GeneralRule, JacobiOptions, Normalization, Refine, Scheme};
pub use oracle::{compare_rules, exactness_check, golub_welsch, RuleErrors};
pub use params::{make_params, PrecisionConfig, QuadParams};
pub use rule::{NodeRecord, NodeSource, QuadratureRule, RunStats};
