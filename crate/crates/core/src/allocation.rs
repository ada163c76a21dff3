//! Compute-optimal allocation of a training budget and the compute-only law
//! it induces.
//!
//! Under the cost constraint `C = cost * N * D`, the loss-minimizing split of
//! a budget follows from the first-order condition on
//! `f(N) = A*N^-a + B*(C / (cost*N))^-b`, which has the unique stationary
//! point
//!
//! ```text
//! N* = G * C^(b / (a + b)),   G = (a*A / (b*B*cost^b))^(1 / (a + b))
//! D* = C / (cost * N*)
//! ```
//!
//! Substituting the split back into the law collapses it to
//! `L(C) = E + K*C^-k` with `k = a*b/(a+b)` and
//! `K = A*G^-a + B*cost^b*G^b`. Both closed forms are cross-checked against a
//! brute-force one-dimensional minimizer in the test suites; the production
//! path stays O(1).

use crate::error::{Error, Result};
use crate::law::{
    compute_exponent, separable_loss_raw, ComputeLawParams, CostModel, LogicalCompute,
    SeparableLawParams,
};

/// The loss-minimizing split of one compute budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalSplit {
    /// Parameter count at the optimum.
    pub n_params: f64,
    /// Token count at the optimum.
    pub d_tokens: f64,
    /// Loss the separable law assigns to the optimum.
    pub loss: f64,
}

/// Natural log of the proportionality constant `G` in `N* = G * C^(b/(a+b))`.
fn ln_split_constant(law: &SeparableLawParams, cost: &CostModel) -> f64 {
    let a = law.param_exp();
    let b = law.data_exp();
    (a.ln() + law.param_coeff().ln()
        - b.ln()
        - law.data_coeff().ln()
        - b * cost.flops_per_param_token().ln())
        / (a + b)
}

/// Compute-optimal `(N*, D*)` for the budget, with the loss at that point.
///
/// Errors only when the optimal split itself leaves the linear `f64` range.
pub fn optimal_allocation(
    law: &SeparableLawParams,
    cost: &CostModel,
    budget: LogicalCompute,
) -> Result<OptimalSplit> {
    let a = law.param_exp();
    let b = law.data_exp();
    let ln_c = budget.ln_flops();

    let ln_n = ln_split_constant(law, cost) + b / (a + b) * ln_c;
    let ln_d = ln_c - cost.flops_per_param_token().ln() - ln_n;

    let n_params = ln_n.exp();
    let d_tokens = ln_d.exp();
    if !n_params.is_finite() || !d_tokens.is_finite() || n_params <= 0.0 || d_tokens <= 0.0 {
        return Err(Error::Overflow {
            what: "optimal split",
        });
    }

    let loss = separable_loss_raw(
        law.floor(),
        law.param_coeff(),
        law.param_exp(),
        law.data_coeff(),
        law.data_exp(),
        ln_n,
        ln_d,
    );
    Ok(OptimalSplit {
        n_params,
        d_tokens,
        loss,
    })
}

/// Collapse a separable law to its compute-only form under the given cost
/// model. The floor passes through unchanged; the exponent is
/// `a*b / (a + b)`; the amplitude is the excess loss at the optimal split of
/// a unit budget, evaluated in closed form.
pub fn derive_compute_law(law: &SeparableLawParams, cost: &CostModel) -> Result<ComputeLawParams> {
    let a = law.param_exp();
    let b = law.data_exp();
    let exponent = compute_exponent(a, b)?;

    let ln_g = ln_split_constant(law, cost);
    // K = A*G^-a + B*cost^b*G^b, summed in log-domain to keep extreme
    // coefficient combinations representable.
    let t1 = law.param_coeff().ln() - a * ln_g;
    let t2 = law.data_coeff().ln() + b * cost.flops_per_param_token().ln() + b * ln_g;
    let (hi, lo) = if t1 >= t2 { (t1, t2) } else { (t2, t1) };
    let ln_amplitude = hi + (lo - hi).exp().ln_1p();
    let amplitude = ln_amplitude.exp();

    ComputeLawParams::new(law.floor(), amplitude, exponent)
}
