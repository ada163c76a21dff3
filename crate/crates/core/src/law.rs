//! Core domain types and pure evaluation of both forms of the scaling law.
//!
//! Two laws live here: the separable law `L(N, D) = E + A*N^-a + B*D^-b` over
//! model size and data size, and the compute-only law `L(C) = E + K*C^-k`.
//! All power-law arithmetic runs through `exp`/`ln` so that compute magnitudes
//! far beyond `f64::MAX` stay representable via [`LogicalCompute`].

use crate::error::{Error, Result};

/// A quantity of logical compute (model-side work in FLOP-equivalents),
/// stored in log-domain so values past the `f64` range remain exact.
///
/// Construction validates positivity and finiteness once; every consumer can
/// then treat the value as trusted.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LogicalCompute {
    ln_flops: f64,
}

impl LogicalCompute {
    /// From a linear FLOP count. Must be finite and strictly positive.
    pub fn from_flops(flops: f64) -> Result<Self> {
        if !flops.is_finite() || flops <= 0.0 {
            return Err(Error::InvalidArgument {
                name: "logical compute",
                value: flops,
                requirement: "finite and > 0",
            });
        }
        Ok(Self { ln_flops: flops.ln() })
    }

    /// From a base-10 logarithm of the FLOP count. This is the entry point
    /// for magnitudes that overflow `f64` in linear form.
    pub fn from_log10(log10_flops: f64) -> Result<Self> {
        if !log10_flops.is_finite() {
            return Err(Error::InvalidArgument {
                name: "log10 logical compute",
                value: log10_flops,
                requirement: "finite",
            });
        }
        Ok(Self {
            ln_flops: log10_flops * std::f64::consts::LN_10,
        })
    }

    /// From a natural logarithm of the FLOP count.
    pub fn from_ln_flops(ln_flops: f64) -> Result<Self> {
        if !ln_flops.is_finite() {
            return Err(Error::Overflow {
                what: "logical compute (log-domain)",
            });
        }
        Ok(Self { ln_flops })
    }

    /// Natural log of the FLOP count.
    pub fn ln_flops(self) -> f64 {
        self.ln_flops
    }

    /// Base-10 log of the FLOP count.
    pub fn log10(self) -> f64 {
        self.ln_flops / std::f64::consts::LN_10
    }

    /// Linear FLOP count. Saturates to `f64::INFINITY` (or `0.0`) when the
    /// stored magnitude lies outside the linear `f64` range.
    pub fn flops(self) -> f64 {
        self.ln_flops.exp()
    }

    /// This compute scaled by a positive finite factor.
    pub fn scaled(self, factor: f64) -> Result<Self> {
        if !factor.is_finite() || factor <= 0.0 {
            return Err(Error::InvalidArgument {
                name: "scale factor",
                value: factor,
                requirement: "finite and > 0",
            });
        }
        Self::from_ln_flops(self.ln_flops + factor.ln())
    }
}

impl std::fmt::Display for LogicalCompute {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let linear = self.flops();
        if linear.is_finite() {
            write!(f, "{linear:e}")
        } else {
            write!(f, "1e{}", self.log10())
        }
    }
}

/// The five constants of the separable loss law
/// `L(N, D) = floor + param_coeff * N^-param_exp + data_coeff * D^-data_exp`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparableLawParams {
    floor: f64,
    param_coeff: f64,
    param_exp: f64,
    data_coeff: f64,
    data_exp: f64,
}

impl SeparableLawParams {
    /// Validates once at construction: floor >= 0, everything else > 0, all finite.
    pub fn new(
        floor: f64,
        param_coeff: f64,
        param_exp: f64,
        data_coeff: f64,
        data_exp: f64,
    ) -> Result<Self> {
        require_nonneg("loss floor", floor)?;
        require_pos("parameter-term coefficient", param_coeff)?;
        require_pos("parameter exponent", param_exp)?;
        require_pos("data-term coefficient", data_coeff)?;
        require_pos("data exponent", data_exp)?;
        Ok(Self {
            floor,
            param_coeff,
            param_exp,
            data_coeff,
            data_exp,
        })
    }

    pub fn floor(&self) -> f64 {
        self.floor
    }

    pub fn param_coeff(&self) -> f64 {
        self.param_coeff
    }

    pub fn param_exp(&self) -> f64 {
        self.param_exp
    }

    pub fn data_coeff(&self) -> f64 {
        self.data_coeff
    }

    pub fn data_exp(&self) -> f64 {
        self.data_exp
    }

    /// Loss at `n_params` parameters and `d_tokens` training tokens.
    ///
    /// Strictly greater than the floor for finite inputs (up to floating-point
    /// underflow of the power terms) and non-increasing in each argument.
    pub fn eval(&self, n_params: f64, d_tokens: f64) -> Result<f64> {
        require_pos("parameter count", n_params)?;
        require_pos("token count", d_tokens)?;
        Ok(separable_loss_raw(
            self.floor,
            self.param_coeff,
            self.param_exp,
            self.data_coeff,
            self.data_exp,
            n_params.ln(),
            d_tokens.ln(),
        ))
    }
}

/// The three constants of the compute-only law `L(C) = floor + amplitude * C^-exponent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComputeLawParams {
    floor: f64,
    amplitude: f64,
    exponent: f64,
}

impl ComputeLawParams {
    pub fn new(floor: f64, amplitude: f64, exponent: f64) -> Result<Self> {
        require_nonneg("loss floor", floor)?;
        require_pos("amplitude", amplitude)?;
        require_pos("compute exponent", exponent)?;
        Ok(Self {
            floor,
            amplitude,
            exponent,
        })
    }

    pub fn floor(&self) -> f64 {
        self.floor
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    /// Loss at logical compute `c`. Strictly decreasing in `c`, tending to the
    /// floor as `c` grows without bound. Positivity and finiteness of `c` are
    /// guaranteed by [`LogicalCompute`] construction.
    pub fn eval(&self, c: LogicalCompute) -> f64 {
        compute_only_loss_raw(self.floor, self.amplitude, self.exponent, c.ln_flops())
    }
}

// Shared with the fitting module so that a recomputed objective is
// bit-identical to the one minimized.
pub(crate) fn separable_loss_raw(
    floor: f64,
    param_coeff: f64,
    param_exp: f64,
    data_coeff: f64,
    data_exp: f64,
    ln_n: f64,
    ln_d: f64,
) -> f64 {
    floor + (param_coeff.ln() - param_exp * ln_n).exp() + (data_coeff.ln() - data_exp * ln_d).exp()
}

pub(crate) fn compute_only_loss_raw(floor: f64, amplitude: f64, exponent: f64, ln_c: f64) -> f64 {
    floor + (amplitude.ln() - exponent * ln_c).exp()
}

/// Compute exponent implied by the two separable exponents:
/// `p * q / (p + q)`. Symmetric, and always below `min(p, q)`.
pub fn compute_exponent(param_exp: f64, data_exp: f64) -> Result<f64> {
    require_pos("parameter exponent", param_exp)?;
    require_pos("data exponent", data_exp)?;
    Ok(param_exp * data_exp / (param_exp + data_exp))
}

/// Training-cost model `C = flops_per_param_token * N * D`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostModel {
    flops_per_param_token: f64,
}

impl CostModel {
    pub fn new(flops_per_param_token: f64) -> Result<Self> {
        require_pos("cost constant", flops_per_param_token)?;
        Ok(Self {
            flops_per_param_token,
        })
    }

    pub fn flops_per_param_token(&self) -> f64 {
        self.flops_per_param_token
    }

    /// Total training compute for `n_params` parameters over `d_tokens` tokens.
    ///
    /// Evaluated as a log-domain sum, so products far past `f64::MAX` are fine.
    pub fn compute(&self, n_params: f64, d_tokens: f64) -> Result<LogicalCompute> {
        require_pos("parameter count", n_params)?;
        require_pos("token count", d_tokens)?;
        LogicalCompute::from_ln_flops(
            self.flops_per_param_token.ln() + n_params.ln() + d_tokens.ln(),
        )
    }
}

impl Default for CostModel {
    /// The standard dense-training accounting of forward, backward, and
    /// parameter-update cost: 6 FLOPs per parameter per token.
    fn default() -> Self {
        Self {
            flops_per_param_token: 6.0,
        }
    }
}

/// One observed training run. `c_logical` is present only when logical compute
/// was measured directly rather than derived from a cost model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunRecord {
    n_params: f64,
    d_tokens: f64,
    loss: f64,
    c_logical: Option<f64>,
}

impl RunRecord {
    pub fn new(n_params: f64, d_tokens: f64, loss: f64, c_logical: Option<f64>) -> Result<Self> {
        require_pos("n_params", n_params)?;
        require_pos("d_tokens", d_tokens)?;
        require_pos("loss", loss)?;
        if let Some(c) = c_logical {
            require_pos("c_logical", c)?;
        }
        Ok(Self {
            n_params,
            d_tokens,
            loss,
            c_logical,
        })
    }

    pub fn n_params(&self) -> f64 {
        self.n_params
    }

    pub fn d_tokens(&self) -> f64 {
        self.d_tokens
    }

    pub fn loss(&self) -> f64 {
        self.loss
    }

    pub fn c_logical(&self) -> Option<f64> {
        self.c_logical
    }
}

fn require_pos(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() || value <= 0.0 {
        return Err(Error::InvalidArgument {
            name,
            value,
            requirement: "finite and > 0",
        });
    }
    Ok(())
}

fn require_nonneg(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() || value < 0.0 {
        return Err(Error::InvalidArgument {
            name,
            value,
            requirement: "finite and >= 0",
        });
    }
    Ok(())
}
