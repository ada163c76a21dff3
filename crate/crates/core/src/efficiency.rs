//! Separation of logical compute from the physical burden of realizing it.
//!
//! Logical compute efficiency is work per unit energy (FLOPs per joule); the
//! physical burden of a compute target is then `energy = work / efficiency`.
//! Keeping the two apart is the point: a law inversion answers *how much*
//! logical compute a target loss needs, and the efficiency state alone decides
//! what that costs in joules.

use crate::error::{Error, Result};
use crate::law::{ComputeLawParams, LogicalCompute};

/// Logical-compute efficiency of a training stack, with an optional vendor
/// peak throughput for utilization accounting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EfficiencyState {
    flops_per_joule: f64,
    peak_flops_per_sec: Option<f64>,
}

impl EfficiencyState {
    pub fn new(flops_per_joule: f64) -> Result<Self> {
        if !flops_per_joule.is_finite() || flops_per_joule <= 0.0 {
            return Err(Error::InvalidArgument {
                name: "logical efficiency",
                value: flops_per_joule,
                requirement: "finite and > 0",
            });
        }
        Ok(Self {
            flops_per_joule,
            peak_flops_per_sec: None,
        })
    }

    /// Attach a vendor peak throughput (FLOPs per second).
    pub fn with_peak(mut self, peak_flops_per_sec: f64) -> Result<Self> {
        if !peak_flops_per_sec.is_finite() || peak_flops_per_sec <= 0.0 {
            return Err(Error::InvalidArgument {
                name: "peak throughput",
                value: peak_flops_per_sec,
                requirement: "finite and > 0",
            });
        }
        self.peak_flops_per_sec = Some(peak_flops_per_sec);
        Ok(self)
    }

    pub fn flops_per_joule(&self) -> f64 {
        self.flops_per_joule
    }

    pub fn peak_flops_per_sec(&self) -> Option<f64> {
        self.peak_flops_per_sec
    }

    /// Energy in joules required to realize `work` at this efficiency.
    pub fn burden_of(&self, work: LogicalCompute) -> f64 {
        (work.ln_flops() - self.flops_per_joule.ln()).exp()
    }

    /// Model-FLOPs utilization at the given power draw:
    /// `efficiency * power / peak`.
    ///
    /// A result above one is reported, not rejected: vendor peaks depend on
    /// precision conventions and reporting conditions, so over-unity readings
    /// are a diagnostic about the baseline, not arithmetic failure.
    pub fn mfu(&self, power_watts: f64) -> Result<Utilization> {
        let peak = self.peak_flops_per_sec.ok_or(Error::PeakThroughputMissing)?;
        if !power_watts.is_finite() || power_watts <= 0.0 {
            return Err(Error::InvalidArgument {
                name: "power",
                value: power_watts,
                requirement: "finite and > 0",
            });
        }
        let value = self.flops_per_joule * power_watts / peak;
        Ok(Utilization {
            value,
            over_unity: value > 1.0,
        })
    }
}

/// A utilization reading plus the over-unity diagnostic flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Utilization {
    pub value: f64,
    pub over_unity: bool,
}

/// Observed logical-compute efficiency: work delivered per joule over a run
/// that drew `power_watts` for `elapsed_seconds`.
pub fn logical_efficiency(
    work: LogicalCompute,
    power_watts: f64,
    elapsed_seconds: f64,
) -> Result<f64> {
    for (name, value) in [("power", power_watts), ("elapsed time", elapsed_seconds)] {
        if !value.is_finite() || value <= 0.0 {
            return Err(Error::InvalidArgument {
                name,
                value,
                requirement: "finite and > 0",
            });
        }
    }
    Ok((work.ln_flops() - power_watts.ln() - elapsed_seconds.ln()).exp())
}

/// Logical compute needed to reach `target_loss` under the compute-only law:
/// the exact inverse of [`ComputeLawParams::eval`].
pub fn required_compute(law: &ComputeLawParams, target_loss: f64) -> Result<LogicalCompute> {
    if !target_loss.is_finite() {
        return Err(Error::InvalidArgument {
            name: "target loss",
            value: target_loss,
            requirement: "finite",
        });
    }
    let excess = target_loss - law.floor();
    if excess <= 0.0 {
        return Err(Error::InfeasibleTarget {
            target: target_loss,
            floor: law.floor(),
        });
    }
    let ln_c = (law.amplitude().ln() - excess.ln()) / law.exponent();
    LogicalCompute::from_ln_flops(ln_c)
}

/// Required compute for a target loss together with the physical burden of
/// realizing it at the given efficiency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BurdenReport {
    /// Logical compute the target demands.
    pub required: LogicalCompute,
    /// Energy in joules to realize it: `required / efficiency`.
    pub energy_joules: f64,
    /// The target loss the report answers for.
    pub target_loss: f64,
}

pub fn required_burden(
    law: &ComputeLawParams,
    target_loss: f64,
    eff: &EfficiencyState,
) -> Result<BurdenReport> {
    let required = required_compute(law, target_loss)?;
    Ok(BurdenReport {
        required,
        energy_joules: eff.burden_of(required),
        target_loss,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flops(v: f64) -> LogicalCompute {
        LogicalCompute::from_flops(v).unwrap()
    }

    #[test]
    fn efficiency_direct_division() {
        let e = logical_efficiency(flops(1e18), 1e6, 1e3).unwrap();
        assert!((e - 1e9).abs() / 1e9 < 1e-12);
    }

    #[test]
    fn efficiency_reference_point() {
        // 6e20 / (2.5e7 * 8.64e4) at extended precision.
        let e = logical_efficiency(flops(6e20), 2.5e7, 8.64e4).unwrap();
        assert!((e - 277777777.7777778).abs() / 2.7778e8 < 1e-4);
    }

    #[test]
    fn efficiency_rejects_nonpositive() {
        assert!(logical_efficiency(flops(1.0), 0.0, 1.0).is_err());
        assert!(logical_efficiency(flops(1.0), 1.0, -2.0).is_err());
    }

    #[test]
    fn burden_is_definitional_round_trip() {
        // burden(c, state built from logical_efficiency(c, p, t)) == p*t.
        let c = flops(7.3e19);
        let (p, t) = (2.2e6, 9.1e4);
        let state = EfficiencyState::new(logical_efficiency(c, p, t).unwrap()).unwrap();
        let energy = state.burden_of(c);
        assert!((energy - p * t).abs() / (p * t) < 1e-12);
    }

    #[test]
    fn burden_simple_division() {
        let state = EfficiencyState::new(1e9).unwrap();
        assert!((state.burden_of(flops(1e18)) - 1e9).abs() / 1e9 < 1e-12);
    }

    #[test]
    fn mfu_direct_substitution() {
        let state = EfficiencyState::new(1e9).unwrap().with_peak(2e15).unwrap();
        let u = state.mfu(1e6).unwrap();
        assert!((u.value - 0.5).abs() < 1e-12);
        assert!(!u.over_unity);
    }

    #[test]
    fn mfu_boundary_is_not_flagged() {
        let state = EfficiencyState::new(2e9).unwrap().with_peak(2e15).unwrap();
        let u = state.mfu(1e6).unwrap();
        assert!((u.value - 1.0).abs() < 1e-12);
        assert!(!u.over_unity);
    }

    #[test]
    fn mfu_over_unity_sets_flag_without_error() {
        let state = EfficiencyState::new(2e9).unwrap().with_peak(2e15).unwrap();
        let u = state.mfu(2e6).unwrap();
        assert!((u.value - 2.0).abs() < 1e-12);
        assert!(u.over_unity);
    }

    #[test]
    fn mfu_without_peak_is_a_state_error() {
        let state = EfficiencyState::new(1e9).unwrap();
        assert_eq!(state.mfu(1e6).unwrap_err(), Error::PeakThroughputMissing);
    }

    #[test]
    fn required_compute_inverts_eval() {
        let law = ComputeLawParams::new(0.0, 1.0, 0.5).unwrap();
        let c = required_compute(&law, 0.1).unwrap();
        assert!((c.flops() - 100.0).abs() < 1e-9);
    }

    #[test]
    fn required_compute_reference_point() {
        // Frozen from 50-digit (50 / 0.31)^(1/0.063); bisection cross-check
        // lives in the integration suite.
        let law = ComputeLawParams::new(1.69, 50.0, 0.063).unwrap();
        let c = required_compute(&law, 2.0).unwrap();
        assert!((c.log10() - 35.04140175399597).abs() < 1e-10);
    }

    #[test]
    fn floor_is_infeasible() {
        let law = ComputeLawParams::new(1.69, 50.0, 0.063).unwrap();
        match required_compute(&law, 1.69) {
            Err(Error::InfeasibleTarget { floor, .. }) => assert_eq!(floor, 1.69),
            other => panic!("expected infeasibility, got {other:?}"),
        }
    }

    #[test]
    fn burden_report_composes() {
        let law = ComputeLawParams::new(0.0, 1.0, 0.5).unwrap();
        let eff = EfficiencyState::new(1e9).unwrap();
        let report = required_burden(&law, 0.1, &eff).unwrap();
        assert!((report.required.flops() - 100.0).abs() < 1e-9);
        assert!((report.energy_joules - 1e-7).abs() / 1e-7 < 1e-12);
    }

    #[test]
    fn halving_excess_scales_energy_by_inverse_power() {
        let law = ComputeLawParams::new(1.0, 4.0, 0.5).unwrap();
        let eff = EfficiencyState::new(1e9).unwrap();
        let wide = required_burden(&law, 1.0 + 0.2, &eff).unwrap();
        let tight = required_burden(&law, 1.0 + 0.1, &eff).unwrap();
        let ratio = tight.energy_joules / wide.energy_joules;
        assert!((ratio - 4.0).abs() < 1e-10); // 2^(1/0.5)
    }

    #[test]
    fn doubling_efficiency_halves_energy_only() {
        let law = ComputeLawParams::new(1.69, 50.0, 0.063).unwrap();
        let base = required_burden(&law, 2.0, &EfficiencyState::new(1e9).unwrap()).unwrap();
        let faster = required_burden(&law, 2.0, &EfficiencyState::new(2e9).unwrap()).unwrap();
        assert_eq!(base.required, faster.required);
        assert!((base.energy_joules / faster.energy_joules - 2.0).abs() < 1e-12);
    }
}
