//! Time-indexed efficiency-doubling dynamics.
//!
//! Efficiency compounds as `e(t) = e0 * 2^(r*t)` with `r` in doublings per
//! year. Holding the annual physical budget fixed, cumulative logical compute
//! and the relative excess loss over the floor then have closed forms, and so
//! do their inverses. The no-doubling case `r = 0` is an explicit analytic
//! branch; near-zero rates go through `expm1`/`ln_1p`, which keeps the
//! `r -> 0` limit seamless instead of hitting the 0/0 singularity.
//!
//! The calendar unit is the year throughout. The annual budget is energy per
//! year (joules/year), which is the only reading that gives the initial
//! compute normalization `c0 = e0 * p0` FLOP units.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::law::ComputeLawParams;

/// Seconds in one Julian year. Used only when converting a power draw at the
/// module boundary; everything inside works in years.
pub const SECONDS_PER_YEAR: f64 = 3.15576e7;

/// Annual energy budget of a constant power draw, in joules per year.
pub fn annual_budget_from_power(watts: f64) -> Result<f64> {
    if !watts.is_finite() || watts <= 0.0 {
        return Err(Error::InvalidArgument {
            name: "power",
            value: watts,
            requirement: "finite and > 0",
        });
    }
    Ok(watts * SECONDS_PER_YEAR)
}

/// Constants of the efficiency-doubling model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DynamicsParams {
    initial_efficiency: f64,
    annual_budget: f64,
    doubling_rate: f64,
    exponent: f64,
    initial_compute: f64,
    compute_overridden: bool,
}

impl DynamicsParams {
    /// Standard normalization: the initial compute is one year of the budget
    /// at initial efficiency, `c0 = e0 * p0`.
    pub fn new(
        initial_efficiency: f64,
        annual_budget: f64,
        doubling_rate: f64,
        exponent: f64,
    ) -> Result<Self> {
        let initial_compute = initial_efficiency * annual_budget;
        Self::build(
            initial_efficiency,
            annual_budget,
            doubling_rate,
            exponent,
            initial_compute,
            false,
        )
    }

    /// Same model with an explicit initial-compute override. The override is
    /// recorded and visible through [`DynamicsParams::compute_overridden`].
    pub fn with_initial_compute(
        initial_efficiency: f64,
        annual_budget: f64,
        doubling_rate: f64,
        exponent: f64,
        initial_compute: f64,
    ) -> Result<Self> {
        Self::build(
            initial_efficiency,
            annual_budget,
            doubling_rate,
            exponent,
            initial_compute,
            true,
        )
    }

    fn build(
        initial_efficiency: f64,
        annual_budget: f64,
        doubling_rate: f64,
        exponent: f64,
        initial_compute: f64,
        overridden: bool,
    ) -> Result<Self> {
        for (name, value) in [
            ("initial efficiency", initial_efficiency),
            ("annual budget", annual_budget),
            ("compute exponent", exponent),
        ] {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidArgument {
                    name,
                    value,
                    requirement: "finite and > 0",
                });
            }
        }
        if !doubling_rate.is_finite() || doubling_rate < 0.0 {
            return Err(Error::InvalidArgument {
                name: "doubling rate",
                value: doubling_rate,
                requirement: "finite and >= 0",
            });
        }
        if !initial_compute.is_finite() || initial_compute <= 0.0 {
            return Err(Error::InvalidArgument {
                name: "initial compute",
                value: initial_compute,
                requirement: "finite and > 0",
            });
        }
        Ok(Self {
            initial_efficiency,
            annual_budget,
            doubling_rate,
            exponent,
            initial_compute,
            compute_overridden: overridden,
        })
    }

    pub fn initial_efficiency(&self) -> f64 {
        self.initial_efficiency
    }

    pub fn annual_budget(&self) -> f64 {
        self.annual_budget
    }

    pub fn doubling_rate(&self) -> f64 {
        self.doubling_rate
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn initial_compute(&self) -> f64 {
        self.initial_compute
    }

    /// True when the caller supplied `c0` explicitly instead of the
    /// `e0 * p0` normalization.
    pub fn compute_overridden(&self) -> bool {
        self.compute_overridden
    }

    /// Efficiency after `years`: `e0 * 2^(rate * years)`.
    pub fn efficiency_at(&self, years: f64) -> Result<f64> {
        self.check_years(years)?;
        Ok(self.initial_efficiency * (self.doubling_rate * years).exp2())
    }

    /// Cumulative logical compute added over `[0, years]`.
    ///
    /// Closed form `e0*p0 * (2^(r*t) - 1) / (r ln 2)` for `r > 0`; the
    /// analytic limit `e0*p0*t` for `r = 0`. `expm1` carries the near-zero
    /// regime, so the result is continuous in the rate.
    pub fn cumulative_compute(&self, years: f64) -> Result<f64> {
        self.check_years(years)?;
        Ok(self.cumulative_unchecked(years))
    }

    fn cumulative_unchecked(&self, years: f64) -> f64 {
        let rate_per_year = self.initial_efficiency * self.annual_budget;
        if self.doubling_rate == 0.0 {
            return rate_per_year * years;
        }
        let growth = self.doubling_rate * LN_2;
        rate_per_year * (growth * years).exp_m1() / growth
    }

    /// Total logical compute available by `years`: `c0 +` cumulative.
    pub fn compute_trajectory(&self, years: f64) -> Result<f64> {
        Ok(self.initial_compute + self.cumulative_compute(years)?)
    }

    /// Relative excess loss over the floor at `years`:
    /// `(compute_trajectory / c0)^-exponent`. Exactly one at `years = 0`,
    /// strictly decreasing afterwards.
    pub fn excess_loss(&self, years: f64) -> Result<f64> {
        self.check_years(years)?;
        let added = self.cumulative_unchecked(years) / self.initial_compute;
        Ok((-self.exponent * added.ln_1p()).exp())
    }

    /// Absolute loss at `years`, anchored at `initial_loss` and decaying
    /// toward the law's floor: `floor + (initial_loss - floor) * excess`.
    /// The floor comes from the law; the decay shape from these dynamics.
    pub fn loss_trajectory(
        &self,
        law: &ComputeLawParams,
        initial_loss: f64,
        years: f64,
    ) -> Result<f64> {
        if !initial_loss.is_finite() || initial_loss <= law.floor() {
            return Err(Error::InfeasibleTarget {
                target: initial_loss,
                floor: law.floor(),
            });
        }
        Ok(law.floor() + (initial_loss - law.floor()) * self.excess_loss(years)?)
    }

    /// Years until the relative excess loss falls to `target_excess`, the
    /// closed-form inverse of [`DynamicsParams::excess_loss`].
    pub fn time_to_excess(&self, target_excess: f64) -> Result<f64> {
        if !target_excess.is_finite() || target_excess <= 0.0 || target_excess > 1.0 {
            return Err(Error::InvalidArgument {
                name: "target excess",
                value: target_excess,
                requirement: "within (0, 1]",
            });
        }
        // added = x^(-1/k) - 1, the cumulative-to-initial ratio at the target.
        let added = (-target_excess.ln() / self.exponent).exp_m1();
        let rate_per_year = self.initial_efficiency * self.annual_budget;
        let years = if self.doubling_rate == 0.0 {
            added * self.initial_compute / rate_per_year
        } else {
            let growth = self.doubling_rate * LN_2;
            (growth * self.initial_compute * added / rate_per_year).ln_1p() / growth
        };
        if !years.is_finite() {
            return Err(Error::Overflow {
                what: "time to target excess",
            });
        }
        Ok(years)
    }

    fn check_years(&self, years: f64) -> Result<()> {
        if !years.is_finite() || years < 0.0 {
            return Err(Error::InvalidArgument {
                name: "elapsed years",
                value: years,
                requirement: "finite and >= 0",
            });
        }
        Ok(())
    }
}

/// One sampled point of a projected trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionPoint {
    /// Elapsed time in years.
    pub years: f64,
    /// Total logical compute available by then.
    pub compute: f64,
    /// Relative excess loss, one at the start.
    pub excess: f64,
    /// Absolute loss, when a floor and initial loss were supplied.
    pub loss: Option<f64>,
}

/// Uniformly sample the trajectory on `[0, t_max]` with `samples >= 2` points.
pub fn sample_trajectory(
    dynamics: &DynamicsParams,
    t_max: f64,
    samples: usize,
) -> Result<Vec<ProjectionPoint>> {
    sample_impl(dynamics, None, t_max, samples)
}

/// Same sampling with the absolute-loss column filled in.
pub fn sample_loss_trajectory(
    dynamics: &DynamicsParams,
    law: &ComputeLawParams,
    initial_loss: f64,
    t_max: f64,
    samples: usize,
) -> Result<Vec<ProjectionPoint>> {
    sample_impl(dynamics, Some((law, initial_loss)), t_max, samples)
}

fn sample_impl(
    dynamics: &DynamicsParams,
    loss_anchor: Option<(&ComputeLawParams, f64)>,
    t_max: f64,
    samples: usize,
) -> Result<Vec<ProjectionPoint>> {
    if samples < 2 {
        return Err(Error::InvalidArgument {
            name: "samples",
            value: samples as f64,
            requirement: "at least 2",
        });
    }
    if !t_max.is_finite() || t_max <= 0.0 {
        return Err(Error::InvalidArgument {
            name: "t_max",
            value: t_max,
            requirement: "finite and > 0",
        });
    }
    if let Some((law, initial_loss)) = loss_anchor {
        // Reject the anchor up front rather than on the first sampled point.
        if !initial_loss.is_finite() || initial_loss <= law.floor() {
            return Err(Error::InfeasibleTarget {
                target: initial_loss,
                floor: law.floor(),
            });
        }
    }
    let last = (samples - 1) as f64;
    let mut points = Vec::with_capacity(samples);
    for i in 0..samples {
        let years = t_max * i as f64 / last;
        let compute = dynamics.compute_trajectory(years)?;
        let excess = dynamics.excess_loss(years)?;
        let loss = match loss_anchor {
            Some((law, initial_loss)) => Some(dynamics.loss_trajectory(law, initial_loss, years)?),
            None => None,
        };
        points.push(ProjectionPoint {
            years,
            compute,
            excess,
            loss,
        });
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_dynamics(rate: f64, exponent: f64) -> DynamicsParams {
        DynamicsParams::new(1.0, 1.0, rate, exponent).unwrap()
    }

    #[test]
    fn efficiency_doubles_on_schedule() {
        let dyn_ = DynamicsParams::new(1e9, 1.0, 0.5, 0.063).unwrap();
        assert!((dyn_.efficiency_at(2.0).unwrap() - 2e9).abs() < 1.0);
        let flat = DynamicsParams::new(1e9, 1.0, 0.0, 0.063).unwrap();
        assert_eq!(flat.efficiency_at(17.5).unwrap(), 1e9);
        let fast = DynamicsParams::new(1e9, 1.0, 1.0, 0.063).unwrap();
        assert_eq!(fast.efficiency_at(10.0).unwrap(), 1.024e12);
    }

    #[test]
    fn cumulative_no_doubling_is_linear() {
        let dyn_ = unit_dynamics(0.0, 0.063);
        assert_eq!(dyn_.cumulative_compute(7.0).unwrap(), 7.0);
        assert_eq!(dyn_.cumulative_compute(0.0).unwrap(), 0.0);
    }

    #[test]
    fn cumulative_reference_point() {
        // Frozen: (2^1 - 1) / (0.5 ln 2); quadrature cross-check in the
        // integration suite.
        let dyn_ = unit_dynamics(0.5, 0.063);
        let v = dyn_.cumulative_compute(2.0).unwrap();
        assert!((v - 2.8853900817779268).abs() < 1e-13);
    }

    #[test]
    fn trajectory_starts_at_initial_compute() {
        let dyn_ = DynamicsParams::new(2.0, 3.0, 0.7, 0.1).unwrap();
        assert_eq!(dyn_.compute_trajectory(0.0).unwrap(), 6.0);
    }

    #[test]
    fn trajectory_no_doubling_grows_linearly() {
        let dyn_ = unit_dynamics(0.0, 0.063);
        for t in [0.5, 1.0, 4.0, 19.0] {
            assert!((dyn_.compute_trajectory(t).unwrap() - (1.0 + t)).abs() < 1e-12);
        }
    }

    #[test]
    fn trajectory_reference_point() {
        // Frozen: 1 + 1023 / (0.5 ln 2).
        let dyn_ = unit_dynamics(0.5, 0.063);
        let v = dyn_.compute_trajectory(20.0).unwrap();
        assert!((v - 2952.754053658819).abs() / 2952.754053658819 < 1e-13);
    }

    #[test]
    fn excess_is_normalized_and_decreasing() {
        let dyn_ = unit_dynamics(0.5, 0.063);
        assert_eq!(dyn_.excess_loss(0.0).unwrap(), 1.0);
        let mut prev = 1.0;
        for i in 1..=40 {
            let x = dyn_.excess_loss(i as f64 * 0.5).unwrap();
            assert!(x < prev);
            prev = x;
        }
    }

    #[test]
    fn excess_reference_points() {
        // Frozen: 21^-0.063 and (1 + 1023/(0.5 ln 2))^-0.063.
        let flat = unit_dynamics(0.0, 0.063);
        assert!((flat.excess_loss(20.0).unwrap() - 0.8254678903629638).abs() < 1e-14);
        let moore = unit_dynamics(0.5, 0.063);
        assert!((moore.excess_loss(20.0).unwrap() - 0.6044712945925979).abs() < 1e-13);
    }

    #[test]
    fn loss_trajectory_anchors_and_decays() {
        let law = ComputeLawParams::new(1.69, 50.0, 0.063).unwrap();
        let dyn_ = unit_dynamics(0.5, 0.063);
        assert_eq!(dyn_.loss_trajectory(&law, 2.5, 0.0).unwrap(), 2.5);
        // Frozen composition: 1.69 + 0.81 * X(20).
        let v = dyn_.loss_trajectory(&law, 2.5, 20.0).unwrap();
        assert!((v - 2.1796217486200042).abs() < 1e-12);
        // With positive doubling the loss approaches the floor.
        let far = dyn_.loss_trajectory(&law, 2.5, 400.0).unwrap();
        assert!(far - 1.69 < 1e-6);
    }

    #[test]
    fn loss_trajectory_rejects_anchor_at_floor() {
        let law = ComputeLawParams::new(1.69, 50.0, 0.063).unwrap();
        let dyn_ = unit_dynamics(0.5, 0.063);
        assert!(matches!(
            dyn_.loss_trajectory(&law, 1.69, 1.0),
            Err(Error::InfeasibleTarget { .. })
        ));
    }

    #[test]
    fn time_to_excess_identity_at_one() {
        assert_eq!(unit_dynamics(0.5, 0.063).time_to_excess(1.0).unwrap(), 0.0);
        assert_eq!(unit_dynamics(0.0, 0.063).time_to_excess(1.0).unwrap(), 0.0);
    }

    #[test]
    fn time_to_excess_reference_point() {
        // Frozen inverse of the Moore-like 20-year endpoint.
        let dyn_ = unit_dynamics(0.5, 0.063);
        let t = dyn_.time_to_excess(0.6045).unwrap();
        assert!((t - 19.997826476273765).abs() < 1e-9);
        let exact = dyn_.time_to_excess(0.6044712945925979).unwrap();
        assert!((exact - 20.0).abs() < 1e-9);
    }

    #[test]
    fn time_to_excess_rejects_out_of_range() {
        let dyn_ = unit_dynamics(0.5, 0.063);
        assert!(dyn_.time_to_excess(0.0).is_err());
        assert!(dyn_.time_to_excess(1.2).is_err());
        assert!(dyn_.time_to_excess(-0.5).is_err());
    }

    #[test]
    fn negative_years_rejected_everywhere() {
        let dyn_ = unit_dynamics(0.5, 0.063);
        assert!(dyn_.efficiency_at(-1.0).is_err());
        assert!(dyn_.cumulative_compute(-1.0).is_err());
        assert!(dyn_.compute_trajectory(-1.0).is_err());
        assert!(dyn_.excess_loss(-1.0).is_err());
    }

    #[test]
    fn override_is_recorded_and_used() {
        let dyn_ = DynamicsParams::with_initial_compute(1.0, 1.0, 0.0, 0.5, 4.0).unwrap();
        assert!(dyn_.compute_overridden());
        assert_eq!(dyn_.compute_trajectory(0.0).unwrap(), 4.0);
        // X(t) = (1 + t/4)^-0.5 under the override.
        let x = dyn_.excess_loss(4.0).unwrap();
        assert!((x - 2f64.powf(-0.5)).abs() < 1e-15);
        let t = dyn_.time_to_excess(x).unwrap();
        assert!((t - 4.0).abs() < 1e-12);
    }

    #[test]
    fn sampling_is_uniform_and_anchored() {
        let dyn_ = unit_dynamics(0.5, 0.063);
        let pts = sample_trajectory(&dyn_, 20.0, 201).unwrap();
        assert_eq!(pts.len(), 201);
        assert_eq!(pts[0].years, 0.0);
        assert_eq!(pts[0].excess, 1.0);
        assert_eq!(pts[200].years, 20.0);
        assert!(pts.iter().all(|p| p.loss.is_none()));
    }

    #[test]
    fn sampling_with_loss_fills_column() {
        let law = ComputeLawParams::new(1.69, 50.0, 0.063).unwrap();
        let dyn_ = unit_dynamics(0.5, 0.063);
        let pts = sample_loss_trajectory(&dyn_, &law, 2.5, 20.0, 3).unwrap();
        assert_eq!(pts[0].loss, Some(2.5));
        assert!(pts[2].loss.unwrap() < 2.5);
    }

    #[test]
    fn sampling_rejects_degenerate_requests() {
        let dyn_ = unit_dynamics(0.5, 0.063);
        assert!(sample_trajectory(&dyn_, 20.0, 1).is_err());
        assert!(sample_trajectory(&dyn_, 0.0, 10).is_err());
    }
}
