//! Expected release-cost model: removal work during testing, testing effort,
//! and warranty repairs, with truncated-exponential fault-removal times.

use crate::error::{Error, Result};
use crate::srgm::GoelOkumotoModel;

/// Exponential removal-time distribution truncated to `[0, cutoff]`: removal
/// can never take longer than the cutoff the process enforces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedExponential {
    rate: f64,
    cutoff: f64,
}

impl TruncatedExponential {
    pub fn new(rate: f64, cutoff: f64) -> Result<Self> {
        if !rate.is_finite() || rate <= 0.0 {
            return Err(Error::domain(format!(
                "removal rate must be finite and positive, got {rate}"
            )));
        }
        if !cutoff.is_finite() || cutoff <= 0.0 {
            return Err(Error::domain(format!(
                "removal cutoff must be finite and positive, got {cutoff}"
            )));
        }
        Ok(Self { rate, cutoff })
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    /// Density at `y`; zero outside `[0, cutoff]`.
    pub fn pdf(&self, y: f64) -> f64 {
        if !(0.0..=self.cutoff).contains(&y) {
            return 0.0;
        }
        let normalizer = -(-self.rate * self.cutoff).exp_m1();
        self.rate * (-self.rate * y).exp() / normalizer
    }

    /// Mean removal time, `1/rate − cutoff/(e^{rate·cutoff} − 1)`.
    pub fn mean(&self) -> f64 {
        1.0 / self.rate - self.cutoff / (self.rate * self.cutoff).exp_m1()
    }
}

/// Price structure of a release. Effort cost grows as
/// `coeff · T^exponent`; each fault found costs its expected removal time
/// at the phase's hourly rate, warranty repairs being far costlier than
/// in-testing fixes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostParams {
    /// Fixed cost paid regardless of the release time.
    pub setup_cost: f64,
    /// Cost per unit of removal time during testing.
    pub testing_removal_rate: f64,
    /// Scale of the testing-effort term.
    pub testing_cost_coeff: f64,
    /// Effort exponent, in (0, 1]: testing shows diminishing cost growth.
    pub testing_cost_exponent: f64,
    /// Cost per unit of removal time under warranty.
    pub warranty_removal_rate: f64,
    /// Expected removal time per fault found during testing.
    pub mean_removal_testing: f64,
    /// Expected removal time per fault surfacing under warranty.
    pub mean_removal_warranty: f64,
    /// Length of the warranty window after release.
    pub warranty_length: f64,
}

impl CostParams {
    /// Checks signs and ranges, returning the parameters unchanged.
    pub fn validated(self) -> Result<Self> {
        let non_negative = [
            ("setup_cost", self.setup_cost),
            ("testing_removal_rate", self.testing_removal_rate),
            ("testing_cost_coeff", self.testing_cost_coeff),
            ("warranty_removal_rate", self.warranty_removal_rate),
            ("mean_removal_testing", self.mean_removal_testing),
            ("mean_removal_warranty", self.mean_removal_warranty),
            ("warranty_length", self.warranty_length),
        ];
        for (name, v) in non_negative {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::domain(format!(
                    "{name} must be finite and non-negative, got {v}"
                )));
            }
        }
        let e = self.testing_cost_exponent;
        if !e.is_finite() || e <= 0.0 || e > 1.0 {
            return Err(Error::domain(format!(
                "testing_cost_exponent must lie in (0, 1], got {e}"
            )));
        }
        Ok(self)
    }
}

/// Expected cost of removing the faults found during `[0, release_time]`.
pub fn testing_removal_cost(
    model: &GoelOkumotoModel,
    params: &CostParams,
    release_time: f64,
) -> Result<f64> {
    Ok(params.testing_removal_rate
        * params.mean_removal_testing
        * model.mean_value(release_time)?)
}

/// Cost of running the testing phase itself up to `release_time`.
pub fn testing_effort_cost(params: &CostParams, release_time: f64) -> Result<f64> {
    if !release_time.is_finite() || release_time < 0.0 {
        return Err(Error::domain(format!(
            "release_time must be finite and non-negative, got {release_time}"
        )));
    }
    Ok(params.testing_cost_coeff * release_time.powf(params.testing_cost_exponent))
}

/// Expected cost of repairing the faults that surface during the warranty
/// window `(release_time, release_time + warranty_length]`.
pub fn warranty_cost(
    model: &GoelOkumotoModel,
    params: &CostParams,
    release_time: f64,
) -> Result<f64> {
    Ok(params.warranty_removal_rate
        * params.mean_removal_warranty
        * model.mean_value_between(release_time, release_time + params.warranty_length)?)
}

/// Total expected cost of releasing at `release_time`: the exact sum of the
/// setup cost and the three phase components.
pub fn total_cost(model: &GoelOkumotoModel, params: &CostParams, release_time: f64) -> Result<f64> {
    Ok(params.setup_cost
        + testing_removal_cost(model, params, release_time)?
        + testing_effort_cost(params, release_time)?
        + warranty_cost(model, params, release_time)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn section6_model() -> GoelOkumotoModel {
        GoelOkumotoModel::new(143.32, 0.1246).unwrap()
    }

    fn section6_cost() -> CostParams {
        CostParams {
            setup_cost: 50.0,
            testing_removal_rate: 60.0,
            testing_cost_coeff: 700.0,
            testing_cost_exponent: 0.95,
            warranty_removal_rate: 3600.0,
            mean_removal_testing: 0.1,
            mean_removal_warranty: 0.5,
            warranty_length: 450.0,
        }
        .validated()
        .unwrap()
    }

    #[test]
    fn truncated_exponential_rejects_bad_parameters() {
        assert!(TruncatedExponential::new(0.0, 1.0).is_err());
        assert!(TruncatedExponential::new(-1.0, 1.0).is_err());
        assert!(TruncatedExponential::new(1.0, 0.0).is_err());
        assert!(TruncatedExponential::new(1.0, f64::INFINITY).is_err());
        assert!(TruncatedExponential::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn truncated_exponential_density_reference_point() {
        let d = TruncatedExponential::new(1.0, 1.0).unwrap();
        let p = d.pdf(0.5);
        assert!((p - 0.9595173756674719).abs() < 1e-12, "pdf(0.5) = {p}");
    }

    #[test]
    fn truncated_exponential_density_vanishes_outside_support() {
        let d = TruncatedExponential::new(1.0, 1.0).unwrap();
        assert_eq!(d.pdf(-0.1), 0.0);
        assert_eq!(d.pdf(1.1), 0.0);
        assert_eq!(d.pdf(f64::NAN), 0.0);
        assert_eq!(d.pdf(f64::INFINITY), 0.0);
        assert!(d.pdf(1.0) > 0.0);
    }

    #[test]
    fn truncated_exponential_mean_reference_point() {
        let d = TruncatedExponential::new(1.0, 1.0).unwrap();
        let m = d.mean();
        assert!((m - 0.41802329313067355).abs() < 1e-12, "mean = {m}");
    }

    #[test]
    fn truncated_exponential_mean_limits() {
        // Long cutoff: approaches the untruncated mean 1/rate.
        let long = TruncatedExponential::new(2.0, 1000.0).unwrap();
        assert!((long.mean() - 0.5).abs() < 1e-12);
        // Slow rate: approaches the uniform mean cutoff/2.
        let slow = TruncatedExponential::new(1e-9, 4.0).unwrap();
        assert!((slow.mean() - 2.0).abs() < 1e-6);
    }

    #[test]
    fn validated_rejects_out_of_range_parameters() {
        let good = section6_cost();
        assert!(CostParams { setup_cost: -1.0, ..good }.validated().is_err());
        assert!(CostParams { testing_cost_exponent: 0.0, ..good }.validated().is_err());
        assert!(CostParams { testing_cost_exponent: 1.5, ..good }.validated().is_err());
        assert!(CostParams { mean_removal_warranty: f64::NAN, ..good }.validated().is_err());
        assert!(CostParams { warranty_length: -3.0, ..good }.validated().is_err());
        assert!(CostParams { testing_cost_exponent: 1.0, ..good }.validated().is_ok());
    }

    #[test]
    fn components_match_reference_points() {
        let m = section6_model();
        let p = section6_cost();
        let e1 = testing_removal_cost(&m, &p, 42.72).unwrap();
        assert!((e1 - 855.7248572763491).abs() < 1e-9 * e1, "E1 = {e1}");
        let e2 = testing_effort_cost(&p, 42.72).unwrap();
        assert!((e2 - 24785.502136994084).abs() < 1e-9 * e2, "E2 = {e2}");
        let e3 = warranty_cost(&m, &p, 42.72).unwrap();
        assert!((e3 - 1258.5428170952582).abs() < 1e-9 * e3, "E3 = {e3}");
    }

    #[test]
    fn totals_match_reference_points() {
        let m = section6_model();
        let p = section6_cost();
        let at_feasible_opt = total_cost(&m, &p, 42.72).unwrap();
        assert!(
            (at_feasible_opt - 26949.76981136569).abs() < 1e-9 * at_feasible_opt,
            "C(42.72) = {at_feasible_opt}"
        );
        let at_compromise = total_cost(&m, &p, 34.68).unwrap();
        assert!(
            (at_compromise - 24657.354494416213).abs() < 1e-9 * at_compromise,
            "C(34.68) = {at_compromise}"
        );
    }

    #[test]
    fn immediate_release_pays_full_warranty_burden() {
        let m = section6_model();
        let p = section6_cost();
        let direct = total_cost(&m, &p, 0.0).unwrap();
        let identity = p.setup_cost
            + p.warranty_removal_rate
                * p.mean_removal_warranty
                * m.mean_value(p.warranty_length).unwrap();
        assert!((direct - identity).abs() < 1e-12 * direct, "{direct} vs {identity}");
        assert!((direct - 258026.0).abs() < 0.5, "C(0) = {direct}");
    }

    #[test]
    fn no_warranty_means_no_warranty_cost() {
        let m = section6_model();
        let p = CostParams { warranty_length: 0.0, ..section6_cost() };
        assert_eq!(warranty_cost(&m, &p, 10.0).unwrap(), 0.0);
    }

    #[test]
    fn testing_removal_cost_is_bounded_by_fault_content() {
        let m = section6_model();
        let p = section6_cost();
        let bound = p.testing_removal_rate * p.mean_removal_testing * m.fault_content();
        for &t in &[0.0, 1.0, 50.0, 1000.0] {
            assert!(testing_removal_cost(&m, &p, t).unwrap() <= bound);
        }
    }

    #[test]
    fn effort_cost_rejects_bad_times() {
        let p = section6_cost();
        assert!(testing_effort_cost(&p, -1.0).is_err());
        assert!(testing_effort_cost(&p, f64::NAN).is_err());
        assert_eq!(testing_effort_cost(&p, 0.0).unwrap(), 0.0);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arbitrary_params() -> impl Strategy<Value = CostParams> {
            (
                0.0f64..1000.0,
                0.0f64..500.0,
                0.0f64..5000.0,
                0.05f64..1.0,
                0.0f64..50_000.0,
                0.0f64..2.0,
                0.0f64..5.0,
                0.0f64..2000.0,
            )
                .prop_map(|(setup, trr, coeff, exponent, wrr, mrt, mrw, wl)| {
                    CostParams {
                        setup_cost: setup,
                        testing_removal_rate: trr,
                        testing_cost_coeff: coeff,
                        testing_cost_exponent: exponent,
                        warranty_removal_rate: wrr,
                        mean_removal_testing: mrt,
                        mean_removal_warranty: mrw,
                        warranty_length: wl,
                    }
                })
        }

        proptest! {
            #[test]
            fn total_is_exactly_the_component_sum(
                p in arbitrary_params(),
                a in 1.0f64..1000.0,
                b in 0.01f64..2.0,
                t in 0.0f64..300.0,
            ) {
                let m = GoelOkumotoModel::new(a, b).unwrap();
                let total = total_cost(&m, &p, t).unwrap();
                let sum = p.setup_cost
                    + testing_removal_cost(&m, &p, t).unwrap()
                    + testing_effort_cost(&p, t).unwrap()
                    + warranty_cost(&m, &p, t).unwrap();
                prop_assert_eq!(total, sum);
            }

            #[test]
            fn testing_components_grow_and_warranty_shrinks(
                p in arbitrary_params(),
                a in 1.0f64..1000.0,
                b in 0.01f64..2.0,
                t1 in 0.0f64..300.0,
                dt in 0.0f64..300.0,
            ) {
                let m = GoelOkumotoModel::new(a, b).unwrap();
                let t2 = t1 + dt;
                prop_assert!(
                    testing_removal_cost(&m, &p, t2).unwrap()
                        >= testing_removal_cost(&m, &p, t1).unwrap()
                );
                prop_assert!(
                    testing_effort_cost(&p, t2).unwrap() >= testing_effort_cost(&p, t1).unwrap()
                );
                prop_assert!(warranty_cost(&m, &p, t2).unwrap() <= warranty_cost(&m, &p, t1).unwrap());
                prop_assert!(total_cost(&m, &p, t1).unwrap() >= p.setup_cost);
            }

            #[test]
            fn removal_distribution_mean_is_inside_bounds(
                rate in 0.001f64..100.0,
                cutoff in 0.01f64..1000.0,
            ) {
                let d = TruncatedExponential::new(rate, cutoff).unwrap();
                let mean = d.mean();
                prop_assert!(mean > 0.0);
                prop_assert!(mean < cutoff);
                prop_assert!(mean <= 1.0 / rate);
                // strict while the truncation correction cutoff/(e^{rate·cutoff} − 1)
                // is still above one ulp of 1/rate
                if rate * cutoff <= 30.0 {
                    prop_assert!(mean < 1.0 / rate);
                }
            }
        }
    }
}
