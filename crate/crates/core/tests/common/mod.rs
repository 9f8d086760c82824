#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use reltime::{CostParams, FuzzyTargets, GoelOkumotoModel, ReleaseProblem};

pub fn assert_close(actual: f64, expected: f64, tol: f64, label: &str) {
    assert!(
        (actual - expected).abs() <= tol,
        "{label}: {actual} vs expected {expected} (tol {tol})"
    );
}

pub fn reference_model() -> GoelOkumotoModel {
    GoelOkumotoModel::new(143.32, 0.1246).unwrap()
}

pub fn reference_cost() -> CostParams {
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
}

pub fn feasible_targets() -> FuzzyTargets {
    FuzzyTargets::new(26_000.0, 31_000.0, 0.95, 0.80, 1.0).unwrap()
}

pub fn infeasible_targets() -> FuzzyTargets {
    FuzzyTargets::new(23_000.0, 24_500.0, 0.95, 0.80, 1.0).unwrap()
}

pub fn feasible_problem() -> ReleaseProblem {
    ReleaseProblem::new(reference_model(), reference_cost(), feasible_targets()).unwrap()
}

pub fn infeasible_problem() -> ReleaseProblem {
    ReleaseProblem::new(reference_model(), reference_cost(), infeasible_targets()).unwrap()
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One failure history of the decreasing-intensity process `a·b·e^{−b·t}`
/// over `[0, horizon]`, simulated by thinning a rate-`a·b` Poisson process.
pub fn simulate_failures<R: Rng>(rng: &mut R, a: f64, b: f64, horizon: f64) -> Vec<f64> {
    let envelope_rate = a * b;
    let mut t = 0.0;
    let mut times = Vec::new();
    loop {
        t += -(1.0 - rng.gen::<f64>()).ln() / envelope_rate;
        if t > horizon {
            return times;
        }
        if rng.gen::<f64>() < (-b * t).exp() {
            times.push(t);
        }
    }
}

/// Superposes `reps` independent histories. The pooled process is again of
/// the same family with `reps·a` expected faults and the same rate, so a fit
/// on the pool estimates `(reps·a, b)`.
pub fn pooled_failures(seed: u64, a: f64, b: f64, horizon: f64, reps: usize) -> Vec<f64> {
    let mut rng = seeded_rng(seed);
    let mut all = Vec::new();
    for _ in 0..reps {
        all.extend(simulate_failures(&mut rng, a, b, horizon));
    }
    all.sort_by(|x, y| x.partial_cmp(y).unwrap());
    all.dedup();
    all
}

/// Five-point central difference, fourth-order accurate.
pub fn gradient_5pt(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h)
}
