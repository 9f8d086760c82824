//! Exponential (Goel–Okumoto type) software reliability growth model:
//! evaluation, failure-history handling, and parameter estimation.

use std::path::Path;

use crate::error::{Error, Result};
use crate::scalar;

/// Non-homogeneous Poisson fault-detection model with a finite expected
/// fault content `a` and per-fault detection rate `b`: the expected number
/// of faults found by time `t` is `a·(1 − e^{−b·t})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoelOkumotoModel {
    fault_content: f64,
    detection_rate: f64,
}

impl GoelOkumotoModel {
    pub fn new(fault_content: f64, detection_rate: f64) -> Result<Self> {
        if !fault_content.is_finite() || fault_content <= 0.0 {
            return Err(Error::domain(format!(
                "fault_content must be finite and positive, got {fault_content}"
            )));
        }
        if !detection_rate.is_finite() || detection_rate <= 0.0 {
            return Err(Error::domain(format!(
                "detection_rate must be finite and positive, got {detection_rate}"
            )));
        }
        Ok(Self { fault_content, detection_rate })
    }

    /// Expected total number of faults in the software (`a`).
    pub fn fault_content(&self) -> f64 {
        self.fault_content
    }

    /// Per-fault detection rate (`b`).
    pub fn detection_rate(&self) -> f64 {
        self.detection_rate
    }

    fn check_time(t: f64) -> Result<()> {
        if !t.is_finite() || t < 0.0 {
            return Err(Error::domain(format!("time must be finite and non-negative, got {t}")));
        }
        Ok(())
    }

    /// Expected number of faults detected by time `t`. Zero at `t = 0`,
    /// strictly increasing, saturating at the fault content.
    pub fn mean_value(&self, t: f64) -> Result<f64> {
        Self::check_time(t)?;
        Ok(self.fault_content * -(-self.detection_rate * t).exp_m1())
    }

    /// Expected number of faults detected in `[start, end]`.
    ///
    /// Evaluated as `a·e^{−b·start}·(1 − e^{−b·(end−start)})`, which stays
    /// accurate when the two mean values are nearly equal.
    pub fn mean_value_between(&self, start: f64, end: f64) -> Result<f64> {
        Self::check_time(start)?;
        Self::check_time(end)?;
        if end < start {
            return Err(Error::domain(format!("interval end {end} precedes start {start}")));
        }
        let b = self.detection_rate;
        Ok(self.fault_content * (-b * start).exp() * -(-b * (end - start)).exp_m1())
    }

    /// Instantaneous fault-detection intensity `a·b·e^{−b·t}`.
    pub fn intensity(&self, t: f64) -> Result<f64> {
        Self::check_time(t)?;
        Ok(self.fault_content * self.detection_rate * (-self.detection_rate * t).exp())
    }

    /// Probability that no failure surfaces during `(release_time,
    /// release_time + horizon]` given debugging stopped at `release_time`.
    pub fn conditional_reliability(&self, release_time: f64, horizon: f64) -> Result<f64> {
        let expected = self.mean_value_between(release_time, release_time + horizon)?;
        Ok((-expected).exp())
    }

    /// Log-likelihood of an observed failure history under this model.
    pub fn log_likelihood(&self, data: &FailureDataset) -> Result<f64> {
        if data.is_empty() {
            return Err(Error::estimation("log-likelihood needs at least one failure time", None));
        }
        let mut sum = 0.0;
        for &t in data.times() {
            sum += self.intensity(t)?.ln();
        }
        Ok(sum - self.mean_value(data.observation_end())?)
    }
}

/// Strictly increasing failure epochs observed over `[0, observation_end]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FailureDataset {
    times: Vec<f64>,
    observation_end: f64,
}

impl FailureDataset {
    pub fn new(times: Vec<f64>, observation_end: f64) -> Result<Self> {
        if !observation_end.is_finite() || observation_end <= 0.0 {
            return Err(Error::domain(format!(
                "observation_end must be finite and positive, got {observation_end}"
            )));
        }
        for (i, &t) in times.iter().enumerate() {
            if !t.is_finite() || t < 0.0 {
                return Err(Error::domain(format!(
                    "failure time #{} must be finite and non-negative, got {t}",
                    i + 1
                )));
            }
            if i > 0 && t <= times[i - 1] {
                return Err(Error::domain(format!(
                    "failure times must be strictly increasing (#{} = {} after {})",
                    i + 1,
                    t,
                    times[i - 1]
                )));
            }
            if t > observation_end {
                return Err(Error::domain(format!(
                    "failure time {t} lies beyond observation_end {observation_end}"
                )));
            }
        }
        Ok(Self { times, observation_end })
    }

    /// Reads one failure epoch per line. Blank lines and `#` comments are
    /// skipped; the observation window ends at the last recorded epoch.
    pub fn from_path(path: &Path) -> Result<Self> {
        let shown = path.display().to_string();
        let content =
            std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{shown}: {e}")))?;
        let mut times = Vec::new();
        for (idx, raw) in content.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let t: f64 = line.parse().map_err(|_| {
                Error::config(&shown, Some(idx + 1), format!("invalid failure time `{line}`"))
            })?;
            times.push(t);
        }
        let Some(&end) = times.last() else {
            return Err(Error::config(&shown, None, "contains no failure times"));
        };
        Self::new(times, end).map_err(|e| match e {
            Error::Domain(msg) => Error::config(&shown, None, msg),
            other => other,
        })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn observation_end(&self) -> f64 {
        self.observation_end
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitMethod {
    /// Maximize the exact NHPP log-likelihood (profile in the fault content,
    /// one-dimensional search in the detection rate).
    MaximumLikelihood,
    /// Minimize squared error between the mean-value curve and the observed
    /// cumulative fault counts. Useful as a cross-check; less efficient
    /// statistically than maximum likelihood.
    LeastSquares,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    pub method: FitMethod,
    /// Optional starting point `(fault_content, detection_rate)`; only the
    /// rate seeds the search, the content is profiled out.
    pub init: Option<(f64, f64)>,
    /// Total budget across bracketing, golden-section, and bisection steps.
    pub max_iterations: usize,
    /// Relative bracket width at which the rate search may stop.
    pub rel_tolerance: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            method: FitMethod::MaximumLikelihood,
            init: None,
            max_iterations: 200,
            rel_tolerance: 1e-10,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitOutcome {
    pub model: GoelOkumotoModel,
    /// Log-likelihood of the data at the fitted parameters (reported for
    /// both methods).
    pub log_likelihood: f64,
    pub iterations: usize,
    pub method: FitMethod,
}

/// Fits the model to a failure history with default options.
pub fn fit(data: &FailureDataset) -> Result<FitOutcome> {
    fit_with(data, &FitOptions::default())
}

/// On top of the width stop, the rate search keeps halving until the profile
/// score is this small, so the likelihood gradient at the reported optimum
/// stays below 1e-6 even for histories with thousands of epochs.
const SCORE_TOL: f64 = 1e-9;

/// Fits the model to a failure history.
pub fn fit_with(data: &FailureDataset, options: &FitOptions) -> Result<FitOutcome> {
    if data.len() < 2 {
        return Err(Error::estimation(
            format!("estimation needs at least two failure times, got {}", data.len()),
            None,
        ));
    }
    if let Some((a0, b0)) = options.init {
        if !(a0.is_finite() && a0 > 0.0 && b0.is_finite() && b0 > 0.0) {
            return Err(Error::domain(format!(
                "initial parameters must be finite and positive, got ({a0}, {b0})"
            )));
        }
    }
    if options.max_iterations == 0
        || !options.rel_tolerance.is_finite()
        || options.rel_tolerance <= 0.0
    {
        return Err(Error::domain(
            "fit options need max_iterations >= 1 and a positive rel_tolerance".to_string(),
        ));
    }
    match options.method {
        FitMethod::MaximumLikelihood => fit_mle(data, options),
        FitMethod::LeastSquares => fit_ls(data, options),
    }
}

fn fit_mle(data: &FailureDataset, options: &FitOptions) -> Result<FitOutcome> {
    let n = data.len() as f64;
    let end = data.observation_end();
    let time_sum: f64 = data.times().iter().sum();

    // The profile score tends to n·end/2 − Σtᵢ as the rate approaches zero
    // and to −Σtᵢ as it grows, so an interior root exists exactly when the
    // mean epoch sits before half the window. Checking this up front also
    // keeps the bracketing loop away from rates so small that the score is
    // pure cancellation noise.
    if time_sum >= 0.5 * n * end {
        return Err(Error::estimation(
            format!(
                "mean failure epoch {} is at or beyond half the observation window {}; \
                 detections are not slowing down, so the rate likelihood has no interior maximum",
                time_sum / n,
                end
            ),
            None,
        ));
    }

    // With the content profiled out at a(b) = n / (1 − e^{−b·end}), the
    // profile log-likelihood is n·ln(a(b)·b) − b·Σtᵢ − n and its derivative
    // in b (the score below) has at most one sign change, + to −.
    let profile_content = |b: f64| n / -(-b * end).exp_m1();
    let score = |b: f64| n / b - time_sum - profile_content(b) * end * (-b * end).exp();
    let profile_ll = |b: f64| n * (profile_content(b) * b).ln() - b * time_sum - n;

    let budget = options.max_iterations;
    let mut used = 0usize;

    let b_start = match options.init {
        Some((_, b0)) => b0,
        None => n / time_sum,
    };

    // Bracket the score's sign change around the start.
    let mut lo = b_start;
    let mut hi = b_start;
    let g_start = score(b_start);
    used += 1;
    if g_start > 0.0 {
        loop {
            if used >= budget {
                return Err(Error::estimation(
                    format!(
                        "no sign change in the profile score up to rate {hi}; iteration budget exhausted"
                    ),
                    Some((profile_content(hi), hi)),
                ));
            }
            hi *= 2.0;
            used += 1;
            if score(hi) < 0.0 {
                break;
            }
        }
    } else if g_start < 0.0 {
        loop {
            if used >= budget || lo < f64::MIN_POSITIVE * 1e16 {
                return Err(Error::estimation(
                    format!(
                        "profile score stays negative down to rate {lo}; the failure times are not \
                         front-loaded enough for a positive detection rate"
                    ),
                    Some((profile_content(lo), lo)),
                ));
            }
            lo /= 2.0;
            used += 1;
            if score(lo) > 0.0 {
                break;
            }
        }
    }

    let rate = if lo == hi {
        lo // score(b_start) was exactly zero
    } else {
        // Localize with golden section on the profile likelihood, then polish
        // the score root by bisection.
        let coarse = scalar::golden_max(
            |b| Ok(profile_ll(b)),
            lo,
            hi,
            1e-3 * (hi - lo),
            budget.saturating_sub(used),
        )?;
        used += coarse.iterations;
        let (mut blo, mut bhi) = (coarse.lo, coarse.hi);
        if !(score(blo) > 0.0 && score(bhi) < 0.0) {
            // Flat likelihood around the maximum; fall back to the wide bracket.
            blo = lo;
            bhi = hi;
        }
        let x_tol = options.rel_tolerance * 0.5 * (blo + bhi);
        let (root, steps) = scalar::bisect_root(
            |b| Ok(score(b)),
            blo,
            bhi,
            true,
            x_tol,
            SCORE_TOL,
            budget.saturating_sub(used),
        )?;
        used += steps;
        root
    };

    let model = GoelOkumotoModel::new(profile_content(rate), rate).map_err(|e| {
        Error::estimation(
            format!("search left the parameter domain: {e}"),
            Some((profile_content(rate), rate)),
        )
    })?;
    let log_likelihood = model.log_likelihood(data)?;
    Ok(FitOutcome { model, log_likelihood, iterations: used, method: FitMethod::MaximumLikelihood })
}

fn fit_ls(data: &FailureDataset, options: &FitOptions) -> Result<FitOutcome> {
    let times = data.times();
    let n = times.len();

    // For a fixed rate the best content is the least-squares slope of the
    // cumulative counts i on phi_i = 1 − e^{−b·t_i}.
    let content_for = |b: f64| {
        let mut num = 0.0;
        let mut den = 0.0;
        for (i, &t) in times.iter().enumerate() {
            let phi = -(-b * t).exp_m1();
            num += (i + 1) as f64 * phi;
            den += phi * phi;
        }
        num / den
    };
    let sse = |b: f64| {
        let a = content_for(b);
        let mut s = 0.0;
        for (i, &t) in times.iter().enumerate() {
            let r = a * -(-b * t).exp_m1() - (i + 1) as f64;
            s += r * r;
        }
        s
    };

    let b_start = match options.init {
        Some((_, b0)) => b0,
        None => n as f64 / times.iter().sum::<f64>(),
    };

    // Coarse geometric scan, then golden section inside the best bracket.
    let factors = -20..=20;
    let mut best_k = 0i32;
    let mut best_v = f64::INFINITY;
    let mut used = 0usize;
    for k in factors.clone() {
        let v = sse(b_start * 2f64.powi(k));
        used += 1;
        if v < best_v {
            best_v = v;
            best_k = k;
        }
    }
    if best_k == *factors.start() || best_k == *factors.end() {
        let b = b_start * 2f64.powi(best_k);
        return Err(Error::estimation(
            format!("least-squares objective keeps improving toward rate {b}; no interior optimum"),
            Some((content_for(b), b)),
        ));
    }
    let lo = b_start * 2f64.powi(best_k - 1);
    let hi = b_start * 2f64.powi(best_k + 1);
    let refined = scalar::golden_min(
        |b| Ok(sse(b)),
        lo,
        hi,
        options.rel_tolerance.max(1e-12) * b_start * 2f64.powi(best_k),
        options.max_iterations.saturating_sub(used),
    )?;
    used += refined.iterations;

    let rate = refined.x;
    let model = GoelOkumotoModel::new(content_for(rate), rate).map_err(|e| {
        Error::estimation(
            format!("search left the parameter domain: {e}"),
            Some((content_for(rate), rate)),
        )
    })?;
    let log_likelihood = model.log_likelihood(data)?;
    Ok(FitOutcome { model, log_likelihood, iterations: used, method: FitMethod::LeastSquares })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn section6() -> GoelOkumotoModel {
        GoelOkumotoModel::new(143.32, 0.1246).unwrap()
    }

    /// Idealized history lying exactly on the mean-value curve of
    /// (a, b) = (100, 0.2): the i-th epoch solves m(t) = i.
    fn quantile_dataset() -> FailureDataset {
        let times: Vec<f64> = (1..=60).map(|i| -(1.0 - i as f64 / 100.0).ln() / 0.2).collect();
        let end = *times.last().unwrap();
        FailureDataset::new(times, end).unwrap()
    }

    #[test]
    fn constructor_rejects_bad_parameters() {
        assert!(GoelOkumotoModel::new(0.0, 0.1).is_err());
        assert!(GoelOkumotoModel::new(-1.0, 0.1).is_err());
        assert!(GoelOkumotoModel::new(100.0, 0.0).is_err());
        assert!(GoelOkumotoModel::new(100.0, -0.2).is_err());
        assert!(GoelOkumotoModel::new(f64::NAN, 0.1).is_err());
        assert!(GoelOkumotoModel::new(100.0, f64::INFINITY).is_err());
    }

    #[test]
    fn mean_value_matches_reference_point() {
        let m = section6();
        assert_eq!(m.mean_value(0.0).unwrap(), 0.0);
        let v = m.mean_value(10.0).unwrap();
        assert!((v - 102.09355611068206).abs() < 1e-9, "m(10) = {v}");
    }

    #[test]
    fn mean_value_saturates_at_fault_content() {
        let m = section6();
        let v = m.mean_value(1e6).unwrap();
        assert!((v - 143.32).abs() < 1e-6);
        assert!(v <= 143.32);
    }

    #[test]
    fn mean_value_rejects_bad_times() {
        let m = section6();
        assert!(m.mean_value(-0.1).is_err());
        assert!(m.mean_value(f64::NAN).is_err());
        assert!(m.mean_value(f64::INFINITY).is_err());
    }

    #[test]
    fn intensity_at_origin_is_content_times_rate() {
        let m = section6();
        let v = m.intensity(0.0).unwrap();
        assert!((v - 17.857672).abs() < 1e-12, "intensity(0) = {v}");
        assert!(m.intensity(1e3).unwrap() < 1e-50);
    }

    #[test]
    fn intensity_solves_the_detection_equation() {
        // dm/dt = b (a − m(t))
        let m = section6();
        for &t in &[0.0, 1.0, 5.0, 20.0, 42.72] {
            let lhs = m.intensity(t).unwrap();
            let rhs = 0.1246 * (143.32 - m.mean_value(t).unwrap());
            assert!((lhs - rhs).abs() <= 1e-12 * lhs.max(1.0), "t = {t}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn mean_value_between_is_consistent() {
        let m = section6();
        assert_eq!(m.mean_value_between(7.0, 7.0).unwrap(), 0.0);
        let direct = m.mean_value(9.0).unwrap();
        let split =
            m.mean_value_between(0.0, 5.0).unwrap() + m.mean_value_between(5.0, 9.0).unwrap();
        assert!((direct - split).abs() < 1e-12 * direct);
        assert!(m.mean_value_between(5.0, 4.0).is_err());
    }

    #[test]
    fn reliability_matches_reference_points() {
        let m = section6();
        let r1 = m.conditional_reliability(42.72, 1.0).unwrap();
        assert!((r1 - 0.921354709873109).abs() < 1e-9, "R(1|42.72) = {r1}");
        let r2 = m.conditional_reliability(34.68, 1.0).unwrap();
        assert!((r2 - 0.8000728216988691).abs() < 1e-9, "R(1|34.68) = {r2}");
    }

    #[test]
    fn reliability_over_empty_window_is_one() {
        let m = section6();
        for &t in &[0.0, 1.0, 42.72, 500.0] {
            assert_eq!(m.conditional_reliability(t, 0.0).unwrap(), 1.0);
        }
    }

    #[test]
    fn reliability_improves_with_later_release() {
        let m = section6();
        let early = m.conditional_reliability(10.0, 1.0).unwrap();
        let late = m.conditional_reliability(40.0, 1.0).unwrap();
        assert!(late > early);
        // and longer missions are riskier
        let long = m.conditional_reliability(10.0, 5.0).unwrap();
        assert!(long < early);
    }

    #[test]
    fn log_likelihood_matches_hand_value() {
        // a = b = 1, single failure at t = 1 observed to t = 1:
        // ln λ(1) − m(1) = −1 − (1 − e^{−1})
        let m = GoelOkumotoModel::new(1.0, 1.0).unwrap();
        let data = FailureDataset::new(vec![1.0], 1.0).unwrap();
        let ll = m.log_likelihood(&data).unwrap();
        assert!((ll - (-1.6321205588285577)).abs() < 1e-12, "ll = {ll}");
    }

    #[test]
    fn log_likelihood_rejects_empty_history() {
        let m = section6();
        let data = FailureDataset::new(vec![], 10.0).unwrap();
        assert!(matches!(m.log_likelihood(&data), Err(Error::Estimation(_))));
    }

    #[test]
    fn dataset_validates_ordering_and_range() {
        assert!(FailureDataset::new(vec![2.0, 1.0], 5.0).is_err());
        assert!(FailureDataset::new(vec![1.0, 1.0], 5.0).is_err());
        assert!(FailureDataset::new(vec![-1.0], 5.0).is_err());
        assert!(FailureDataset::new(vec![6.0], 5.0).is_err());
        assert!(FailureDataset::new(vec![1.0], 0.0).is_err());
        assert!(FailureDataset::new(vec![1.0], f64::NAN).is_err());
        let ok = FailureDataset::new(vec![0.0, 1.0, 4.0], 5.0).unwrap();
        assert_eq!(ok.len(), 3);
        assert_eq!(ok.observation_end(), 5.0);
    }

    #[test]
    fn from_path_parses_comments_and_blanks() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("failures.txt");
        std::fs::write(&path, "# header\n0.5\n\n1.25  # inline note\n3.0\n").unwrap();
        let data = FailureDataset::from_path(&path).unwrap();
        assert_eq!(data.times(), &[0.5, 1.25, 3.0]);
        assert_eq!(data.observation_end(), 3.0);
    }

    #[test]
    fn from_path_reports_bad_lines_and_missing_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("failures.txt");
        std::fs::write(&path, "0.5\nnot-a-number\n").unwrap();
        match FailureDataset::from_path(&path) {
            Err(Error::Config(issue)) => {
                assert_eq!(issue.line, Some(2));
                assert!(issue.reason.contains("not-a-number"), "{issue}");
            }
            other => panic!("expected config error, got {other:?}"),
        }
        std::fs::write(&path, "# only comments\n").unwrap();
        assert!(matches!(FailureDataset::from_path(&path), Err(Error::Config(_))));
        assert!(matches!(
            FailureDataset::from_path(&dir.path().join("missing.txt")),
            Err(Error::Io(_))
        ));
    }

    #[test]
    fn mle_matches_independent_reference_fit() {
        // Reference optimum computed by long bisection on the profile score.
        let out = fit(&quantile_dataset()).unwrap();
        let a = out.model.fault_content();
        let b = out.model.detection_rate();
        assert!((a - 107.88701116016307).abs() < 1e-7 * a, "a = {a}");
        assert!((b - 0.17728874829354585).abs() < 1e-9 * b, "b = {b}");
        assert!((out.log_likelihood - 95.96229221856794).abs() < 1e-8);
        assert!(out.iterations <= 200);
        assert_eq!(out.method, FitMethod::MaximumLikelihood);
    }

    #[test]
    fn mle_is_a_local_maximum() {
        let data = quantile_dataset();
        let out = fit(&data).unwrap();
        let a = out.model.fault_content();
        let b = out.model.detection_rate();
        for (da, db) in [(1e-3, 0.0), (-1e-3, 0.0), (0.0, 1e-3), (0.0, -1e-3)] {
            let nearby = GoelOkumotoModel::new(a * (1.0 + da), b * (1.0 + db)).unwrap();
            assert!(nearby.log_likelihood(&data).unwrap() <= out.log_likelihood);
        }
    }

    #[test]
    fn mle_profile_pins_mean_value_at_observation_end() {
        // With the content profiled, m(end) equals the observed count exactly.
        let data = FailureDataset::new(vec![0.25, 0.8], 2.0).unwrap();
        let out = fit(&data).unwrap();
        let fitted = out.model.mean_value(2.0).unwrap();
        assert!((fitted - 2.0).abs() < 1e-9, "m(2) = {fitted}");
    }

    #[test]
    fn mle_start_point_does_not_change_the_optimum() {
        let data = quantile_dataset();
        let default_fit = fit(&data).unwrap();
        let seeded =
            fit_with(&data, &FitOptions { init: Some((500.0, 5.0)), ..FitOptions::default() })
                .unwrap();
        let rel = (seeded.model.detection_rate() - default_fit.model.detection_rate()).abs()
            / default_fit.model.detection_rate();
        assert!(rel < 1e-8, "rel = {rel}");
    }

    #[test]
    fn mle_rejects_histories_without_information() {
        let one = FailureDataset::new(vec![1.0], 2.0).unwrap();
        assert!(matches!(fit(&one), Err(Error::Estimation(_))));
    }

    #[test]
    fn mle_rejects_back_loaded_histories() {
        // Times clustered near the end imply an increasing detection rate,
        // which this model cannot express: the score has no positive root.
        let data = FailureDataset::new(vec![8.0, 9.0, 10.0], 10.0).unwrap();
        match fit(&data) {
            Err(Error::Estimation(failure)) => {
                assert!(failure.reason.contains("no interior maximum"), "{failure}");
            }
            other => panic!("expected estimation error, got {other:?}"),
        }
        // boundary case: mean epoch exactly at half the window
        let edge = FailureDataset::new(vec![2.5, 7.5], 10.0).unwrap();
        assert!(matches!(fit(&edge), Err(Error::Estimation(_))));
    }

    #[test]
    fn least_squares_recovers_exact_curve_data() {
        // The quantile history lies exactly on the curve of (100, 0.2), so
        // least squares on cumulative counts reproduces it to roundoff.
        let out = fit_with(
            &quantile_dataset(),
            &FitOptions { method: FitMethod::LeastSquares, ..FitOptions::default() },
        )
        .unwrap();
        let a = out.model.fault_content();
        let b = out.model.detection_rate();
        assert!((a - 100.0).abs() < 1e-6, "a = {a}");
        assert!((b - 0.2).abs() < 1e-9, "b = {b}");
        assert_eq!(out.method, FitMethod::LeastSquares);
    }

    #[test]
    fn fit_options_are_validated() {
        let data = quantile_dataset();
        assert!(fit_with(&data, &FitOptions { init: Some((-1.0, 0.1)), ..FitOptions::default() })
            .is_err());
        assert!(
            fit_with(&data, &FitOptions { max_iterations: 0, ..FitOptions::default() }).is_err()
        );
        assert!(
            fit_with(&data, &FitOptions { rel_tolerance: 0.0, ..FitOptions::default() }).is_err()
        );
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn mean_value_is_monotone_and_bounded(
                a in 1.0f64..1000.0,
                b in 0.01f64..2.0,
                t1 in 0.0f64..200.0,
                dt in 0.0f64..200.0,
            ) {
                let m = GoelOkumotoModel::new(a, b).unwrap();
                let v1 = m.mean_value(t1).unwrap();
                let v2 = m.mean_value(t1 + dt).unwrap();
                prop_assert!(v1 >= 0.0 && v2 <= a);
                prop_assert!(v2 >= v1);
            }

            #[test]
            fn mean_value_solves_the_detection_equation(
                a in 1.0f64..1000.0,
                b in 0.01f64..2.0,
                frac in 0.0f64..1.0,
            ) {
                // Central finite difference of m against b·(a − m), checked
                // where the intensity is not vanishing (b·t <= 5).
                let m = GoelOkumotoModel::new(a, b).unwrap();
                let mut t = frac * 5.0 / b;
                let h = 1e-5 * t.max(1.0);
                if t < h {
                    t = h; // keep the difference centered inside the domain
                }
                let fd = (m.mean_value(t + h).unwrap() - m.mean_value(t - h).unwrap()) / (2.0 * h);
                let rhs = b * (a - m.mean_value(t).unwrap());
                prop_assert!(
                    (fd - rhs).abs() <= 1e-8 * rhs.abs(),
                    "t = {}, fd = {}, rhs = {}", t, fd, rhs
                );
            }

            #[test]
            fn reliability_is_a_probability(
                a in 1.0f64..1000.0,
                b in 0.01f64..2.0,
                t in 0.0f64..100.0,
                x in 0.0f64..50.0,
            ) {
                let m = GoelOkumotoModel::new(a, b).unwrap();
                let r = m.conditional_reliability(t, x).unwrap();
                prop_assert!((0.0..=1.0).contains(&r));
            }
        }
    }
}
