//! Flat `key = value` run configuration: parsing with precise blame (key and
//! line), cross-key validation, and assembly of the solver inputs.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::cost::{CostParams, TruncatedExponential};
use crate::error::{Error, Result};
use crate::fuzzy::FuzzyTargets;
use crate::solver::{ReleaseProblem, SolverOptions};
use crate::srgm::{fit_with, FailureDataset, FitMethod, FitOptions, FitOutcome, GoelOkumotoModel};

/// Every key a config file may set. Anything else is rejected with its line.
const KNOWN_KEYS: &[&str] = &[
    // model source (parameters XOR failure history)
    "fault_content",
    "detection_rate",
    "failure_data",
    "fit_method",
    // cost structure
    "setup_cost",
    "testing_removal_rate",
    "testing_cost_coeff",
    "testing_cost_exponent",
    "warranty_removal_rate",
    "mean_removal_testing",
    "removal_rate_testing",
    "removal_cutoff_testing",
    "mean_removal_warranty",
    "removal_rate_warranty",
    "removal_cutoff_warranty",
    "warranty_length",
    // fuzzy targets
    "cost_budget",
    "cost_tolerance",
    "reliability_goal",
    "reliability_tolerance",
    "mission_time",
    // solver and output controls
    "window_low",
    "window_high",
    "grid_points",
    "weight_cost",
    "weight_reliability",
    "alpha_target",
    "sweep_step",
    "output",
];

/// Where the detection model comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelSource {
    /// Explicit parameters.
    Parameters { fault_content: f64, detection_rate: f64 },
    /// A failure history to estimate the parameters from.
    FailureData(PathBuf),
}

/// A parsed, validated run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub model: ModelSource,
    /// Estimation method when the model comes from a failure history.
    pub fit_method: FitMethod,
    pub cost: CostParams,
    pub targets: FuzzyTargets,
    /// Release-time search window; `None` means the solver default.
    pub window: Option<(f64, f64)>,
    pub grid_points: usize,
    /// Goal-programming weights `(cost, reliability)`.
    pub weights: (f64, f64),
    /// Satisfaction level the goal program aims for.
    pub alpha_target: f64,
    /// Step for sweep output; `None` means the caller's default.
    pub sweep_step: Option<f64>,
    /// Directory for report artifacts, when the config names one.
    pub output: Option<PathBuf>,
}

/// Reads and parses a config file. Read failures are reported as
/// configuration errors naming the path so the exit-code mapping stays
/// uniform for "bad config" however it is bad.
pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Error::config(path.display().to_string(), None, format!("cannot read config: {e}"))
    })?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    parse_config(&text, base)
}

/// Parses config text. Relative paths inside the config resolve against
/// `base_dir` (the config file's directory).
pub fn parse_config(text: &str, base_dir: &Path) -> Result<RunConfig> {
    let mut entries = Entries::parse(text)?;

    let model = read_model_source(&mut entries, base_dir)?;
    let fit_method = match entries.take("fit_method") {
        None => FitMethod::MaximumLikelihood,
        Some((value, line)) => {
            if !matches!(model, ModelSource::FailureData(_)) {
                return Err(Error::config(
                    "fit_method",
                    Some(line),
                    "only meaningful together with failure_data",
                ));
            }
            match value.as_str() {
                "mle" => FitMethod::MaximumLikelihood,
                "ls" => FitMethod::LeastSquares,
                other => {
                    return Err(Error::config(
                        "fit_method",
                        Some(line),
                        format!("expected `mle` or `ls`, got `{other}`"),
                    ))
                }
            }
        }
    };

    let cost = CostParams {
        setup_cost: require_non_negative(&mut entries, "setup_cost")?,
        testing_removal_rate: require_non_negative(&mut entries, "testing_removal_rate")?,
        testing_cost_coeff: require_non_negative(&mut entries, "testing_cost_coeff")?,
        testing_cost_exponent: read_exponent(&mut entries)?,
        warranty_removal_rate: require_non_negative(&mut entries, "warranty_removal_rate")?,
        mean_removal_testing: read_removal_mean(
            &mut entries,
            "mean_removal_testing",
            "removal_rate_testing",
            "removal_cutoff_testing",
        )?,
        mean_removal_warranty: read_removal_mean(
            &mut entries,
            "mean_removal_warranty",
            "removal_rate_warranty",
            "removal_cutoff_warranty",
        )?,
        warranty_length: require_non_negative(&mut entries, "warranty_length")?,
    };

    let targets = read_targets(&mut entries)?;
    let window = read_window(&mut entries)?;

    let defaults = SolverOptions::default();
    let grid_points = match entries.take_parsed::<usize>("grid_points")? {
        None => defaults.grid_points,
        Some((n, line)) => {
            if n < 3 {
                return Err(Error::config(
                    "grid_points",
                    Some(line),
                    format!("must be at least 3, got {n}"),
                ));
            }
            n
        }
    };

    let weights = (
        optional_weight(&mut entries, "weight_cost")?,
        optional_weight(&mut entries, "weight_reliability")?,
    );
    let alpha_target = match entries.take_parsed::<f64>("alpha_target")? {
        None => 0.0,
        Some((v, line)) => {
            if !v.is_finite() || !(0.0..=1.0).contains(&v) {
                return Err(Error::config(
                    "alpha_target",
                    Some(line),
                    format!("must lie in [0, 1], got {v}"),
                ));
            }
            v
        }
    };
    let sweep_step = match entries.take_parsed::<f64>("sweep_step")? {
        None => None,
        Some((v, line)) => {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::config(
                    "sweep_step",
                    Some(line),
                    format!("must be finite and positive, got {v}"),
                ));
            }
            Some(v)
        }
    };
    let output = entries.take("output").map(|(value, _)| resolve(base_dir, &value));

    Ok(RunConfig {
        model,
        fit_method,
        cost,
        targets,
        window,
        grid_points,
        weights,
        alpha_target,
        sweep_step,
        output,
    })
}

impl RunConfig {
    /// The detection model this run uses: the explicit parameters, or a fit
    /// to the named failure history (with its outcome for reporting).
    pub fn resolve_model(&self) -> Result<(GoelOkumotoModel, Option<FitOutcome>)> {
        match &self.model {
            ModelSource::Parameters { fault_content, detection_rate } => {
                Ok((GoelOkumotoModel::new(*fault_content, *detection_rate)?, None))
            }
            ModelSource::FailureData(path) => {
                let data = FailureDataset::from_path(path)?;
                let outcome = fit_with(
                    &data,
                    &FitOptions { method: self.fit_method, ..FitOptions::default() },
                )?;
                Ok((outcome.model, Some(outcome)))
            }
        }
    }

    pub fn problem(&self, model: GoelOkumotoModel) -> Result<ReleaseProblem> {
        match self.window {
            Some(window) => ReleaseProblem::with_window(model, self.cost, self.targets, window),
            None => ReleaseProblem::new(model, self.cost, self.targets),
        }
    }

    pub fn solver_options(&self) -> SolverOptions {
        SolverOptions { grid_points: self.grid_points, ..SolverOptions::default() }
    }

    /// Renders a config equivalent to this one with the model source replaced
    /// by explicit parameters — what `fit --out` writes so later runs skip
    /// re-estimation. Parses back to the same decision inputs.
    pub fn render_derived(&self, model: &GoelOkumotoModel) -> String {
        let mut s = String::new();
        if let ModelSource::FailureData(path) = &self.model {
            let _ = writeln!(s, "# model parameters estimated from {}", path.display());
        }
        let _ = writeln!(s, "fault_content = {}", model.fault_content());
        let _ = writeln!(s, "detection_rate = {}", model.detection_rate());
        s.push('\n');
        let _ = writeln!(s, "setup_cost = {}", self.cost.setup_cost);
        let _ = writeln!(s, "testing_removal_rate = {}", self.cost.testing_removal_rate);
        let _ = writeln!(s, "mean_removal_testing = {}", self.cost.mean_removal_testing);
        let _ = writeln!(s, "testing_cost_coeff = {}", self.cost.testing_cost_coeff);
        let _ = writeln!(s, "testing_cost_exponent = {}", self.cost.testing_cost_exponent);
        let _ = writeln!(s, "warranty_removal_rate = {}", self.cost.warranty_removal_rate);
        let _ = writeln!(s, "mean_removal_warranty = {}", self.cost.mean_removal_warranty);
        let _ = writeln!(s, "warranty_length = {}", self.cost.warranty_length);
        s.push('\n');
        let _ = writeln!(s, "cost_budget = {}", self.targets.budget());
        let _ = writeln!(s, "cost_tolerance = {}", self.targets.cost_tolerance());
        let _ = writeln!(s, "reliability_goal = {}", self.targets.reliability_goal());
        let _ = writeln!(s, "reliability_tolerance = {}", self.targets.reliability_tolerance());
        let _ = writeln!(s, "mission_time = {}", self.targets.mission_time());

        let defaults = SolverOptions::default();
        let mut extras = String::new();
        if let Some((lo, hi)) = self.window {
            let _ = writeln!(extras, "window_low = {lo}");
            let _ = writeln!(extras, "window_high = {hi}");
        }
        if self.grid_points != defaults.grid_points {
            let _ = writeln!(extras, "grid_points = {}", self.grid_points);
        }
        if self.weights != (1.0, 1.0) {
            let _ = writeln!(extras, "weight_cost = {}", self.weights.0);
            let _ = writeln!(extras, "weight_reliability = {}", self.weights.1);
        }
        if self.alpha_target != 0.0 {
            let _ = writeln!(extras, "alpha_target = {}", self.alpha_target);
        }
        if let Some(step) = self.sweep_step {
            let _ = writeln!(extras, "sweep_step = {step}");
        }
        if !extras.is_empty() {
            s.push('\n');
            s.push_str(&extras);
        }
        s
    }
}

/// Raw `key -> (value, line)` map with typed take-out helpers.
struct Entries(HashMap<String, (String, usize)>);

impl Entries {
    fn parse(text: &str) -> Result<Self> {
        let mut map = HashMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let stripped = raw.split('#').next().unwrap_or("").trim();
            if stripped.is_empty() {
                continue;
            }
            let Some((key, value)) = stripped.split_once('=') else {
                return Err(Error::config(stripped, Some(line_no), "expected `key = value`"));
            };
            let key = key.trim();
            let value = value.trim();
            if key.is_empty() {
                return Err(Error::config(stripped, Some(line_no), "expected `key = value`"));
            }
            if value.is_empty() {
                return Err(Error::config(key, Some(line_no), "missing value"));
            }
            if !KNOWN_KEYS.contains(&key) {
                return Err(Error::config(key, Some(line_no), "unknown key"));
            }
            if let Some((_, first)) = map.insert(key.to_string(), (value.to_string(), line_no)) {
                return Err(Error::config(
                    key,
                    Some(line_no),
                    format!("duplicate key; first set on line {first}"),
                ));
            }
        }
        Ok(Self(map))
    }

    fn take(&mut self, key: &str) -> Option<(String, usize)> {
        self.0.remove(key)
    }

    fn take_parsed<T: std::str::FromStr>(&mut self, key: &str) -> Result<Option<(T, usize)>> {
        match self.take(key) {
            None => Ok(None),
            Some((value, line)) => match value.parse::<T>() {
                Ok(v) => Ok(Some((v, line))),
                Err(_) => Err(Error::config(key, Some(line), format!("invalid number `{value}`"))),
            },
        }
    }

    fn require_f64(&mut self, key: &str) -> Result<(f64, usize)> {
        self.take_parsed::<f64>(key)?
            .ok_or_else(|| Error::config(key, None, "missing required key"))
    }
}

fn resolve(base_dir: &Path, value: &str) -> PathBuf {
    let candidate = Path::new(value);
    if candidate.is_absolute() {
        candidate.to_path_buf()
    } else {
        base_dir.join(candidate)
    }
}

fn read_model_source(entries: &mut Entries, base_dir: &Path) -> Result<ModelSource> {
    let fault_content = entries.take_parsed::<f64>("fault_content")?;
    let detection_rate = entries.take_parsed::<f64>("detection_rate")?;
    let failure_data = entries.take("failure_data");

    match (failure_data, fault_content, detection_rate) {
        (Some((_, line)), Some(_), _) | (Some((_, line)), _, Some(_)) => Err(Error::config(
            "failure_data",
            Some(line),
            "conflicts with fault_content/detection_rate; give exactly one model source",
        )),
        (Some((value, line)), None, None) => {
            let path = resolve(base_dir, &value);
            if !path.is_file() {
                return Err(Error::config(
                    "failure_data",
                    Some(line),
                    format!("file not found: {}", path.display()),
                ));
            }
            Ok(ModelSource::FailureData(path))
        }
        (None, Some((a, line_a)), Some((b, line_b))) => {
            if !a.is_finite() || a <= 0.0 {
                return Err(Error::config(
                    "fault_content",
                    Some(line_a),
                    format!("must be finite and positive, got {a}"),
                ));
            }
            if !b.is_finite() || b <= 0.0 {
                return Err(Error::config(
                    "detection_rate",
                    Some(line_b),
                    format!("must be finite and positive, got {b}"),
                ));
            }
            Ok(ModelSource::Parameters { fault_content: a, detection_rate: b })
        }
        (None, None, _) => Err(Error::config(
            "fault_content",
            None,
            "missing: give fault_content and detection_rate, or failure_data",
        )),
        (None, _, None) => Err(Error::config(
            "detection_rate",
            None,
            "missing: give fault_content and detection_rate, or failure_data",
        )),
    }
}

fn require_non_negative(entries: &mut Entries, key: &str) -> Result<f64> {
    let (v, line) = entries.require_f64(key)?;
    if !v.is_finite() || v < 0.0 {
        return Err(Error::config(
            key,
            Some(line),
            format!("must be finite and non-negative, got {v}"),
        ));
    }
    Ok(v)
}

fn read_exponent(entries: &mut Entries) -> Result<f64> {
    let (v, line) = entries.require_f64("testing_cost_exponent")?;
    if !v.is_finite() || v <= 0.0 || v > 1.0 {
        return Err(Error::config(
            "testing_cost_exponent",
            Some(line),
            format!("must lie in (0, 1], got {v}"),
        ));
    }
    Ok(v)
}

/// A removal-time mean is either given directly or derived from a truncated
/// exponential `rate` and `cutoff` pair — never both.
fn read_removal_mean(
    entries: &mut Entries,
    mean_key: &str,
    rate_key: &str,
    cutoff_key: &str,
) -> Result<f64> {
    let mean = entries.take_parsed::<f64>(mean_key)?;
    let rate = entries.take_parsed::<f64>(rate_key)?;
    let cutoff = entries.take_parsed::<f64>(cutoff_key)?;
    match (mean, rate, cutoff) {
        (Some(_), Some((_, line)), _) => {
            Err(Error::config(rate_key, Some(line), format!("conflicts with {mean_key}")))
        }
        (Some(_), None, Some((_, line))) => {
            Err(Error::config(cutoff_key, Some(line), format!("conflicts with {mean_key}")))
        }
        (Some((m, line)), None, None) => {
            if !m.is_finite() || m < 0.0 {
                return Err(Error::config(
                    mean_key,
                    Some(line),
                    format!("must be finite and non-negative, got {m}"),
                ));
            }
            Ok(m)
        }
        (None, Some((r, rate_line)), Some((c, cutoff_line))) => {
            if !r.is_finite() || r <= 0.0 {
                return Err(Error::config(
                    rate_key,
                    Some(rate_line),
                    format!("must be finite and positive, got {r}"),
                ));
            }
            if !c.is_finite() || c <= 0.0 {
                return Err(Error::config(
                    cutoff_key,
                    Some(cutoff_line),
                    format!("must be finite and positive, got {c}"),
                ));
            }
            Ok(TruncatedExponential::new(r, c)?.mean())
        }
        (None, Some(_), None) => {
            Err(Error::config(cutoff_key, None, format!("missing (required alongside {rate_key})")))
        }
        (None, None, Some(_)) => {
            Err(Error::config(rate_key, None, format!("missing (required alongside {cutoff_key})")))
        }
        (None, None, None) => Err(Error::config(
            mean_key,
            None,
            format!("missing: give {mean_key}, or {rate_key} with {cutoff_key}"),
        )),
    }
}

fn read_targets(entries: &mut Entries) -> Result<FuzzyTargets> {
    let budget = require_non_negative(entries, "cost_budget")?;
    let (tolerance, tol_line) = entries.require_f64("cost_tolerance")?;
    if !tolerance.is_finite() || tolerance <= budget {
        return Err(Error::config(
            "cost_tolerance",
            Some(tol_line),
            format!("must exceed cost_budget ({budget}), got {tolerance}"),
        ));
    }
    let goal = require_probability(entries, "reliability_goal")?;
    let (rel_tol, rel_line) = entries.require_f64("reliability_tolerance")?;
    if !rel_tol.is_finite() || rel_tol <= 0.0 || rel_tol >= 1.0 {
        return Err(Error::config(
            "reliability_tolerance",
            Some(rel_line),
            format!("must lie strictly in (0, 1), got {rel_tol}"),
        ));
    }
    if rel_tol >= goal {
        return Err(Error::config(
            "reliability_tolerance",
            Some(rel_line),
            format!("must be below reliability_goal ({goal}), got {rel_tol}"),
        ));
    }
    let (mission, mission_line) = entries.require_f64("mission_time")?;
    if !mission.is_finite() || mission <= 0.0 {
        return Err(Error::config(
            "mission_time",
            Some(mission_line),
            format!("must be finite and positive, got {mission}"),
        ));
    }
    FuzzyTargets::new(budget, tolerance, goal, rel_tol, mission)
}

fn require_probability(entries: &mut Entries, key: &str) -> Result<f64> {
    let (v, line) = entries.require_f64(key)?;
    if !v.is_finite() || v <= 0.0 || v >= 1.0 {
        return Err(Error::config(
            key,
            Some(line),
            format!("must lie strictly in (0, 1), got {v}"),
        ));
    }
    Ok(v)
}

fn read_window(entries: &mut Entries) -> Result<Option<(f64, f64)>> {
    let low = entries.take_parsed::<f64>("window_low")?;
    let high = entries.take_parsed::<f64>("window_high")?;
    match (low, high) {
        (None, None) => Ok(None),
        (Some((lo, lo_line)), Some((hi, hi_line))) => {
            if !lo.is_finite() || lo < 0.0 {
                return Err(Error::config(
                    "window_low",
                    Some(lo_line),
                    format!("must be finite and non-negative, got {lo}"),
                ));
            }
            if !hi.is_finite() || hi <= lo {
                return Err(Error::config(
                    "window_high",
                    Some(hi_line),
                    format!("must exceed window_low ({lo}), got {hi}"),
                ));
            }
            Ok(Some((lo, hi)))
        }
        (Some(_), None) => {
            Err(Error::config("window_high", None, "missing (required alongside window_low)"))
        }
        (None, Some(_)) => {
            Err(Error::config("window_low", None, "missing (required alongside window_high)"))
        }
    }
}

fn optional_weight(entries: &mut Entries, key: &str) -> Result<f64> {
    match entries.take_parsed::<f64>(key)? {
        None => Ok(1.0),
        Some((v, line)) => {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::config(
                    key,
                    Some(line),
                    format!("must be finite and non-negative, got {v}"),
                ));
            }
            Ok(v)
        }
    }
}
