//! Output shaping: trade-off sweeps, CSV serialization, and the textual
//! decision/fit reports (a readable block plus a machine-readable tail).

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::solver::{ReleaseProblem, SolveRun};
use crate::srgm::{FailureDataset, FitMethod, FitOutcome};

/// One evaluated release time in a trade-off sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub time: f64,
    pub cost: f64,
    pub reliability: f64,
    pub cost_membership: f64,
    pub reliability_membership: f64,
    /// Smaller of the two memberships — the curve whose peak the max-min
    /// solver picks.
    pub min_membership: f64,
}

/// Evaluates the trade-off on an even grid `window.0 + i·step`. Unclamped
/// rows keep the signed memberships, which is how an infeasible aspiration
/// shows up as a curve that never crosses zero.
pub fn sweep(
    problem: &ReleaseProblem,
    window: (f64, f64),
    step: f64,
    clamp: bool,
) -> Result<Vec<SweepRow>> {
    let (lo, hi) = window;
    if !lo.is_finite() || !hi.is_finite() || lo < 0.0 || lo >= hi {
        return Err(Error::domain(format!(
            "sweep window must satisfy 0 <= low < high, got [{lo}, {hi}]"
        )));
    }
    let span = hi - lo;
    if !step.is_finite() || step <= 0.0 || step > span {
        return Err(Error::domain(format!(
            "sweep step must be positive and no wider than the window span {span}, got {step}"
        )));
    }
    // Tiny slack so spans that are an exact multiple of the step keep their
    // endpoint despite rounding.
    let count = (span / step + 1e-9).floor() as usize + 1;
    let mut rows = Vec::with_capacity(count);
    for i in 0..count {
        let t = lo + i as f64 * step;
        let (cost_membership, reliability_membership) = problem.membership_pair(t, clamp)?;
        rows.push(SweepRow {
            time: t,
            cost: problem.cost_at(t)?,
            reliability: problem.reliability_at(t)?,
            cost_membership,
            reliability_membership,
            min_membership: cost_membership.min(reliability_membership),
        });
    }
    Ok(rows)
}

/// Serializes sweep rows as CSV with full-precision values.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("T,cost,reliability,mu_cost,mu_reliability,min_membership\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.time,
            r.cost,
            r.reliability,
            r.cost_membership,
            r.reliability_membership,
            r.min_membership
        );
    }
    out
}

/// Sweep range wide enough to show the whole story: five times the first
/// release time whose reliability reaches the goal. Falls back to ten
/// detection lifetimes when the goal is met immediately.
pub fn default_sweep_window(problem: &ReleaseProblem) -> (f64, f64) {
    let model = problem.model();
    let targets = problem.targets();
    let a = model.fault_content();
    let b = model.detection_rate();
    // Solve R(T) = goal: e^{-bT} = -ln(goal) / (a (1 - e^{-b x})).
    let window_faults = a * -(-b * targets.mission_time()).exp_m1();
    let ratio = -targets.reliability_goal().ln() / window_faults;
    let hi = if ratio < 1.0 {
        let goal_time = -ratio.ln() / b;
        5.0 * goal_time
    } else {
        10.0 / b
    };
    (0.01, hi)
}

/// Renders a decision: a human-readable summary followed by a
/// `# machine-readable` key=value tail with full-precision values.
pub fn render_decision(run: &SolveRun, problem: &ReleaseProblem) -> String {
    let d = run.decision();
    let (window_low, window_high) = problem.search_window();
    let mut s = String::new();

    match run {
        SolveRun::Feasible(_) => {
            let _ = writeln!(s, "release decision: both goals satisfiable");
        }
        SolveRun::Compromise { infeasibility, .. } => {
            let _ = writeln!(s, "release decision: goals conflict; weighted compromise");
            let _ = writeln!(
                s,
                "  no overlap: best min-membership {} at T = {}",
                sig6(infeasibility.maximin),
                sig6(infeasibility.best_time)
            );
            if infeasibility.marginal {
                let _ = writeln!(s, "  (marginal: the goals touch at a single point)");
            }
        }
    }
    let _ = writeln!(s, "  release time         {}", sig6(d.release_time));
    let _ = writeln!(s, "  min satisfaction     {}", sig6(d.satisfaction));
    let _ = writeln!(
        s,
        "  expected cost        {}  (membership {})",
        sig6(d.cost),
        sig6(d.cost_membership)
    );
    let _ = writeln!(
        s,
        "  mission reliability  {}  (membership {})",
        sig6(d.reliability),
        sig6(d.reliability_membership)
    );
    if let SolveRun::Compromise { weights, alpha_target, .. } = run {
        if let Some(dev) = &d.deviations {
            let objective = weights.0 * dev.cost_shortfall + weights.1 * dev.reliability_shortfall;
            let _ = writeln!(
                s,
                "  shortfalls           cost {}, reliability {}  (objective {})",
                sig6(dev.cost_shortfall),
                sig6(dev.reliability_shortfall),
                sig6(objective)
            );
            let _ = writeln!(
                s,
                "  compromise settings  weights {}/{}, target level {}",
                sig6(weights.0),
                sig6(weights.1),
                sig6(*alpha_target)
            );
        }
    }
    let _ = writeln!(s, "  search window        [{}, {}]", sig6(window_low), sig6(window_high));
    if d.window_edge {
        let _ = writeln!(s, "  note: optimum sits on the window edge; widen the window");
    }

    s.push('\n');
    let _ = writeln!(s, "# machine-readable");
    let status = match run {
        SolveRun::Feasible(_) => "feasible",
        SolveRun::Compromise { .. } => "goal_compromise",
    };
    let _ = writeln!(s, "status={status}");
    let _ = writeln!(s, "release_time={}", d.release_time);
    let _ = writeln!(s, "satisfaction={}", d.satisfaction);
    let _ = writeln!(s, "cost={}", d.cost);
    let _ = writeln!(s, "reliability={}", d.reliability);
    let _ = writeln!(s, "mu_cost={}", d.cost_membership);
    let _ = writeln!(s, "mu_reliability={}", d.reliability_membership);
    let _ = writeln!(s, "window_low={window_low}");
    let _ = writeln!(s, "window_high={window_high}");
    let _ = writeln!(s, "boundary_hit={}", d.window_edge);
    if let SolveRun::Compromise { infeasibility, weights, alpha_target, .. } = run {
        let dev = d.deviations.as_ref().expect("compromise decisions carry deviations");
        let objective = weights.0 * dev.cost_shortfall + weights.1 * dev.reliability_shortfall;
        let _ = writeln!(s, "maximin={}", infeasibility.maximin);
        let _ = writeln!(s, "best_feasibility_time={}", infeasibility.best_time);
        let _ = writeln!(s, "eta_cost={}", dev.cost_shortfall);
        let _ = writeln!(s, "rho_cost={}", dev.cost_surplus);
        let _ = writeln!(s, "eta_reliability={}", dev.reliability_shortfall);
        let _ = writeln!(s, "rho_reliability={}", dev.reliability_surplus);
        let _ = writeln!(s, "objective={objective}");
        let _ = writeln!(s, "weight_cost={}", weights.0);
        let _ = writeln!(s, "weight_reliability={}", weights.1);
        let _ = writeln!(s, "alpha_target={alpha_target}");
    }
    s
}

/// Renders an estimation outcome in the same two-part shape.
pub fn render_fit(outcome: &FitOutcome, data: &FailureDataset) -> String {
    let method = match outcome.method {
        FitMethod::MaximumLikelihood => "maximum likelihood",
        FitMethod::LeastSquares => "least squares",
    };
    let mut s = String::new();
    let _ = writeln!(s, "model fit: {method}");
    let _ =
        writeln!(s, "  failures         {} over [0, {}]", data.len(), sig6(data.observation_end()));
    let _ = writeln!(s, "  fault content    {}", sig6(outcome.model.fault_content()));
    let _ = writeln!(s, "  detection rate   {}", sig6(outcome.model.detection_rate()));
    let _ = writeln!(s, "  log-likelihood   {}", sig6(outcome.log_likelihood));
    let _ = writeln!(s, "  evaluations      {}", outcome.iterations);
    s.push('\n');
    let _ = writeln!(s, "# machine-readable");
    let _ = writeln!(
        s,
        "method={}",
        match outcome.method {
            FitMethod::MaximumLikelihood => "mle",
            FitMethod::LeastSquares => "ls",
        }
    );
    let _ = writeln!(s, "failures={}", data.len());
    let _ = writeln!(s, "observation_end={}", data.observation_end());
    let _ = writeln!(s, "fault_content={}", outcome.model.fault_content());
    let _ = writeln!(s, "detection_rate={}", outcome.model.detection_rate());
    let _ = writeln!(s, "log_likelihood={}", outcome.log_likelihood);
    let _ = writeln!(s, "iterations={}", outcome.iterations);
    s
}

/// Six significant digits, fixed notation in the human range and exponent
/// notation outside it; trailing zeros dropped.
pub fn sig6(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let formatted = format!("{v:.5e}");
    let (mantissa, exp) = formatted.split_once('e').expect("exponential format");
    let exp: i32 = exp.parse().expect("numeric exponent");
    let sign = if mantissa.starts_with('-') { "-" } else { "" };
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    if (-4..=5).contains(&exp) {
        let (int_part, frac_part) = if exp >= 0 {
            let split = exp as usize + 1;
            (digits[..split].to_string(), digits[split..].to_string())
        } else {
            ("0".to_string(), format!("{}{digits}", "0".repeat(-exp as usize - 1)))
        };
        let frac = frac_part.trim_end_matches('0');
        if frac.is_empty() {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac}")
        }
    } else {
        let trimmed = digits.trim_end_matches('0');
        let (lead, rest) = trimmed.split_at(1);
        if rest.is_empty() {
            format!("{sign}{lead}e{exp}")
        } else {
            format!("{sign}{lead}.{rest}e{exp}")
        }
    }
}
