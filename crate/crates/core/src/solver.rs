//! Release-time selection: max-min satisfaction of the fuzzy goals, with a
//! weighted goal-programming compromise when the goals cannot overlap.

use crate::cost::{total_cost, CostParams};
use crate::error::{Error, Result};
use crate::fuzzy::FuzzyTargets;
use crate::scalar;
use crate::srgm::GoelOkumotoModel;

/// Margin around zero inside which the maximin is treated as exactly zero:
/// the goals touch at a point but never strictly overlap, which is reported
/// as (marginal) infeasibility rather than a feasible decision.
const FEASIBILITY_EPS: f64 = 1e-9;

/// Iteration cap for the golden-section refinement stage.
const REFINE_MAX_ITER: usize = 200;

/// A fully-specified decision instance: the fault model, the price of
/// testing and warranty, the fuzzy aspiration, and where to look.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReleaseProblem {
    model: GoelOkumotoModel,
    cost: CostParams,
    targets: FuzzyTargets,
    search_window: (f64, f64),
}

impl ReleaseProblem {
    /// Uses the default search window `[0, 10/detection_rate]`, by which
    /// point the detection process is spent (m covers all but `a·e^{−10}`
    /// of the faults).
    pub fn new(model: GoelOkumotoModel, cost: CostParams, targets: FuzzyTargets) -> Result<Self> {
        let horizon = 10.0 / model.detection_rate();
        Self::with_window(model, cost, targets, (0.0, horizon))
    }

    pub fn with_window(
        model: GoelOkumotoModel,
        cost: CostParams,
        targets: FuzzyTargets,
        window: (f64, f64),
    ) -> Result<Self> {
        let cost = cost.validated()?;
        let (lo, hi) = window;
        if !lo.is_finite() || !hi.is_finite() || lo < 0.0 || lo >= hi {
            return Err(Error::domain(format!(
                "search window must satisfy 0 <= low < high, got [{lo}, {hi}]"
            )));
        }
        Ok(Self { model, cost, targets, search_window: window })
    }

    pub fn model(&self) -> &GoelOkumotoModel {
        &self.model
    }

    pub fn cost_params(&self) -> &CostParams {
        &self.cost
    }

    pub fn targets(&self) -> &FuzzyTargets {
        &self.targets
    }

    pub fn search_window(&self) -> (f64, f64) {
        self.search_window
    }

    /// Total expected cost of releasing at `t`.
    pub fn cost_at(&self, t: f64) -> Result<f64> {
        total_cost(&self.model, &self.cost, t)
    }

    /// Mission reliability when releasing at `t`.
    pub fn reliability_at(&self, t: f64) -> Result<f64> {
        self.model.conditional_reliability(t, self.targets.mission_time())
    }

    /// Satisfaction degrees `(cost, reliability)` at `t`; unclamped values
    /// extend the ramps past their anchors and carry the sign the solver's
    /// feasibility classification relies on.
    pub fn membership_pair(&self, t: f64, clamp: bool) -> Result<(f64, f64)> {
        let cost = self.cost_at(t)?;
        let reliability = self.reliability_at(t)?;
        let cost_ramp = self.targets.cost_membership();
        let rel_ramp = self.targets.reliability_membership();
        Ok(if clamp {
            (cost_ramp.clamped(cost), rel_ramp.clamped(reliability))
        } else {
            (cost_ramp.unclamped(cost), rel_ramp.unclamped(reliability))
        })
    }

    fn unclamped_min(&self, t: f64) -> Result<f64> {
        let (c, r) = self.membership_pair(t, false)?;
        Ok(c.min(r))
    }

    fn near_window_edge(&self, t: f64, grid_points: usize) -> bool {
        let (lo, hi) = self.search_window;
        let cell = (hi - lo) / (grid_points - 1) as f64;
        t - lo <= 0.5 * cell || hi - t <= 0.5 * cell
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Points in the coarse scan of the search window.
    pub grid_points: usize,
    /// Bracket width, relative to the window span, at which refinement stops.
    pub rel_tolerance: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { grid_points: 2001, rel_tolerance: 1e-8 }
    }
}

impl SolverOptions {
    fn validate(&self) -> Result<()> {
        if self.grid_points < 3 {
            return Err(Error::domain(format!(
                "grid_points must be at least 3, got {}",
                self.grid_points
            )));
        }
        if !self.rel_tolerance.is_finite() || self.rel_tolerance <= 0.0 {
            return Err(Error::domain(format!(
                "rel_tolerance must be finite and positive, got {}",
                self.rel_tolerance
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecisionStatus {
    /// Both goals are simultaneously satisfiable to a positive degree.
    Feasible,
    /// Goal-programming compromise: the reported deviations say how far
    /// each goal is missed or exceeded.
    GoalCompromise,
}

/// Shortfall (η) and surplus (ρ) of each goal's satisfaction against the
/// target level. At most one of each pair is non-zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Deviations {
    pub cost_shortfall: f64,
    pub cost_surplus: f64,
    pub reliability_shortfall: f64,
    pub reliability_surplus: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReleaseDecision {
    pub release_time: f64,
    /// Smaller of the two clamped satisfaction degrees at the release time.
    pub satisfaction: f64,
    pub cost: f64,
    pub reliability: f64,
    pub cost_membership: f64,
    pub reliability_membership: f64,
    pub status: DecisionStatus,
    /// Present on the goal-programming branch.
    pub deviations: Option<Deviations>,
    /// The optimum sits within half a grid cell of the window edge — the
    /// window, not the trade-off, decided; widen it to be sure.
    pub window_edge: bool,
}

/// Evidence that no release time satisfies both goals to a positive degree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfeasibilityReport {
    /// Release time that came closest.
    pub best_time: f64,
    /// Largest value of the smaller unclamped satisfaction; non-positive.
    pub maximin: f64,
    /// The maximin is zero to within 1e-9: the goals touch but never
    /// strictly overlap.
    pub marginal: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SolveOutcome {
    Feasible(ReleaseDecision),
    Infeasible(InfeasibilityReport),
}

/// A complete solver run: either the max-min decision or, when that proves
/// infeasible, the goal-programming compromise alongside the evidence.
#[derive(Debug, Clone, PartialEq)]
pub enum SolveRun {
    Feasible(ReleaseDecision),
    Compromise {
        infeasibility: InfeasibilityReport,
        decision: ReleaseDecision,
        weights: (f64, f64),
        alpha_target: f64,
    },
}

impl SolveRun {
    pub fn decision(&self) -> &ReleaseDecision {
        match self {
            SolveRun::Feasible(d) => d,
            SolveRun::Compromise { decision, .. } => decision,
        }
    }
}

/// Coarse grid scan followed by golden-section refinement of the bracket
/// around the best grid point. The first best grid point wins ties and the
/// refined point replaces it only when strictly better, so flat stretches
/// resolve to the earliest release time.
fn optimize<F>(
    mut f: F,
    window: (f64, f64),
    grid_points: usize,
    rel_tolerance: f64,
    maximize: bool,
) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (lo, hi) = window;
    let span = hi - lo;
    let at = |i: usize| lo + span * i as f64 / (grid_points - 1) as f64;

    let mut best_i = 0usize;
    let mut best_v = f(lo)?;
    for i in 1..grid_points {
        let v = f(at(i))?;
        if (maximize && v > best_v) || (!maximize && v < best_v) {
            best_v = v;
            best_i = i;
        }
    }

    let bracket_lo = if best_i == 0 { lo } else { at(best_i - 1) };
    let bracket_hi = if best_i == grid_points - 1 { hi } else { at(best_i + 1) };
    let tol = rel_tolerance * span;
    let refined = if maximize {
        scalar::golden_max(&mut f, bracket_lo, bracket_hi, tol, REFINE_MAX_ITER)?
    } else {
        scalar::golden_min(&mut f, bracket_lo, bracket_hi, tol, REFINE_MAX_ITER)?
    };

    let improved = if maximize { refined.value > best_v } else { refined.value < best_v };
    Ok(if improved { (refined.x, refined.value) } else { (at(best_i), best_v) })
}

/// Maximizes the smaller satisfaction degree over the search window.
///
/// Classification of the optimum `v` (unclamped): `v > 1e-9` is a feasible
/// decision; `v < −1e-9` is infeasible; in between the goals only touch,
/// reported as marginal infeasibility.
pub fn solve_maximin(problem: &ReleaseProblem, options: &SolverOptions) -> Result<SolveOutcome> {
    options.validate()?;
    let (t_star, v_star) = optimize(
        |t| problem.unclamped_min(t),
        problem.search_window,
        options.grid_points,
        options.rel_tolerance,
        true,
    )?;

    if v_star > FEASIBILITY_EPS {
        let (cost_membership, reliability_membership) = problem.membership_pair(t_star, true)?;
        Ok(SolveOutcome::Feasible(ReleaseDecision {
            release_time: t_star,
            satisfaction: cost_membership.min(reliability_membership),
            cost: problem.cost_at(t_star)?,
            reliability: problem.reliability_at(t_star)?,
            cost_membership,
            reliability_membership,
            status: DecisionStatus::Feasible,
            deviations: None,
            window_edge: problem.near_window_edge(t_star, options.grid_points),
        }))
    } else {
        Ok(SolveOutcome::Infeasible(InfeasibilityReport {
            best_time: t_star,
            maximin: v_star,
            marginal: v_star >= -FEASIBILITY_EPS,
        }))
    }
}

/// Minimizes the weighted sum of satisfaction shortfalls against
/// `alpha_target`. Always returns a decision; it is the fallback when
/// [`solve_maximin`] reports infeasibility.
pub fn solve_goal_program(
    problem: &ReleaseProblem,
    weights: (f64, f64),
    alpha_target: f64,
    options: &SolverOptions,
) -> Result<ReleaseDecision> {
    options.validate()?;
    let (w_cost, w_rel) = weights;
    if !w_cost.is_finite() || w_cost < 0.0 || !w_rel.is_finite() || w_rel < 0.0 {
        return Err(Error::domain(format!(
            "goal weights must be finite and non-negative, got ({w_cost}, {w_rel})"
        )));
    }
    if !alpha_target.is_finite() || !(0.0..=1.0).contains(&alpha_target) {
        return Err(Error::domain(format!("alpha_target must lie in [0, 1], got {alpha_target}")));
    }

    let objective = |t: f64| {
        let (mu_cost, mu_rel) = problem.membership_pair(t, false)?;
        Ok(w_cost * (alpha_target - mu_cost).max(0.0) + w_rel * (alpha_target - mu_rel).max(0.0))
    };
    let (t_star, _) = optimize(
        objective,
        problem.search_window,
        options.grid_points,
        options.rel_tolerance,
        false,
    )?;

    let (mu_cost, mu_rel) = problem.membership_pair(t_star, false)?;
    let deviations = Deviations {
        cost_shortfall: (alpha_target - mu_cost).max(0.0),
        cost_surplus: (mu_cost - alpha_target).max(0.0),
        reliability_shortfall: (alpha_target - mu_rel).max(0.0),
        reliability_surplus: (mu_rel - alpha_target).max(0.0),
    };
    let (cost_membership, reliability_membership) = problem.membership_pair(t_star, true)?;
    Ok(ReleaseDecision {
        release_time: t_star,
        satisfaction: cost_membership.min(reliability_membership),
        cost: problem.cost_at(t_star)?,
        reliability: problem.reliability_at(t_star)?,
        cost_membership,
        reliability_membership,
        status: DecisionStatus::GoalCompromise,
        deviations: Some(deviations),
        window_edge: problem.near_window_edge(t_star, options.grid_points),
    })
}

/// Max-min first; on infeasibility, the goal-programming compromise with the
/// given weights and target level.
pub fn decide(
    problem: &ReleaseProblem,
    weights: (f64, f64),
    alpha_target: f64,
    options: &SolverOptions,
) -> Result<SolveRun> {
    match solve_maximin(problem, options)? {
        SolveOutcome::Feasible(decision) => Ok(SolveRun::Feasible(decision)),
        SolveOutcome::Infeasible(infeasibility) => {
            let decision = solve_goal_program(problem, weights, alpha_target, options)?;
            Ok(SolveRun::Compromise { infeasibility, decision, weights, alpha_target })
        }
    }
}
