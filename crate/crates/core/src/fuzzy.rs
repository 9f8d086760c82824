//! Linear (ramp) membership functions for the cost and reliability goals,
//! plus the aspiration container tying both targets together.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RampDirection {
    /// Satisfaction falls as the value grows (cost-like goals).
    Decreasing,
    /// Satisfaction rises as the value grows (reliability-like goals).
    Increasing,
}

/// Piecewise-linear membership: 1 on the full-satisfaction side of
/// `full_value`, 0 beyond `zero_value`, linear in between.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RampMembership {
    full_value: f64,
    zero_value: f64,
    direction: RampDirection,
}

impl RampMembership {
    /// Ramp for a goal where smaller is better: full satisfaction at or
    /// below `full_value`, none at or above `zero_value`.
    pub fn decreasing(full_value: f64, zero_value: f64) -> Result<Self> {
        Self::checked(full_value, zero_value, RampDirection::Decreasing, full_value < zero_value)
    }

    /// Ramp for a goal where larger is better: no satisfaction at or below
    /// `zero_value`, full satisfaction at or above `full_value`.
    pub fn increasing(zero_value: f64, full_value: f64) -> Result<Self> {
        Self::checked(full_value, zero_value, RampDirection::Increasing, zero_value < full_value)
    }

    fn checked(
        full_value: f64,
        zero_value: f64,
        direction: RampDirection,
        ordered: bool,
    ) -> Result<Self> {
        if !full_value.is_finite() || !zero_value.is_finite() {
            return Err(Error::domain(format!(
                "ramp anchors must be finite, got full={full_value}, zero={zero_value}"
            )));
        }
        if !ordered {
            return Err(Error::domain(format!(
                "ramp anchors must leave room for partial satisfaction \
                 (full={full_value}, zero={zero_value}, {direction:?})"
            )));
        }
        Ok(Self { full_value, zero_value, direction })
    }

    pub fn full_value(&self) -> f64 {
        self.full_value
    }

    pub fn zero_value(&self) -> f64 {
        self.zero_value
    }

    pub fn direction(&self) -> RampDirection {
        self.direction
    }

    /// Membership degree clamped to `[0, 1]`.
    pub fn clamped(&self, value: f64) -> f64 {
        self.unclamped(value).clamp(0.0, 1.0)
    }

    /// Signed satisfaction: the same line extended beyond the anchors.
    /// Negative values measure how far a goal is missed; values above one
    /// how much slack it has. The sign carries the infeasibility evidence
    /// the solver relies on.
    pub fn unclamped(&self, value: f64) -> f64 {
        (value - self.zero_value) / (self.full_value - self.zero_value)
    }

    /// Values whose membership reaches `level`, intersected with `domain`.
    /// `level` must lie in (0, 1]; returns `None` when the cut is empty.
    pub fn alpha_cut(&self, level: f64, domain: (f64, f64)) -> Result<Option<(f64, f64)>> {
        if !(level > 0.0 && level <= 1.0) {
            return Err(Error::domain(format!("alpha level must lie in (0, 1], got {level}")));
        }
        let (lo, hi) = domain;
        if !lo.is_finite() || !hi.is_finite() || lo > hi {
            return Err(Error::domain(format!("invalid alpha-cut domain [{lo}, {hi}]")));
        }
        let threshold = self.zero_value + level * (self.full_value - self.zero_value);
        let cut = match self.direction {
            RampDirection::Increasing => (lo.max(threshold), hi),
            RampDirection::Decreasing => (lo, hi.min(threshold)),
        };
        Ok((cut.0 <= cut.1).then_some(cut))
    }
}

/// Smallest membership degree: fuzzy intersection of the goals.
pub fn intersect(degrees: &[f64]) -> Result<f64> {
    fold_degrees(degrees, f64::min, "intersect")
}

/// Largest membership degree: fuzzy union of the goals.
pub fn unite(degrees: &[f64]) -> Result<f64> {
    fold_degrees(degrees, f64::max, "unite")
}

fn fold_degrees(degrees: &[f64], pick: fn(f64, f64) -> f64, op: &str) -> Result<f64> {
    let mut iter = degrees.iter();
    let Some(&first) = iter.next() else {
        return Err(Error::domain(format!("{op} needs at least one membership degree")));
    };
    Ok(iter.fold(first, |acc, &d| pick(acc, d)))
}

/// The fuzzy aspiration: keep cost near `budget` (hard ceiling
/// `cost_tolerance`) while reaching reliability `reliability_goal` over a
/// mission of `mission_time` (floor `reliability_tolerance`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuzzyTargets {
    budget: f64,
    cost_tolerance: f64,
    reliability_goal: f64,
    reliability_tolerance: f64,
    mission_time: f64,
}

impl FuzzyTargets {
    pub fn new(
        budget: f64,
        cost_tolerance: f64,
        reliability_goal: f64,
        reliability_tolerance: f64,
        mission_time: f64,
    ) -> Result<Self> {
        if !budget.is_finite() || !cost_tolerance.is_finite() {
            return Err(Error::domain("budget and cost_tolerance must be finite".to_string()));
        }
        if cost_tolerance <= budget {
            return Err(Error::domain(format!(
                "cost_tolerance ({cost_tolerance}) must exceed budget ({budget})"
            )));
        }
        for (name, v) in [
            ("reliability_goal", reliability_goal),
            ("reliability_tolerance", reliability_tolerance),
        ] {
            if !v.is_finite() || v <= 0.0 || v >= 1.0 {
                return Err(Error::domain(format!("{name} must lie strictly in (0, 1), got {v}")));
            }
        }
        if reliability_tolerance >= reliability_goal {
            return Err(Error::domain(format!(
                "reliability_tolerance ({reliability_tolerance}) must be below reliability_goal \
                 ({reliability_goal})"
            )));
        }
        if !mission_time.is_finite() || mission_time <= 0.0 {
            return Err(Error::domain(format!(
                "mission_time must be finite and positive, got {mission_time}"
            )));
        }
        Ok(Self { budget, cost_tolerance, reliability_goal, reliability_tolerance, mission_time })
    }

    pub fn budget(&self) -> f64 {
        self.budget
    }

    pub fn cost_tolerance(&self) -> f64 {
        self.cost_tolerance
    }

    pub fn reliability_goal(&self) -> f64 {
        self.reliability_goal
    }

    pub fn reliability_tolerance(&self) -> f64 {
        self.reliability_tolerance
    }

    pub fn mission_time(&self) -> f64 {
        self.mission_time
    }

    /// Ramp over total cost: fully satisfied at the budget, empty at the
    /// tolerance ceiling.
    pub fn cost_membership(&self) -> RampMembership {
        RampMembership::decreasing(self.budget, self.cost_tolerance)
            .expect("validated at construction")
    }

    /// Ramp over mission reliability: empty at the tolerance floor, fully
    /// satisfied at the goal.
    pub fn reliability_membership(&self) -> RampMembership {
        RampMembership::increasing(self.reliability_tolerance, self.reliability_goal)
            .expect("validated at construction")
    }
}
