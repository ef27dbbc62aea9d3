//! Schedule data model.
//!
//! A schedule places agents on a fence (an open segment `[0, l]` or a circle
//! of circumference `l`, position increasing clockwise) and gives each agent a
//! piecewise-linear trajectory as a list of `(time, position)` breakpoints.
//! Consecutive breakpoints define one linear piece. On a circle, a crossing of
//! the `l = 0` seam is stored as an equal-time breakpoint pair joining `l` and
//! `0` (a wrap marker); those are the only zero-duration pieces allowed.
//!
//! Schedules are either `Periodic` (the breakpoints span exactly one period
//! and the trajectory closes up) or `Horizon` (the breakpoints span `[0, end]`
//! and nothing repeats).

use crate::numeric::{NumericError, Rational};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FenceKind {
    Segment,
    Circle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fence {
    pub kind: FenceKind,
    pub length: Rational,
}

impl Fence {
    pub fn segment(length: Rational) -> Self {
        Fence {
            kind: FenceKind::Segment,
            length,
        }
    }

    pub fn circle(length: Rational) -> Self {
        Fence {
            kind: FenceKind::Circle,
            length,
        }
    }

    pub fn unit_circle() -> Self {
        Fence::circle(Rational::one())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum TimeModel {
    Periodic(Rational),
    Horizon(Rational),
}

impl TimeModel {
    /// Length of the represented time span: the period, or the horizon end.
    pub fn end(&self) -> &Rational {
        match self {
            TimeModel::Periodic(p) => p,
            TimeModel::Horizon(h) => h,
        }
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self, TimeModel::Periodic(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    None,
    Unidirectional,
}

/// Breakpoint list of one agent: `(time, position)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Trajectory {
    breakpoints: Vec<(Rational, Rational)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Agent {
    pub id: u32,
    pub max_speed: Rational,
    #[serde(rename = "breakpoints")]
    pub trajectory: Trajectory,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Schedule {
    pub fence: Fence,
    pub time_model: TimeModel,
    pub direction: Direction,
    pub agents: Vec<Agent>,
}

#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error("SCHEMA_VIOLATION: {0}")]
    Schema(String),
    #[error("SCHEMA_VIOLATION: invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("time {0} outside the schedule horizon")]
    TimeOutOfRange(Rational),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

impl Trajectory {
    /// Wraps an explicit breakpoint list. No normalization is applied; the
    /// caller is responsible for producing wrap markers on circles.
    pub fn new(breakpoints: Vec<(Rational, Rational)>) -> Self {
        Trajectory { breakpoints }
    }

    pub fn breakpoints(&self) -> &[(Rational, Rational)] {
        &self.breakpoints
    }

    /// Builds a wrap-normalized trajectory from an unwrapped position profile:
    /// times strictly increasing, positions unconstrained reals understood
    /// modulo `length`. Pieces crossing a multiple of `length` are split there
    /// and an equal-time wrap marker is inserted.
    ///
    /// Panics if `points` has fewer than two entries or non-increasing times;
    /// this is a construction helper for generators, not an input validator.
    pub fn from_unwrapped(points: &[(Rational, Rational)], length: &Rational) -> Self {
        assert!(points.len() >= 2, "need at least two profile points");
        assert!(length.is_positive(), "fence length must be positive");
        let mut out: Vec<(Rational, Rational)> = Vec::new();
        // k tracks how many full fence lengths the unwrapped position is
        // above the stored one, so stored = unwrapped - k*length in [0, l].
        let mut k = Rational::from_bigint((&points[0].1 / length).floor());
        let stored0 = &points[0].1 - &(&k * length);
        out.push((points[0].0.clone(), stored0));
        for pair in points.windows(2) {
            let (ta, a) = &pair[0];
            let (tb, b) = &pair[1];
            assert!(tb > ta, "profile times must be strictly increasing");
            if b > a {
                // ascending: split at each upper boundary (k+1)*length
                loop {
                    let upper = (&k + &Rational::one()) * length;
                    let last = out.last().unwrap().clone();
                    if *b > upper {
                        let tc = ta + &((tb - ta) * (&upper - a) / (b - a));
                        if last.1 == *length && last.0 == tc {
                            // already sitting on the seam: only the reentry
                            out.push((tc.clone(), Rational::zero()));
                        } else {
                            out.push((tc.clone(), length.clone()));
                            out.push((tc, Rational::zero()));
                        }
                        k = &k + &Rational::one();
                    } else {
                        let stored = b - &(&k * length);
                        out.push((tb.clone(), stored));
                        break;
                    }
                }
            } else if b < a {
                // descending: split at each lower boundary k*length
                loop {
                    let lower = &k * length;
                    let last = out.last().unwrap().clone();
                    if *b < lower {
                        let tc = ta + &((tb - ta) * (&lower - a) / (b - a));
                        if last.1.is_zero() && last.0 == tc {
                            out.push((tc.clone(), length.clone()));
                        } else {
                            out.push((tc.clone(), Rational::zero()));
                            out.push((tc, length.clone()));
                        }
                        k = &k - &Rational::one();
                    } else {
                        let stored = b - &(&k * length);
                        out.push((tb.clone(), stored));
                        break;
                    }
                }
            } else {
                out.push((tb.clone(), b - &(&k * length)));
            }
        }
        // drop interior duplicates produced when a piece ends exactly on a
        // boundary and the next one continues from it
        out.dedup();
        Trajectory { breakpoints: out }
    }

    /// Position at time `t`, already reduced into the breakpoint span.
    /// At a wrap marker the canonical representative `0` is returned.
    fn eval_local(&self, t: &Rational, fence: &Fence) -> Rational {
        let bps = &self.breakpoints;
        // last index with time <= t; among equal times take the latest entry
        let idx = bps.partition_point(|(bt, _)| bt <= t);
        let pos = if idx == 0 {
            bps[0].1.clone()
        } else if idx == bps.len() {
            bps[bps.len() - 1].1.clone()
        } else {
            let (t0, x0) = &bps[idx - 1];
            let (t1, x1) = &bps[idx];
            if t == t0 || t1 == t0 {
                x0.clone()
            } else {
                x0 + &((x1 - x0) * (t - t0) / (t1 - t0))
            }
        };
        if fence.kind == FenceKind::Circle && pos == fence.length {
            Rational::zero()
        } else {
            pos
        }
    }

    /// Whole-trajectory position range, for coverage pruning.
    pub fn position_span(&self) -> Option<(Rational, Rational)> {
        let mut it = self.breakpoints.iter().map(|(_, x)| x);
        let first = it.next()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for x in it {
            if x < &lo {
                lo = x.clone();
            }
            if x > &hi {
                hi = x.clone();
            }
        }
        Some((lo, hi))
    }
}

impl Schedule {
    /// Position of agent `agent_index` at time `t`. For periodic schedules `t`
    /// is reduced modulo the period; for horizon schedules it must lie within
    /// `[0, end]`. Circle positions are reported in `[0, length)`.
    pub fn position_of(&self, agent_index: usize, t: &Rational) -> Result<Rational, ModelError> {
        let agent = &self.agents[agent_index];
        let local = match &self.time_model {
            TimeModel::Periodic(p) => t.rem_euclid(p),
            TimeModel::Horizon(end) => {
                if t.is_negative() || t > end {
                    return Err(ModelError::TimeOutOfRange(t.clone()));
                }
                t.clone()
            }
        };
        Ok(agent.trajectory.eval_local(&local, &self.fence))
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string(self).expect("schedule serialization cannot fail");
        s.push('\n');
        s
    }

    pub fn from_json_str(s: &str) -> Result<Schedule, ModelError> {
        let schedule: Schedule = serde_json::from_str(s)?;
        let report = schedule.validate();
        if let Some(finding) = report.findings.iter().find(|f| f.kind.is_structural()) {
            return Err(ModelError::Schema(finding.to_string()));
        }
        Ok(schedule)
    }

    /// Checks every schedule constraint and reports all violations. Structural
    /// findings (breakpoint shape, closure, ranges) are also what
    /// [`Schedule::from_json_str`] rejects; speed and direction findings only
    /// surface here.
    pub fn validate(&self) -> ValidationReport {
        let mut findings = Vec::new();
        let l = &self.fence.length;
        if !l.is_positive() {
            findings.push(Finding::global(
                FindingKind::NonPositiveLength,
                format!("fence length {l}"),
            ));
        }
        let end = self.time_model.end();
        if !end.is_positive() {
            let what = if self.time_model.is_periodic() {
                "period"
            } else {
                "horizon"
            };
            findings.push(Finding::global(
                FindingKind::NonPositiveSpan,
                format!("{what} {end}"),
            ));
        }
        if self.agents.is_empty() {
            findings.push(Finding::global(
                FindingKind::EmptyAgents,
                "schedule has no agents".into(),
            ));
        }
        let mut seen_ids = BTreeSet::new();
        for agent in &self.agents {
            if !seen_ids.insert(agent.id) {
                findings.push(Finding::agent(
                    agent.id,
                    FindingKind::DuplicateAgentId,
                    format!("agent id {} reused", agent.id),
                ));
            }
            self.validate_agent(agent, &mut findings);
        }
        ValidationReport { findings }
    }

    fn validate_agent(&self, agent: &Agent, findings: &mut Vec<Finding>) {
        let l = &self.fence.length;
        let end = self.time_model.end();
        let circle = self.fence.kind == FenceKind::Circle;
        let bps = agent.trajectory.breakpoints();
        if agent.max_speed.is_negative() {
            findings.push(Finding::agent(
                agent.id,
                FindingKind::NegativeSpeed,
                format!("max speed {}", agent.max_speed),
            ));
        }
        if bps.len() < 2 {
            findings.push(Finding::agent(
                agent.id,
                FindingKind::TooFewBreakpoints,
                format!("{} breakpoint(s)", bps.len()),
            ));
            return;
        }
        if !bps[0].0.is_zero() {
            findings.push(Finding::agent(
                agent.id,
                FindingKind::FirstTimeNonzero,
                format!("first breakpoint at time {}", bps[0].0),
            ));
        }
        let last = &bps[bps.len() - 1];
        if &last.0 != end {
            let what = if self.time_model.is_periodic() {
                "period closure: period"
            } else {
                "horizon"
            };
            findings.push(Finding::agent(
                agent.id,
                FindingKind::LastTimeMismatch,
                format!("{} is {end} but last breakpoint time is {}", what, last.0),
            ));
        }
        for (i, (t, x)) in bps.iter().enumerate() {
            if x.is_negative() || x > l {
                findings.push(Finding::piece(
                    agent.id,
                    i,
                    FindingKind::PositionOutOfRange,
                    format!("position {x} at time {t} outside [0, {l}]"),
                ));
            }
        }
        for (i, pair) in bps.windows(2).enumerate() {
            let (t0, x0) = &pair[0];
            let (t1, x1) = &pair[1];
            if t1 < t0 {
                findings.push(Finding::piece(
                    agent.id,
                    i,
                    FindingKind::NonMonotoneTime,
                    format!("non-monotone times {t0} -> {t1}"),
                ));
                continue;
            }
            if t1 == t0 {
                let is_marker = circle && ((x0 == l && x1.is_zero()) || (x0.is_zero() && x1 == l));
                if !is_marker {
                    findings.push(Finding::piece(
                        agent.id,
                        i,
                        FindingKind::ZeroDurationPiece,
                        format!("zero-duration piece at time {t0} from {x0} to {x1}"),
                    ));
                }
                continue;
            }
            // |dx| <= v * dt, exactly
            let dx = (x1 - x0).abs();
            let allowed = &agent.max_speed * &(t1 - t0);
            if dx > allowed {
                findings.push(Finding::piece(
                    agent.id,
                    i,
                    FindingKind::SpeedExceeded,
                    format!(
                        "piece moves {dx} in {} exceeding max speed {}",
                        t1 - t0,
                        agent.max_speed
                    ),
                ));
            }
            if self.direction == Direction::Unidirectional && x1 < x0 {
                findings.push(Finding::piece(
                    agent.id,
                    i,
                    FindingKind::DirectionViolation,
                    format!("position decreases {x0} -> {x1}"),
                ));
            }
        }
        if self.direction == Direction::Unidirectional && circle {
            // counterclockwise wrap markers also violate the direction
            for (i, pair) in bps.windows(2).enumerate() {
                let (t0, x0) = &pair[0];
                let (t1, x1) = &pair[1];
                if t0 == t1 && x0.is_zero() && x1 == l {
                    findings.push(Finding::piece(
                        agent.id,
                        i,
                        FindingKind::DirectionViolation,
                        format!("counterclockwise wrap at time {t0}"),
                    ));
                }
            }
        }
        if self.direction == Direction::Unidirectional && !circle {
            findings.push(Finding::agent(
                agent.id,
                FindingKind::DirectionViolation,
                "unidirectional motion requires a circle fence".into(),
            ));
        }
        if self.time_model.is_periodic() {
            let first = &bps[0].1;
            let closes = if circle {
                let d = (&last.1 - first).abs();
                d.is_zero() || d == *l
            } else {
                last.1 == bps[0].1
            };
            if !closes {
                findings.push(Finding::agent(
                    agent.id,
                    FindingKind::PeriodClosure,
                    format!("period closure: starts at {first} but ends at {}", last.1),
                ));
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FindingKind {
    NonPositiveLength,
    NonPositiveSpan,
    EmptyAgents,
    DuplicateAgentId,
    TooFewBreakpoints,
    FirstTimeNonzero,
    LastTimeMismatch,
    NonMonotoneTime,
    ZeroDurationPiece,
    PositionOutOfRange,
    PeriodClosure,
    NegativeSpeed,
    SpeedExceeded,
    DirectionViolation,
}

impl FindingKind {
    /// Structural findings make a file unparseable as a schedule; the rest
    /// (speed, direction) are semantic and only reported by validation.
    pub fn is_structural(self) -> bool {
        !matches!(
            self,
            FindingKind::SpeedExceeded
                | FindingKind::DirectionViolation
                | FindingKind::NegativeSpeed
        )
    }

    pub fn code(self) -> &'static str {
        match self {
            FindingKind::NonPositiveLength => "NONPOSITIVE_LENGTH",
            FindingKind::NonPositiveSpan => "NONPOSITIVE_SPAN",
            FindingKind::EmptyAgents => "EMPTY_AGENTS",
            FindingKind::DuplicateAgentId => "DUPLICATE_AGENT_ID",
            FindingKind::TooFewBreakpoints => "TOO_FEW_BREAKPOINTS",
            FindingKind::FirstTimeNonzero => "FIRST_TIME_NONZERO",
            FindingKind::LastTimeMismatch => "LAST_TIME_MISMATCH",
            FindingKind::NonMonotoneTime => "NON_MONOTONE_TIMES",
            FindingKind::ZeroDurationPiece => "ZERO_DURATION_PIECE",
            FindingKind::PositionOutOfRange => "POSITION_OUT_OF_RANGE",
            FindingKind::PeriodClosure => "PERIOD_CLOSURE",
            FindingKind::NegativeSpeed => "NEGATIVE_SPEED",
            FindingKind::SpeedExceeded => "SPEED_EXCEEDED",
            FindingKind::DirectionViolation => "DIRECTION_VIOLATION",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Finding {
    pub agent_id: Option<u32>,
    pub piece: Option<usize>,
    pub kind: FindingKind,
    pub message: String,
}

impl Finding {
    fn global(kind: FindingKind, message: String) -> Self {
        Finding {
            agent_id: None,
            piece: None,
            kind,
            message,
        }
    }

    fn agent(id: u32, kind: FindingKind, message: String) -> Self {
        Finding {
            agent_id: Some(id),
            piece: None,
            kind,
            message,
        }
    }

    fn piece(id: u32, piece: usize, kind: FindingKind, message: String) -> Self {
        Finding {
            agent_id: Some(id),
            piece: Some(piece),
            kind,
            message,
        }
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind.code())?;
        if let Some(id) = self.agent_id {
            write!(f, " agent={id}")?;
        }
        if let Some(p) = self.piece {
            write!(f, " piece={p}")?;
        }
        write!(f, ": {}", self.message)
    }
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.findings.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass() {
            write!(f, "valid")
        } else {
            for (i, finding) in self.findings.iter().enumerate() {
                if i > 0 {
                    writeln!(f)?;
                }
                write!(f, "{finding}")?;
            }
            Ok(())
        }
    }
}

/// Least common multiple of a nonempty list of positive periods.
pub fn common_period(periods: &[Rational]) -> Result<Rational, NumericError> {
    let mut it = periods.iter();
    let first = it
        .next()
        .ok_or_else(|| NumericError::Malformed("empty period list".into()))?;
    let mut acc = first.clone();
    if !acc.is_positive() {
        return Err(NumericError::NonPositive(acc.to_string()));
    }
    for p in it {
        acc = acc.lcm(p)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn unit_loop_agent(id: u32) -> Agent {
        Agent {
            id,
            max_speed: rat(1, 1),
            trajectory: Trajectory::new(vec![(rat(0, 1), rat(0, 1)), (rat(1, 1), rat(1, 1))]),
        }
    }

    fn unit_loop_schedule() -> Schedule {
        Schedule {
            fence: Fence::unit_circle(),
            time_model: TimeModel::Periodic(rat(1, 1)),
            direction: Direction::Unidirectional,
            agents: vec![unit_loop_agent(1)],
        }
    }

    #[test]
    fn eval_interpolates_and_wraps_time() {
        let s = unit_loop_schedule();
        assert_eq!(s.position_of(0, &r("1/2")).unwrap(), r("1/2"));
        assert_eq!(s.position_of(0, &r("3/2")).unwrap(), r("1/2"));
        assert_eq!(s.position_of(0, &r("1")).unwrap(), r("0"));
        assert_eq!(s.position_of(0, &r("-1/4")).unwrap(), r("3/4"));
    }

    #[test]
    fn eval_stationary_piece() {
        let s = Schedule {
            fence: Fence::unit_circle(),
            time_model: TimeModel::Periodic(rat(8, 1)),
            direction: Direction::None,
            agents: vec![Agent {
                id: 1,
                max_speed: rat(1, 3),
                trajectory: Trajectory::new(vec![
                    (r("0"), r("1/2")),
                    (r("5/2"), r("1/2")),
                    (r("7/2"), r("1/2")),
                    (r("8"), r("1/2")),
                ]),
            }],
        };
        assert_eq!(s.position_of(0, &r("3")).unwrap(), r("1/2"));
    }

    #[test]
    fn horizon_eval_rejects_out_of_range_times() {
        let s = Schedule {
            time_model: TimeModel::Horizon(rat(1, 1)),
            ..unit_loop_schedule()
        };
        assert!(s.position_of(0, &r("1/2")).is_ok());
        assert!(s.position_of(0, &r("3/2")).is_err());
        assert!(s.position_of(0, &r("-1")).is_err());
    }

    #[test]
    fn from_unwrapped_splits_ascending_crossings() {
        let t = Trajectory::from_unwrapped(&[(r("0"), r("0")), (r("2"), r("2"))], &r("1"));
        assert_eq!(
            t.breakpoints(),
            &[
                (r("0"), r("0")),
                (r("1"), r("1")),
                (r("1"), r("0")),
                (r("2"), r("1")),
            ]
        );
    }

    #[test]
    fn from_unwrapped_splits_descending_crossings() {
        let t = Trajectory::from_unwrapped(&[(r("0"), r("1/2")), (r("1"), r("-1/2"))], &r("1"));
        assert_eq!(
            t.breakpoints(),
            &[
                (r("0"), r("1/2")),
                (r("1/2"), r("0")),
                (r("1/2"), r("1")),
                (r("1"), r("1/2")),
            ]
        );
    }

    #[test]
    fn from_unwrapped_handles_boundary_rest_then_ascent() {
        // rises to the seam, rests on it, continues upward
        let t = Trajectory::from_unwrapped(
            &[
                (r("0"), r("1/2")),
                (r("1"), r("1")),
                (r("2"), r("1")),
                (r("3"), r("3/2")),
            ],
            &r("1"),
        );
        assert_eq!(
            t.breakpoints(),
            &[
                (r("0"), r("1/2")),
                (r("1"), r("1")),
                (r("2"), r("1")),
                (r("2"), r("0")),
                (r("3"), r("1/2")),
            ]
        );
    }

    #[test]
    fn from_unwrapped_negative_start_normalizes() {
        let t = Trajectory::from_unwrapped(&[(r("0"), r("-3/32")), (r("4"), r("5/32"))], &r("1"));
        assert_eq!(
            t.breakpoints(),
            &[
                (r("0"), r("29/32")),
                (r("3/2"), r("1")),
                (r("3/2"), r("0")),
                (r("4"), r("5/32")),
            ]
        );
    }

    #[test]
    fn validate_accepts_wrap_markers_on_circles_only() {
        let mut s = unit_loop_schedule();
        s.agents[0].trajectory = Trajectory::new(vec![
            (r("0"), r("1/2")),
            (r("1/2"), r("1")),
            (r("1/2"), r("0")),
            (r("1"), r("1/2")),
        ]);
        assert!(s.validate().pass(), "{}", s.validate());
        let mut seg = s.clone();
        seg.fence = Fence::segment(rat(1, 1));
        seg.direction = Direction::None;
        assert!(seg
            .validate()
            .findings
            .iter()
            .any(|f| f.kind == FindingKind::ZeroDurationPiece));
    }

    #[test]
    fn validate_flags_speed_violations() {
        let mut s = unit_loop_schedule();
        s.agents[0].max_speed = r("1/2");
        let report = s.validate();
        assert!(report
            .findings
            .iter()
            .any(|f| f.kind == FindingKind::SpeedExceeded));
        let shown = report.to_string();
        assert!(shown.contains("SPEED_EXCEEDED agent=1 piece=0"), "{shown}");
    }

    #[test]
    fn validate_flags_direction_violations() {
        let s = Schedule {
            fence: Fence::unit_circle(),
            time_model: TimeModel::Periodic(rat(2, 1)),
            direction: Direction::Unidirectional,
            agents: vec![Agent {
                id: 1,
                max_speed: rat(1, 1),
                trajectory: Trajectory::new(vec![
                    (r("0"), r("0")),
                    (r("1"), r("1")),
                    (r("2"), r("0")),
                ]),
            }],
        };
        assert!(s
            .validate()
            .findings
            .iter()
            .any(|f| f.kind == FindingKind::DirectionViolation));
    }

    #[test]
    fn validate_checks_period_closure() {
        let mut s = unit_loop_schedule();
        s.agents[0].trajectory = Trajectory::new(vec![(r("0"), r("0")), (r("1"), r("1/2"))]);
        assert!(s
            .validate()
            .findings
            .iter()
            .any(|f| f.kind == FindingKind::PeriodClosure));
    }

    #[test]
    fn serialization_round_trips() {
        let s = unit_loop_schedule();
        let text = s.to_json_string();
        let back = Schedule::from_json_str(&text).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn serialization_field_order_is_stable() {
        let s = unit_loop_schedule();
        let expected = concat!(
            "{\"fence\":{\"kind\":\"circle\",\"length\":\"1\"},",
            "\"time_model\":{\"periodic\":\"1\"},",
            "\"direction\":\"unidirectional\",",
            "\"agents\":[{\"id\":1,\"max_speed\":\"1\",",
            "\"breakpoints\":[[\"0\",\"0\"],[\"1\",\"1\"]]}]}\n"
        );
        assert_eq!(s.to_json_string(), expected);
    }

    #[test]
    fn deserialize_rejects_non_monotone_times() {
        let text = r#"{"fence":{"kind":"circle","length":"1"},"time_model":{"periodic":"2"},"direction":"none","agents":[{"id":1,"max_speed":"1","breakpoints":[["0","0"],["2","1"],["1","1/2"],["2","0"]]}]}"#;
        let err = Schedule::from_json_str(text).unwrap_err();
        assert!(err.to_string().contains("NON_MONOTONE_TIMES"), "{err}");
    }

    #[test]
    fn deserialize_rejects_period_closure_gap() {
        let text = r#"{"fence":{"kind":"circle","length":"1"},"time_model":{"periodic":"8"},"direction":"none","agents":[{"id":1,"max_speed":"1","breakpoints":[["0","0"],["7","1/2"]]}]}"#;
        let err = Schedule::from_json_str(text).unwrap_err();
        assert!(err.to_string().contains("LAST_TIME_MISMATCH"), "{err}");
    }

    #[test]
    fn deserialize_keeps_semantic_violations() {
        // speed violations parse fine and are left to validation
        let text = r#"{"fence":{"kind":"segment","length":"1"},"time_model":{"periodic":"2"},"direction":"none","agents":[{"id":1,"max_speed":"1/4","breakpoints":[["0","0"],["1","1"],["2","0"]]}]}"#;
        let s = Schedule::from_json_str(text).unwrap();
        assert!(!s.validate().pass());
    }

    #[test]
    fn common_period_folds_lcm() {
        assert_eq!(common_period(&[r("8"), r("2"), r("4")]).unwrap(), r("8"));
        assert_eq!(common_period(&[r("1/2"), r("1/3")]).unwrap(), r("1"));
        assert_eq!(common_period(&[r("10/3")]).unwrap(), r("10/3"));
        assert!(common_period(&[]).is_err());
    }
}
