//! Exact idle-time verification.
//!
//! The idle time of a schedule is the supremum, over fence points, of the
//! longest open time interval during which the point goes unvisited. For a
//! periodic schedule the gaps are read on the time circle of one period (the
//! steady state); for a horizon schedule the interval `[0, end]` is analysed
//! directly, counting the leading and trailing gaps.
//!
//! The exact sweep rests on a position decomposition: between two adjacent
//! critical positions, every visit event time is a linear function of the
//! position and the event order is fixed, so each gap length is linear there
//! and extremal at a cell boundary. Critical positions are all breakpoint
//! positions, the fence ends, and the positions of pairwise trajectory piece
//! intersections (including against period-shifted copies, which captures
//! event reorderings across the period seam). The sweep evaluates each cell's
//! boundary limits, so positions where extra coverage touches exactly one
//! point (a waiting agent, a turning point) cannot hide a larger gap
//! arbitrarily close by, and cells no trajectory enters are detected as
//! never-visited.

mod gaps;

pub use gaps::{analyze_gaps, GapRegion};

use crate::model::{FenceKind, Schedule, TimeModel, ValidationReport};
use crate::numeric::Rational;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("invalid schedule:\n{0}")]
    InvalidSchedule(ValidationReport),
    #[error("position {0} outside the fence")]
    PositionOutOfRange(Rational),
    #[error("steady-state analysis requires a periodic schedule")]
    NotPeriodic,
    #[error("candidate idle time must be positive, got {0}")]
    NonPositiveCandidate(Rational),
    #[error("sampling grid must have at least one position")]
    EmptyGrid,
}

/// An idle time: a finite rational, or unbounded when some point is never
/// visited at all in a periodic schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdleTime {
    Bounded(Rational),
    Unbounded,
}

impl IdleTime {
    pub fn bounded(&self) -> Option<&Rational> {
        match self {
            IdleTime::Bounded(r) => Some(r),
            IdleTime::Unbounded => None,
        }
    }

    pub fn is_unbounded(&self) -> bool {
        matches!(self, IdleTime::Unbounded)
    }
}

impl PartialOrd for IdleTime {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IdleTime {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (IdleTime::Unbounded, IdleTime::Unbounded) => Ordering::Equal,
            (IdleTime::Unbounded, IdleTime::Bounded(_)) => Ordering::Greater,
            (IdleTime::Bounded(_), IdleTime::Unbounded) => Ordering::Less,
            (IdleTime::Bounded(a), IdleTime::Bounded(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for IdleTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdleTime::Bounded(r) => write!(f, "{r}"),
            IdleTime::Unbounded => write!(f, "unbounded"),
        }
    }
}

impl Serialize for IdleTime {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A position attaining the idle time, with the witnessing unvisited gap.
/// The gap times are absent only for unbounded or zero idle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub position: Rational,
    pub gap: Option<(Rational, Rational)>,
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let n = if self.gap.is_some() { 3 } else { 1 };
        let mut st = serializer.serialize_struct("Witness", n)?;
        st.serialize_field("position", &self.position)?;
        if let Some((start, end)) = &self.gap {
            st.serialize_field("gap_start_time", start)?;
            st.serialize_field("gap_end_time", end)?;
        }
        st.end()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdleReport {
    pub idle: IdleTime,
    pub witnesses: Vec<Witness>,
    pub critical_position_count: usize,
}

/// Exact gap structure of a single fence point.
#[derive(Debug, Clone)]
pub struct PointGap {
    /// Merged visit intervals within one period or the horizon.
    pub timeline: Vec<(Rational, Rational)>,
    pub gap: IdleTime,
    /// Earliest maximal unvisited gap, when one exists.
    pub witness: Option<(Rational, Rational)>,
}

/// One linear trajectory piece in the position-time diagram.
#[derive(Debug, Clone)]
pub(crate) struct Piece {
    pub t0: Rational,
    pub x0: Rational,
    pub t1: Rational,
    pub x1: Rational,
}

impl Piece {
    pub fn is_stationary(&self) -> bool {
        self.x0 == self.x1
    }

    pub fn x_lo(&self) -> &Rational {
        if self.x0 <= self.x1 {
            &self.x0
        } else {
            &self.x1
        }
    }

    pub fn x_hi(&self) -> &Rational {
        if self.x0 <= self.x1 {
            &self.x1
        } else {
            &self.x0
        }
    }

    /// Crossing time of a non-stationary piece at position `x`.
    pub fn time_at(&self, x: &Rational) -> Rational {
        debug_assert!(!self.is_stationary());
        &self.t0 + &((x - &self.x0) * (&self.t1 - &self.t0) / (&self.x1 - &self.x0))
    }
}

/// All positive-duration pieces of the schedule; wrap markers are skipped.
pub(crate) fn real_pieces(s: &Schedule) -> Vec<Piece> {
    let mut out = Vec::new();
    for agent in &s.agents {
        for pair in agent.trajectory.breakpoints().windows(2) {
            let (t0, x0) = &pair[0];
            let (t1, x1) = &pair[1];
            if t1 > t0 {
                out.push(Piece {
                    t0: t0.clone(),
                    x0: x0.clone(),
                    t1: t1.clone(),
                    x1: x1.clone(),
                });
            }
        }
    }
    out
}

fn ensure_valid(s: &Schedule) -> Result<(), VerifyError> {
    let report = s.validate();
    if report.pass() {
        Ok(())
    } else {
        Err(VerifyError::InvalidSchedule(report))
    }
}

fn merge_intervals(intervals: &mut Vec<(Rational, Rational)>) {
    intervals.sort();
    let mut merged: Vec<(Rational, Rational)> = Vec::with_capacity(intervals.len());
    for (a, b) in intervals.drain(..) {
        match merged.last_mut() {
            Some(last) if a <= last.1 => {
                if b > last.1 {
                    last.1 = b;
                }
            }
            _ => merged.push((a, b)),
        }
    }
    *intervals = merged;
}

fn timeline_unchecked(s: &Schedule, pieces: &[Piece], x: &Rational) -> Vec<(Rational, Rational)> {
    let l = &s.fence.length;
    let circle = s.fence.kind == FenceKind::Circle;
    let query = if circle && x == l {
        Rational::zero()
    } else {
        x.clone()
    };
    let mut intervals = Vec::new();
    for p in pieces {
        if p.is_stationary() {
            let here = p.x0 == query || (circle && query.is_zero() && &p.x0 == l);
            if here {
                intervals.push((p.t0.clone(), p.t1.clone()));
            }
            continue;
        }
        if &query >= p.x_lo() && &query <= p.x_hi() {
            let t = p.time_at(&query);
            intervals.push((t.clone(), t));
        }
        // on a circle, position 0 is also reached by pieces touching length
        if circle && query.is_zero() && p.x_hi() == l {
            let t = p.time_at(l);
            intervals.push((t.clone(), t));
        }
    }
    merge_intervals(&mut intervals);
    intervals
}

/// Merged visit intervals of all agents at position `x`, within one period
/// for periodic schedules or within `[0, end]` for horizon schedules.
/// Instantaneous crossings appear as degenerate intervals.
pub fn visit_timeline(
    s: &Schedule,
    x: &Rational,
) -> Result<Vec<(Rational, Rational)>, VerifyError> {
    ensure_valid(s)?;
    if x.is_negative() || x > &s.fence.length {
        return Err(VerifyError::PositionOutOfRange(x.clone()));
    }
    Ok(timeline_unchecked(s, &real_pieces(s), x))
}

fn point_gap_from_timeline(
    timeline: Vec<(Rational, Rational)>,
    time_model: &TimeModel,
) -> PointGap {
    match time_model {
        TimeModel::Periodic(period) => {
            if timeline.is_empty() {
                return PointGap {
                    timeline,
                    gap: IdleTime::Unbounded,
                    witness: None,
                };
            }
            let mut unrolled = timeline.clone();
            for (a, b) in &timeline {
                unrolled.push((a + period, b + period));
            }
            merge_intervals(&mut unrolled);
            let mut best = Rational::zero();
            let mut witness: Option<(Rational, Rational)> = None;
            for pair in unrolled.windows(2) {
                let gap = &pair[1].0 - &pair[0].1;
                if gap.is_positive() && (witness.is_none() || gap > best) {
                    best = gap;
                    witness = Some(normalize_gap(&pair[0].1, &pair[1].0, period));
                } else if gap == best && witness.is_some() {
                    let cand = normalize_gap(&pair[0].1, &pair[1].0, period);
                    if &cand < witness.as_ref().unwrap() {
                        witness = Some(cand);
                    }
                }
            }
            PointGap {
                timeline,
                gap: IdleTime::Bounded(best),
                witness,
            }
        }
        TimeModel::Horizon(end) => {
            let mut best = Rational::zero();
            let mut witness: Option<(Rational, Rational)> = None;
            let mut consider = |start: &Rational, stop: &Rational| {
                let gap = stop - start;
                if gap.is_positive() && (witness.is_none() || gap > best) {
                    best = gap;
                    witness = Some((start.clone(), stop.clone()));
                }
            };
            if timeline.is_empty() {
                consider(&Rational::zero(), end);
            } else {
                consider(&Rational::zero(), &timeline[0].0);
                for pair in timeline.windows(2) {
                    consider(&pair[0].1, &pair[1].0);
                }
                consider(&timeline[timeline.len() - 1].1, end);
            }
            PointGap {
                timeline,
                gap: IdleTime::Bounded(best),
                witness,
            }
        }
    }
}

fn normalize_gap(start: &Rational, end: &Rational, period: &Rational) -> (Rational, Rational) {
    let shift = Rational::from_bigint((start / period).floor()) * period;
    (start - &shift, end - &shift)
}

/// Exact maximum unvisited gap at a single position.
pub fn max_gap_at(s: &Schedule, x: &Rational) -> Result<PointGap, VerifyError> {
    let timeline = visit_timeline(s, x)?;
    Ok(point_gap_from_timeline(timeline, &s.time_model))
}

/// Intersection of two diagram segments, reported as the position coordinate.
/// Parallel and collinear pairs yield nothing: they cannot reorder events.
fn intersection_position(
    a: (&Rational, &Rational, &Rational, &Rational),
    b: (&Rational, &Rational, &Rational, &Rational),
) -> Option<Rational> {
    let (at0, ax0, at1, ax1) = a;
    let (bt0, bx0, bt1, bx1) = b;
    let d1t = at1 - at0;
    let d1x = ax1 - ax0;
    let d2t = bt1 - bt0;
    let d2x = bx1 - bx0;
    let denom = &d1t * &d2x - &d1x * &d2t;
    if denom.is_zero() {
        return None;
    }
    let wt = bt0 - at0;
    let wx = bx0 - ax0;
    let s_num = &wt * &d2x - &wx * &d2t;
    let u_num = &wt * &d1x - &wx * &d1t;
    let s = s_num / &denom;
    let u = u_num / &denom;
    let unit = Rational::one();
    if s.is_negative() || s > unit || u.is_negative() || u > unit {
        return None;
    }
    Some(ax0 + &(s * d1x))
}

fn critical_set(s: &Schedule, pieces: &[Piece]) -> BTreeSet<Rational> {
    let l = &s.fence.length;
    let mut set = BTreeSet::new();
    set.insert(Rational::zero());
    set.insert(l.clone());
    for agent in &s.agents {
        for (_, x) in agent.trajectory.breakpoints() {
            set.insert(x.clone());
        }
    }
    // pairwise piece intersections, pruned by overlapping time spans; for
    // periodic schedules each piece is also compared against +period copies
    let period = match &s.time_model {
        TimeModel::Periodic(p) => Some(p),
        TimeModel::Horizon(_) => None,
    };
    struct Item {
        t0: Rational,
        t1: Rational,
        idx: usize,
        shifted: bool,
    }
    let mut items: Vec<Item> = Vec::with_capacity(pieces.len() * 2);
    for (idx, p) in pieces.iter().enumerate() {
        items.push(Item {
            t0: p.t0.clone(),
            t1: p.t1.clone(),
            idx,
            shifted: false,
        });
        if let Some(t) = period {
            items.push(Item {
                t0: &p.t0 + t,
                t1: &p.t1 + t,
                idx,
                shifted: true,
            });
        }
    }
    items.sort_by(|a, b| a.t0.cmp(&b.t0).then_with(|| a.t1.cmp(&b.t1)));
    for i in 0..items.len() {
        for j in (i + 1)..items.len() {
            if items[j].t0 > items[i].t1 {
                break;
            }
            let (a, b) = (&items[i], &items[j]);
            if a.shifted && b.shifted {
                continue;
            }
            if a.idx == b.idx && a.shifted == b.shifted {
                continue;
            }
            let pa = &pieces[a.idx];
            let pb = &pieces[b.idx];
            let zero = Rational::zero();
            let sa = if a.shifted {
                period.unwrap().clone()
            } else {
                zero.clone()
            };
            let sb = if b.shifted {
                period.unwrap().clone()
            } else {
                zero
            };
            let hit = intersection_position(
                (&(&pa.t0 + &sa), &pa.x0, &(&pa.t1 + &sa), &pa.x1),
                (&(&pb.t0 + &sb), &pb.x0, &(&pb.t1 + &sb), &pb.x1),
            );
            if let Some(x) = hit {
                set.insert(x);
            }
        }
    }
    set.retain(|x| !x.is_negative() && x <= l);
    set
}

/// Sorted critical positions: breakpoint positions, the fence ends, and all
/// pairwise piece intersection positions (period-shifted pairs included).
/// Gap lengths are piecewise linear in the position between consecutive
/// entries, so the idle time is determined by this set.
pub fn critical_positions(s: &Schedule) -> Result<Vec<Rational>, VerifyError> {
    ensure_valid(s)?;
    let pieces = real_pieces(s);
    Ok(critical_set(s, &pieces).into_iter().collect())
}

/// A maximal-gap candidate produced by the cell sweep.
struct Candidate {
    position: Rational,
    gap: (Rational, Rational),
}

/// Computes the exact idle time by sweeping cells between adjacent critical
/// positions. Witnesses are the critical positions whose own gap attains the
/// idle time, sorted ascending; on a circle, position `length` is reported
/// as `0`.
pub fn exact_idle(s: &Schedule) -> Result<IdleReport, VerifyError> {
    ensure_valid(s)?;
    let pieces = real_pieces(s);
    let crits: Vec<Rational> = critical_set(s, &pieces).into_iter().collect();
    let critical_position_count = crits.len();
    let period = match &s.time_model {
        TimeModel::Periodic(p) => Some(p.clone()),
        TimeModel::Horizon(_) => None,
    };
    let end = s.time_model.end().clone();

    let mut uncovered_midpoints: Vec<Rational> = Vec::new();
    let mut best: Option<Rational> = None;
    let mut winners: Vec<Candidate> = Vec::new();
    let push = |value: Rational,
                position: Rational,
                gap: (Rational, Rational),
                best: &mut Option<Rational>,
                winners: &mut Vec<Candidate>| {
        let better = match best {
            None => true,
            Some(b) => value > *b,
        };
        if better {
            *best = Some(value.clone());
            winners.clear();
            winners.push(Candidate { position, gap });
        } else if best.as_ref() == Some(&value) {
            winners.push(Candidate { position, gap });
        }
    };

    for cell in crits.windows(2) {
        let (a, b) = (&cell[0], &cell[1]);
        // events: crossing times of pieces spanning the whole cell, as
        // (time at a, time at b); order is constant across the open cell
        let mut events: Vec<(Rational, Rational)> = pieces
            .iter()
            .filter(|p| !p.is_stationary() && p.x_lo() <= a && p.x_hi() >= b)
            .map(|p| (p.time_at(a), p.time_at(b)))
            .collect();
        events.sort_by(|l, r| {
            (&l.0 + &l.1)
                .cmp(&(&r.0 + &r.1))
                .then_with(|| l.0.cmp(&r.0))
        });
        events.dedup();
        for w in events.windows(2) {
            debug_assert!(
                w[0].0 <= w[1].0 && w[0].1 <= w[1].1,
                "event order must be constant inside a cell"
            );
        }
        if events.is_empty() {
            let midpoint = (a + b) / Rational::from_integer(2);
            if period.is_some() {
                uncovered_midpoints.push(midpoint);
            } else {
                push(
                    end.clone(),
                    midpoint,
                    (Rational::zero(), end.clone()),
                    &mut best,
                    &mut winners,
                );
            }
            continue;
        }
        let m = events.len();
        match &period {
            Some(t) => {
                for j in 0..m {
                    let (next_a, next_b) = if j + 1 < m {
                        (events[j + 1].0.clone(), events[j + 1].1.clone())
                    } else {
                        (&events[0].0 + t, &events[0].1 + t)
                    };
                    let ga = &next_a - &events[j].0;
                    let gb = &next_b - &events[j].1;
                    push(
                        ga,
                        a.clone(),
                        normalize_gap(&events[j].0, &next_a, t),
                        &mut best,
                        &mut winners,
                    );
                    push(
                        gb,
                        b.clone(),
                        normalize_gap(&events[j].1, &next_b, t),
                        &mut best,
                        &mut winners,
                    );
                }
            }
            None => {
                let zero = Rational::zero();
                push(
                    events[0].0.clone(),
                    a.clone(),
                    (zero.clone(), events[0].0.clone()),
                    &mut best,
                    &mut winners,
                );
                push(
                    events[0].1.clone(),
                    b.clone(),
                    (zero, events[0].1.clone()),
                    &mut best,
                    &mut winners,
                );
                for j in 0..m - 1 {
                    let ga = &events[j + 1].0 - &events[j].0;
                    let gb = &events[j + 1].1 - &events[j].1;
                    push(
                        ga,
                        a.clone(),
                        (events[j].0.clone(), events[j + 1].0.clone()),
                        &mut best,
                        &mut winners,
                    );
                    push(
                        gb,
                        b.clone(),
                        (events[j].1.clone(), events[j + 1].1.clone()),
                        &mut best,
                        &mut winners,
                    );
                }
                let last = &events[m - 1];
                push(
                    &end - &last.0,
                    a.clone(),
                    (last.0.clone(), end.clone()),
                    &mut best,
                    &mut winners,
                );
                push(
                    &end - &last.1,
                    b.clone(),
                    (last.1.clone(), end.clone()),
                    &mut best,
                    &mut winners,
                );
            }
        }
    }

    if !uncovered_midpoints.is_empty() {
        uncovered_midpoints.sort();
        uncovered_midpoints.dedup();
        let witnesses = uncovered_midpoints
            .into_iter()
            .map(|position| Witness {
                position,
                gap: None,
            })
            .collect();
        return Ok(IdleReport {
            idle: IdleTime::Unbounded,
            witnesses,
            critical_position_count,
        });
    }

    let idle = best.unwrap_or_else(Rational::zero);
    // witnesses: candidate cell boundaries whose pointwise gap attains the
    // maximum; if extra point coverage keeps every boundary strictly below
    // the supremum, fall back to the boundary limits themselves
    let l = &s.fence.length;
    let circle = s.fence.kind == FenceKind::Circle;
    let canonical = |x: &Rational| -> Rational {
        if circle && x == l {
            Rational::zero()
        } else {
            x.clone()
        }
    };
    let mut candidate_positions: Vec<Rational> =
        winners.iter().map(|c| canonical(&c.position)).collect();
    candidate_positions.sort();
    candidate_positions.dedup();
    let mut witnesses: Vec<Witness> = Vec::new();
    if idle.is_positive() {
        for pos in &candidate_positions {
            let pg = point_gap_from_timeline(timeline_unchecked(s, &pieces, pos), &s.time_model);
            if pg.gap == IdleTime::Bounded(idle.clone()) {
                witnesses.push(Witness {
                    position: pos.clone(),
                    gap: pg.witness,
                });
            }
        }
        if witnesses.is_empty() {
            let mut by_pos: Vec<(Rational, (Rational, Rational))> = winners
                .iter()
                .map(|c| (canonical(&c.position), c.gap.clone()))
                .collect();
            by_pos.sort();
            by_pos.dedup_by(|a, b| a.0 == b.0);
            witnesses = by_pos
                .into_iter()
                .map(|(position, gap)| Witness {
                    position,
                    gap: Some(gap),
                })
                .collect();
        }
    }
    Ok(IdleReport {
        idle: IdleTime::Bounded(idle),
        witnesses,
        critical_position_count,
    })
}

/// Brute-force oracle: the exact pointwise gap maximised over an evenly
/// spaced position grid. Grid points are `j*length/grid`; a segment includes
/// both endpoints, a circle stops before the seam. Never exceeds
/// [`exact_idle`], and agrees with it when the grid hits a witness.
pub fn sampled_idle(s: &Schedule, grid: u32) -> Result<IdleTime, VerifyError> {
    ensure_valid(s)?;
    if grid == 0 {
        return Err(VerifyError::EmptyGrid);
    }
    let pieces = real_pieces(s);
    let l = &s.fence.length;
    let last = match s.fence.kind {
        FenceKind::Segment => grid,
        FenceKind::Circle => grid - 1,
    };
    let step = l / &Rational::from_integer(grid as i64);
    let mut best = IdleTime::Bounded(Rational::zero());
    for j in 0..=last {
        let x = &Rational::from_integer(j as i64) * &step;
        let pg = point_gap_from_timeline(timeline_unchecked(s, &pieces, &x), &s.time_model);
        if pg.gap > best {
            best = pg.gap;
        }
    }
    Ok(best)
}

/// Smallest idle time any schedule with these speeds could achieve on a
/// fence of this length: the whole fence must be swept between visits, so
/// `length / sum of speeds` lower-bounds the idle time.
pub fn volume_lower_bound(length: &Rational, speeds: &[Rational]) -> Rational {
    let total: Rational = speeds.iter().sum();
    assert!(
        total.is_positive(),
        "lower bound needs a positive total speed"
    );
    length / &total
}

#[derive(Debug, Clone)]
pub struct ComparisonReport {
    pub idle: IdleTime,
    pub lower_bound: Rational,
    /// Idle time relative to the evenly-partitioned segment baseline
    /// `2*length/sum(v)`; under 1 means the schedule beats it. Segments only.
    pub rho_vs_partition: Option<Rational>,
    /// Idle time relative to the spaced-runners baseline `1/max(i*v_i)` with
    /// speeds sorted decreasing. Circles only.
    pub rho_vs_runners: Option<Rational>,
}

/// Normalizes the schedule's idle time against the volume lower bound and
/// the baseline construction for its fence kind.
pub fn compare(s: &Schedule) -> Result<ComparisonReport, VerifyError> {
    let report = exact_idle(s)?;
    let speeds: Vec<Rational> = s.agents.iter().map(|a| a.max_speed.clone()).collect();
    let l = &s.fence.length;
    let lower_bound = volume_lower_bound(l, &speeds);
    let idle = report.idle;
    let bounded = idle.bounded();
    let two = Rational::from_integer(2);
    let rho_vs_partition = match (s.fence.kind, bounded) {
        (FenceKind::Segment, Some(i)) => {
            let total: Rational = speeds.iter().sum();
            Some(i * &total / (&two * l))
        }
        _ => None,
    };
    let rho_vs_runners = match (s.fence.kind, bounded) {
        (FenceKind::Circle, Some(i)) => {
            let mut sorted = speeds.clone();
            sorted.sort_by(|a, b| b.cmp(a));
            let mut best_rate: Option<Rational> = None;
            for (rank, v) in sorted.iter().enumerate() {
                let rate = &Rational::from_integer(rank as i64 + 1) * v;
                if best_rate.as_ref().is_none_or(|b| &rate > b) {
                    best_rate = Some(rate);
                }
            }
            best_rate.map(|r| i * &r)
        }
        _ => None,
    };
    Ok(ComparisonReport {
        idle,
        lower_bound,
        rho_vs_partition,
        rho_vs_runners,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Agent, Direction, Fence, Trajectory};
    use crate::numeric::rat;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn bp(pairs: &[(&str, &str)]) -> Trajectory {
        Trajectory::new(pairs.iter().map(|(t, x)| (r(t), r(x))).collect())
    }

    fn schedule(
        fence: Fence,
        time_model: TimeModel,
        direction: Direction,
        agents: Vec<(Rational, Trajectory)>,
    ) -> Schedule {
        Schedule {
            fence,
            time_model,
            direction,
            agents: agents
                .into_iter()
                .enumerate()
                .map(|(i, (max_speed, trajectory))| Agent {
                    id: i as u32 + 1,
                    max_speed,
                    trajectory,
                })
                .collect(),
        }
    }

    fn unit_loop() -> Schedule {
        schedule(
            Fence::unit_circle(),
            TimeModel::Periodic(rat(1, 1)),
            Direction::Unidirectional,
            vec![(rat(1, 1), bp(&[("0", "0"), ("1", "1")]))],
        )
    }

    #[test]
    fn timeline_of_single_crossing() {
        let s = unit_loop();
        assert_eq!(
            visit_timeline(&s, &r("1/2")).unwrap(),
            vec![(r("1/2"), r("1/2"))]
        );
    }

    #[test]
    fn timeline_of_stationary_interval() {
        let s = schedule(
            Fence::unit_circle(),
            TimeModel::Periodic(rat(8, 1)),
            Direction::None,
            vec![(
                rat(1, 1),
                bp(&[("0", "1/2"), ("5/2", "1/2"), ("7/2", "1/2"), ("8", "1/2")]),
            )],
        );
        // the whole period is spent at 1/2, in three touching stationary pieces
        assert_eq!(
            visit_timeline(&s, &r("1/2")).unwrap(),
            vec![(r("0"), r("8"))]
        );
        assert_eq!(visit_timeline(&s, &r("1/4")).unwrap(), vec![]);
    }

    #[test]
    fn timeline_merges_simultaneous_touches() {
        let s = schedule(
            Fence::segment(rat(1, 1)),
            TimeModel::Periodic(rat(2, 1)),
            Direction::None,
            vec![
                (rat(1, 1), bp(&[("0", "0"), ("1", "1"), ("2", "0")])),
                (rat(1, 1), bp(&[("0", "1"), ("1", "0"), ("2", "1")])),
            ],
        );
        assert_eq!(
            visit_timeline(&s, &r("1/2")).unwrap(),
            vec![(r("1/2"), r("1/2")), (r("3/2"), r("3/2"))]
        );
    }

    #[test]
    fn timeline_rejects_positions_off_the_fence() {
        let s = unit_loop();
        assert!(matches!(
            visit_timeline(&s, &r("3/2")),
            Err(VerifyError::PositionOutOfRange(_))
        ));
    }

    #[test]
    fn critical_positions_of_single_loop() {
        let s = unit_loop();
        assert_eq!(critical_positions(&s).unwrap(), vec![r("0"), r("1")]);
    }

    #[test]
    fn critical_positions_of_crossing_bouncers() {
        let s = schedule(
            Fence::segment(rat(1, 1)),
            TimeModel::Periodic(rat(2, 1)),
            Direction::None,
            vec![
                (rat(1, 1), bp(&[("0", "0"), ("1", "1"), ("2", "0")])),
                (rat(1, 1), bp(&[("0", "1"), ("1", "0"), ("2", "1")])),
            ],
        );
        assert_eq!(
            critical_positions(&s).unwrap(),
            vec![r("0"), r("1/2"), r("1")]
        );
    }

    #[test]
    fn exact_idle_of_single_loop_is_one() {
        let report = exact_idle(&unit_loop()).unwrap();
        assert_eq!(report.idle, IdleTime::Bounded(r("1")));
        assert_eq!(report.critical_position_count, 2);
        let positions: Vec<_> = report
            .witnesses
            .iter()
            .map(|w| w.position.clone())
            .collect();
        assert_eq!(positions, vec![r("0")]);
        assert_eq!(report.witnesses[0].gap, Some((r("0"), r("1"))));
    }

    #[test]
    fn exact_idle_of_two_even_bouncers() {
        // both halves patrolled by a bouncing agent; the far ends see one
        // touch per period
        let s = schedule(
            Fence::segment(rat(1, 1)),
            TimeModel::Periodic(rat(1, 1)),
            Direction::None,
            vec![
                (rat(1, 1), bp(&[("0", "0"), ("1/2", "1/2"), ("1", "0")])),
                (rat(1, 1), bp(&[("0", "1/2"), ("1/2", "1"), ("1", "1/2")])),
            ],
        );
        let report = exact_idle(&s).unwrap();
        assert_eq!(report.idle, IdleTime::Bounded(r("1")));
        let positions: Vec<_> = report
            .witnesses
            .iter()
            .map(|w| w.position.clone())
            .collect();
        assert_eq!(positions, vec![r("0"), r("1")]);
    }

    #[test]
    fn exact_idle_detects_unbounded_regions() {
        let s = schedule(
            Fence::segment(rat(2, 1)),
            TimeModel::Periodic(rat(2, 1)),
            Direction::None,
            vec![(rat(1, 1), bp(&[("0", "0"), ("1", "1"), ("2", "0")]))],
        );
        let report = exact_idle(&s).unwrap();
        assert_eq!(report.idle, IdleTime::Unbounded);
        let positions: Vec<_> = report
            .witnesses
            .iter()
            .map(|w| w.position.clone())
            .collect();
        assert_eq!(positions, vec![r("3/2")]);
    }

    #[test]
    fn exact_idle_on_horizon_counts_boundary_gaps() {
        let s = schedule(
            Fence::segment(rat(1, 1)),
            TimeModel::Horizon(rat(1, 1)),
            Direction::None,
            vec![(rat(1, 1), bp(&[("0", "0"), ("1", "1")]))],
        );
        let report = exact_idle(&s).unwrap();
        assert_eq!(report.idle, IdleTime::Bounded(r("1")));
        let positions: Vec<_> = report
            .witnesses
            .iter()
            .map(|w| w.position.clone())
            .collect();
        assert_eq!(positions, vec![r("0"), r("1")]);
        // at the left end the whole interval after the start is unvisited
        assert_eq!(report.witnesses[0].gap, Some((r("0"), r("1"))));
    }

    #[test]
    fn sampled_idle_agrees_on_simple_loops() {
        let s = unit_loop();
        assert_eq!(sampled_idle(&s, 7).unwrap(), IdleTime::Bounded(r("1")));
        assert_eq!(sampled_idle(&s, 1).unwrap(), IdleTime::Bounded(r("1")));
    }

    #[test]
    fn sampled_idle_never_exceeds_exact() {
        let s = schedule(
            Fence::segment(rat(1, 1)),
            TimeModel::Periodic(rat(1, 1)),
            Direction::None,
            vec![
                (rat(1, 1), bp(&[("0", "0"), ("1/2", "1/2"), ("1", "0")])),
                (rat(1, 1), bp(&[("0", "1/2"), ("1/2", "1"), ("1", "1/2")])),
            ],
        );
        let exact = exact_idle(&s).unwrap().idle;
        for grid in [2, 3, 5, 10, 257] {
            assert!(sampled_idle(&s, grid).unwrap() <= exact);
        }
        assert_eq!(sampled_idle(&s, 10).unwrap(), exact);
    }

    #[test]
    fn volume_bound_examples() {
        assert_eq!(
            volume_lower_bound(&r("1"), &[r("1"), r("1/2"), r("1/3")]),
            r("6/11")
        );
        assert_eq!(
            volume_lower_bound(&r("50/3"), &vec![r("1"); 33]),
            r("50/99")
        );
    }

    #[test]
    fn compare_reports_segment_ratio() {
        let s = schedule(
            Fence::segment(rat(1, 1)),
            TimeModel::Periodic(rat(1, 1)),
            Direction::None,
            vec![
                (rat(1, 1), bp(&[("0", "0"), ("1/2", "1/2"), ("1", "0")])),
                (rat(1, 1), bp(&[("0", "1/2"), ("1/2", "1"), ("1", "1/2")])),
            ],
        );
        let c = compare(&s).unwrap();
        assert_eq!(c.idle, IdleTime::Bounded(r("1")));
        assert_eq!(c.lower_bound, r("1/2"));
        assert_eq!(c.rho_vs_partition, Some(r("1")));
        assert_eq!(c.rho_vs_runners, None);
    }

    #[test]
    fn compare_reports_circle_ratio() {
        let c = compare(&unit_loop()).unwrap();
        assert_eq!(c.rho_vs_runners, Some(r("1")));
        assert_eq!(c.rho_vs_partition, None);
    }

    #[test]
    fn idle_report_serialization() {
        let report = exact_idle(&unit_loop()).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert_eq!(
            json,
            r#"{"idle":"1","witnesses":[{"position":"0","gap_start_time":"0","gap_end_time":"1"}],"critical_position_count":2}"#
        );
    }

    #[test]
    fn rejects_invalid_schedules() {
        let mut s = unit_loop();
        s.agents[0].max_speed = r("1/2");
        assert!(matches!(
            exact_idle(&s),
            Err(VerifyError::InvalidSchedule(_))
        ));
    }
}
