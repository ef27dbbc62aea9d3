//! Space-time coverage analysis for periodic schedules.
//!
//! Each visit at time `e` keeps its position covered until `e + I`, where
//! `I` is a candidate idle time. Sweeping a moving agent's visits across its
//! piece therefore covers a parallelogram band in the position-time plane.
//! The uncovered remainder of one period window is where the candidate is
//! exceeded; it is empty exactly when the candidate is at least the idle
//! time. Waiting agents re-cover a single position, a zero-width column that
//! carries no area, so they are ignored here and regions are reported up to
//! zero-area slivers.
//!
//! The window is cut into vertical slabs at every x where the band edge
//! arrangement can change: band ends, edge crossings, and edge crossings
//! with the window top and bottom. Inside a slab the edge order is fixed, so
//! the uncovered set is a stack of trapezoids; trapezoids are chained across
//! slabs while both boundary lines continue straight, which keeps every
//! reported region a convex polygon.

use super::VerifyError;
use crate::model::{Schedule, TimeModel};
use crate::numeric::Rational;
use serde::{Deserialize, Serialize};

/// A maximal convex uncovered region. Vertices wind counter-clockwise in
/// the (position, time) plane starting from the lexicographically smallest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapRegion {
    pub vertices: Vec<(Rational, Rational)>,
    pub area: Rational,
}

struct Band {
    xl: Rational,
    xr: Rational,
    /// lower edge times at `xl` and `xr`; the upper edge sits `candidate` later
    tl: Rational,
    tr: Rational,
}

impl Band {
    fn lower_at(&self, x: &Rational) -> Rational {
        &self.tl + &((x - &self.xl) * (&self.tr - &self.tl) / (&self.xr - &self.xl))
    }
}

struct Edge {
    xl: Rational,
    xr: Rational,
    tl: Rational,
    tr: Rational,
}

impl Edge {
    fn slope(&self) -> Rational {
        (&self.tr - &self.tl) / (&self.xr - &self.xl)
    }
}

/// An uncovered trapezoid within one slab: boundary times at the slab's two
/// x coordinates.
struct Cell {
    bot_a: Rational,
    bot_b: Rational,
    top_a: Rational,
    top_b: Rational,
}

struct OpenRegion {
    x_end: Rational,
    bot_start: (Rational, Rational),
    bot_end: (Rational, Rational),
    top_start: (Rational, Rational),
    top_end: (Rational, Rational),
}

fn collinear(p: &(Rational, Rational), q: &(Rational, Rational), r: &(Rational, Rational)) -> bool {
    (&q.0 - &p.0) * (&r.1 - &p.1) == (&q.1 - &p.1) * (&r.0 - &p.0)
}

fn close_region(region: OpenRegion) -> Option<GapRegion> {
    let raw = [
        region.bot_start,
        region.bot_end,
        region.top_end,
        region.top_start,
    ];
    let mut vertices: Vec<(Rational, Rational)> = Vec::with_capacity(4);
    for v in raw {
        if vertices.last() != Some(&v) {
            vertices.push(v);
        }
    }
    if vertices.len() > 1 && vertices.first() == vertices.last() {
        vertices.pop();
    }
    if vertices.len() < 3 {
        return None;
    }
    let min_idx = vertices
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.cmp(b.1))
        .map(|(i, _)| i)
        .unwrap();
    vertices.rotate_left(min_idx);
    let mut doubled = Rational::zero();
    for i in 0..vertices.len() {
        let (x0, t0) = &vertices[i];
        let (x1, t1) = &vertices[(i + 1) % vertices.len()];
        doubled = doubled + (x0 * t1 - x1 * t0);
    }
    debug_assert!(
        doubled.is_positive(),
        "region polygons wind counter-clockwise"
    );
    let area = doubled / Rational::from_integer(2);
    Some(GapRegion { vertices, area })
}

/// Uncovered regions of one period window `[phase, phase + period]` at a
/// candidate idle time. An empty result means every point is revisited
/// within the candidate throughout the steady state.
pub fn analyze_gaps(
    s: &Schedule,
    candidate: &Rational,
    phase: Option<&Rational>,
) -> Result<Vec<GapRegion>, VerifyError> {
    super::ensure_valid(s)?;
    let period = match &s.time_model {
        TimeModel::Periodic(p) => p.clone(),
        TimeModel::Horizon(_) => return Err(VerifyError::NotPeriodic),
    };
    if !candidate.is_positive() {
        return Err(VerifyError::NonPositiveCandidate(candidate.clone()));
    }
    let t_lo = phase.cloned().unwrap_or_else(Rational::zero);
    let t_hi = &t_lo + &period;
    let length = s.fence.length.clone();

    // bands: every period shift of a moving piece whose coverage can reach
    // the window
    let mut bands: Vec<Band> = Vec::new();
    for p in super::real_pieces(s) {
        if p.is_stationary() {
            continue;
        }
        let xl = p.x_lo().clone();
        let xr = p.x_hi().clone();
        let tl = p.time_at(&xl);
        let tr = p.time_at(&xr);
        let m_lo = i64::try_from(&((&t_lo - candidate - &p.t1) / &period).ceil())
            .expect("period shift range fits in i64");
        let m_hi = i64::try_from(&((&t_hi - &p.t0) / &period).floor())
            .expect("period shift range fits in i64");
        for m in m_lo..=m_hi {
            let shift = &Rational::from_integer(m) * &period;
            let btl = &tl + &shift;
            let btr = &tr + &shift;
            let t_min = btl.clone().min(btr.clone());
            let t_max = btl.clone().max(btr.clone()) + candidate;
            if t_min <= t_hi && t_max >= t_lo {
                bands.push(Band {
                    xl: xl.clone(),
                    xr: xr.clone(),
                    tl: btl,
                    tr: btr,
                });
            }
        }
    }

    // slab cuts: band ends, fence ends, edge crossings, window crossings
    let mut cuts: std::collections::BTreeSet<Rational> = std::collections::BTreeSet::new();
    cuts.insert(Rational::zero());
    cuts.insert(length.clone());
    let mut edges: Vec<Edge> = Vec::with_capacity(bands.len() * 2);
    for b in &bands {
        cuts.insert(b.xl.clone());
        cuts.insert(b.xr.clone());
        edges.push(Edge {
            xl: b.xl.clone(),
            xr: b.xr.clone(),
            tl: b.tl.clone(),
            tr: b.tr.clone(),
        });
        edges.push(Edge {
            xl: b.xl.clone(),
            xr: b.xr.clone(),
            tl: &b.tl + candidate,
            tr: &b.tr + candidate,
        });
    }
    for i in 0..edges.len() {
        for j in (i + 1)..edges.len() {
            let (a, b) = (&edges[i], &edges[j]);
            let lo = a.xl.clone().max(b.xl.clone());
            let hi = a.xr.clone().min(b.xr.clone());
            if lo > hi {
                continue;
            }
            let (sa, sb) = (a.slope(), b.slope());
            if sa == sb {
                continue;
            }
            let ca = &a.tl - &(&sa * &a.xl);
            let cb = &b.tl - &(&sb * &b.xl);
            let x = (cb - ca) / (sa - &sb);
            if x >= lo && x <= hi {
                cuts.insert(x);
            }
        }
    }
    for e in &edges {
        let slope = e.slope();
        let c = &e.tl - &(&slope * &e.xl);
        for line in [&t_lo, &t_hi] {
            let x = (line - &c) / &slope;
            if x >= e.xl && x <= e.xr {
                cuts.insert(x);
            }
        }
    }
    cuts.retain(|x| !x.is_negative() && x <= &length);
    let cuts: Vec<Rational> = cuts.into_iter().collect();

    let two = Rational::from_integer(2);
    let lo2 = &two * &t_lo;
    let hi2 = &two * &t_hi;
    let mut open: Vec<OpenRegion> = Vec::new();
    let mut done: Vec<GapRegion> = Vec::new();
    for slab in cuts.windows(2) {
        let (a, b) = (&slab[0], &slab[1]);
        // active band lower edges at the slab boundaries, deduplicated
        let mut lows: Vec<(Rational, Rational)> = bands
            .iter()
            .filter(|band| &band.xl <= a && &band.xr >= b)
            .map(|band| (band.lower_at(a), band.lower_at(b)))
            .collect();
        lows.sort_by(|l, r| {
            (&l.0 + &l.1)
                .cmp(&(&r.0 + &r.1))
                .then_with(|| l.0.cmp(&r.0))
        });
        lows.dedup();
        // clip each band to the window and merge into covered intervals;
        // comparisons at the slab midpoint are valid across the whole slab
        // because no two edges cross strictly inside it
        let mut covered: Vec<(Rational, Rational, Rational, Rational)> = Vec::new();
        for (lo_a, lo_b) in lows {
            let mut lo = (lo_a.clone(), lo_b.clone());
            let mut hi = (&lo_a + candidate, &lo_b + candidate);
            if &hi.0 + &hi.1 <= lo2 || &lo.0 + &lo.1 >= hi2 {
                continue;
            }
            if &lo.0 + &lo.1 < lo2 {
                lo = (t_lo.clone(), t_lo.clone());
            }
            if &hi.0 + &hi.1 > hi2 {
                hi = (t_hi.clone(), t_hi.clone());
            }
            match covered.last_mut() {
                Some(c) if &lo.0 + &lo.1 <= &c.2 + &c.3 => {
                    if &hi.0 + &hi.1 > &c.2 + &c.3 {
                        c.2 = hi.0;
                        c.3 = hi.1;
                    }
                }
                _ => covered.push((lo.0, lo.1, hi.0, hi.1)),
            }
        }
        let mut cells: Vec<Cell> = Vec::new();
        let mut prev = (t_lo.clone(), t_lo.clone());
        for c in &covered {
            if &c.0 + &c.1 > &prev.0 + &prev.1 {
                cells.push(Cell {
                    bot_a: prev.0.clone(),
                    bot_b: prev.1.clone(),
                    top_a: c.0.clone(),
                    top_b: c.1.clone(),
                });
            }
            prev = (c.2.clone(), c.3.clone());
        }
        if &prev.0 + &prev.1 < hi2 {
            cells.push(Cell {
                bot_a: prev.0,
                bot_b: prev.1,
                top_a: t_hi.clone(),
                top_b: t_hi.clone(),
            });
        }

        let mut still_open: Vec<OpenRegion> = Vec::new();
        for cell in cells {
            let bot_l = (a.clone(), cell.bot_a);
            let bot_r = (b.clone(), cell.bot_b);
            let top_l = (a.clone(), cell.top_a);
            let top_r = (b.clone(), cell.top_b);
            let mut extended = false;
            let mut idx = 0;
            while idx < open.len() {
                let r = &open[idx];
                if r.x_end == *a
                    && r.bot_end == bot_l
                    && r.top_end == top_l
                    && collinear(&r.bot_start, &r.bot_end, &bot_r)
                    && collinear(&r.top_start, &r.top_end, &top_r)
                {
                    let mut r = open.swap_remove(idx);
                    r.x_end = b.clone();
                    r.bot_end = bot_r.clone();
                    r.top_end = top_r.clone();
                    still_open.push(r);
                    extended = true;
                    break;
                }
                idx += 1;
            }
            if !extended {
                still_open.push(OpenRegion {
                    x_end: b.clone(),
                    bot_start: bot_l.clone(),
                    bot_end: bot_r,
                    top_start: top_l,
                    top_end: top_r,
                });
            }
        }
        for r in open.drain(..) {
            done.extend(close_region(r));
        }
        open = still_open;
    }
    for r in open.drain(..) {
        done.extend(close_region(r));
    }
    done.sort_by(|l, r| l.vertices.cmp(&r.vertices));
    Ok(done)
}

#[cfg(test)]
mod tests {
    use super::super::{exact_idle, IdleTime};
    use super::*;
    use crate::model::{Agent, Direction, Fence, Trajectory};

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn pt(x: &str, t: &str) -> (Rational, Rational) {
        (r(x), r(t))
    }

    fn bp(pairs: &[(&str, &str)]) -> Trajectory {
        Trajectory::new(pairs.iter().map(|(t, x)| (r(t), r(x))).collect())
    }

    fn total_area(regions: &[GapRegion]) -> Rational {
        regions.iter().map(|g| g.area.clone()).sum()
    }

    fn single_bouncer() -> Schedule {
        Schedule {
            fence: Fence::segment(r("1")),
            time_model: TimeModel::Periodic(r("2")),
            direction: Direction::None,
            agents: vec![Agent {
                id: 1,
                max_speed: r("1"),
                trajectory: bp(&[("0", "0"), ("1", "1"), ("2", "0")]),
            }],
        }
    }

    /// Three agents sweeping a segment of length 25/3 at speed 5 in a
    /// staggered zigzag; its uncovered regions at candidate 1 are two
    /// wedges, one per fence end per period.
    fn zigzag() -> Schedule {
        let t = |pairs: &[(&str, &str)]| bp(pairs);
        Schedule {
            fence: Fence::segment(r("25/3")),
            time_model: TimeModel::Periodic(r("10/3")),
            direction: Direction::None,
            agents: vec![
                Agent {
                    id: 1,
                    max_speed: r("5"),
                    trajectory: t(&[("0", "0"), ("5/3", "25/3"), ("10/3", "0")]),
                },
                Agent {
                    id: 2,
                    max_speed: r("5"),
                    trajectory: t(&[("0", "5"), ("1", "0"), ("8/3", "25/3"), ("10/3", "5")]),
                },
                Agent {
                    id: 3,
                    max_speed: r("5"),
                    trajectory: t(&[("0", "20/3"), ("1/3", "25/3"), ("2", "0"), ("10/3", "20/3")]),
                },
            ],
        }
    }

    #[test]
    fn full_coverage_produces_no_regions() {
        let s = Schedule {
            fence: Fence::unit_circle(),
            time_model: TimeModel::Periodic(r("1")),
            direction: Direction::Unidirectional,
            agents: vec![Agent {
                id: 1,
                max_speed: r("1"),
                trajectory: bp(&[("0", "0"), ("1", "1")]),
            }],
        };
        assert_eq!(analyze_gaps(&s, &r("1"), None).unwrap(), vec![]);
        let half = analyze_gaps(&s, &r("1/2"), None).unwrap();
        assert!(!half.is_empty());
        assert_eq!(total_area(&half), r("1/2"));
    }

    #[test]
    fn bouncer_leaves_two_triangles() {
        let s = single_bouncer();
        let regions = analyze_gaps(&s, &r("1"), None).unwrap();
        assert_eq!(regions.len(), 2);
        assert_eq!(
            regions[0].vertices,
            vec![pt("0", "1"), pt("1/2", "3/2"), pt("0", "2")]
        );
        assert_eq!(regions[0].area, r("1/4"));
        assert_eq!(
            regions[1].vertices,
            vec![pt("1/2", "1/2"), pt("1", "0"), pt("1", "1")]
        );
        assert_eq!(regions[1].area, r("1/4"));
        // at the exact idle time the window closes completely
        assert_eq!(analyze_gaps(&s, &r("2"), None).unwrap(), vec![]);
    }

    #[test]
    fn zigzag_idle_time_is_four_thirds_at_the_ends() {
        let report = exact_idle(&zigzag()).unwrap();
        assert_eq!(report.idle, IdleTime::Bounded(r("4/3")));
        let positions: Vec<_> = report
            .witnesses
            .iter()
            .map(|w| w.position.clone())
            .collect();
        assert_eq!(positions, vec![r("0"), r("25/3")]);
    }

    #[test]
    fn zigzag_regions_are_the_two_boundary_wedges() {
        let regions = analyze_gaps(&zigzag(), &r("1"), None).unwrap();
        assert_eq!(regions.len(), 2);
        assert_eq!(
            regions[0].vertices,
            vec![pt("0", "3"), pt("5/6", "19/6"), pt("0", "10/3")]
        );
        assert_eq!(
            regions[1].vertices,
            vec![pt("15/2", "3/2"), pt("25/3", "4/3"), pt("25/3", "5/3")]
        );
        assert_eq!(regions[0].area, r("5/36"));
        assert_eq!(regions[1].area, r("5/36"));
        assert_eq!(analyze_gaps(&zigzag(), &r("4/3"), None).unwrap(), vec![]);
    }

    #[test]
    fn region_area_is_phase_invariant() {
        for phase in ["1/10", "1/2", "7/8", "3"] {
            let regions = analyze_gaps(&zigzag(), &r("1"), Some(&r(phase))).unwrap();
            assert_eq!(total_area(&regions), r("5/18"), "phase {phase}");
        }
    }

    #[test]
    fn rejects_horizon_schedules_and_bad_candidates() {
        let mut s = single_bouncer();
        assert!(matches!(
            analyze_gaps(&s, &r("0"), None),
            Err(VerifyError::NonPositiveCandidate(_))
        ));
        s.time_model = TimeModel::Horizon(r("2"));
        assert!(matches!(
            analyze_gaps(&s, &r("1"), None),
            Err(VerifyError::NotPeriodic)
        ));
    }
}
