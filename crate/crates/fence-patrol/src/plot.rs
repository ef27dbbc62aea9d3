//! Position-time diagrams as SVG.
//!
//! Position runs rightward, time downward. Each agent is one polyline; a
//! wrap on the circle shows up as a horizontal stroke across the full
//! width. With a candidate idle time, the area each trajectory piece covers
//! within that budget is shaded in the agent's colour and any uncovered
//! region is highlighted. Rationals are converted to decimals only here.

use crate::model::{Schedule, TimeModel, ValidationReport};
use crate::numeric::Rational;
use crate::verify::{analyze_gaps, VerifyError};
use std::fmt::Write as _;

#[derive(Debug, Clone)]
pub struct PlotOptions {
    /// How many periods to draw for a periodic schedule; ignored for a
    /// horizon schedule.
    pub periods: u32,
    /// Candidate idle time to overlay coverage and uncovered regions for.
    pub idle: Option<Rational>,
    /// Drawing width in pixels for the fence; 100 px per length unit if
    /// unset.
    pub width: Option<u32>,
}

impl Default for PlotOptions {
    fn default() -> Self {
        PlotOptions {
            periods: 1,
            idle: None,
            width: None,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PlotError {
    #[error("schedule failed validation:\n{0}")]
    InvalidSchedule(ValidationReport),
    #[error("BAD_PERIODS: need at least 1 period, got {0}")]
    BadPeriods(u32),
    #[error("BAD_IDLE: candidate idle time {0} must be positive")]
    BadIdle(Rational),
    #[error("idle overlay requires a periodic schedule")]
    IdleNeedsPeriodic,
}

const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

const MARGIN_LEFT: f64 = 50.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_BOTTOM: f64 = 20.0;

fn px(v: f64) -> String {
    format!("{v:.2}")
}

pub fn render_svg(schedule: &Schedule, opts: &PlotOptions) -> Result<String, PlotError> {
    let report = schedule.validate();
    if !report.pass() {
        return Err(PlotError::InvalidSchedule(report));
    }
    if opts.periods == 0 {
        return Err(PlotError::BadPeriods(0));
    }
    if let Some(idle) = &opts.idle {
        if !idle.is_positive() {
            return Err(PlotError::BadIdle(idle.clone()));
        }
        if !schedule.time_model.is_periodic() {
            return Err(PlotError::IdleNeedsPeriodic);
        }
    }

    let length = schedule.fence.length.approx_f64();
    let span_exact = match &schedule.time_model {
        TimeModel::Periodic(p) => &Rational::from_integer(opts.periods as i64) * p,
        TimeModel::Horizon(end) => end.clone(),
    };
    let span = span_exact.approx_f64();
    let scale = match opts.width {
        Some(w) => w as f64 / length,
        None => 100.0,
    };
    let x_px = |x: f64| MARGIN_LEFT + x * scale;
    let y_px = |t: f64| MARGIN_TOP + t * scale;
    let canvas_w = x_px(length) + MARGIN_RIGHT;
    let canvas_h = y_px(span) + MARGIN_BOTTOM;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = px(canvas_w),
        h = px(canvas_h),
    );
    let _ = writeln!(
        out,
        r##"<rect width="{}" height="{}" fill="#ffffff"/>"##,
        px(canvas_w),
        px(canvas_h)
    );

    let periods: Vec<Rational> = match &schedule.time_model {
        TimeModel::Periodic(p) => (0..opts.periods)
            .map(|m| &Rational::from_integer(m as i64) * p)
            .collect(),
        TimeModel::Horizon(_) => vec![Rational::zero()],
    };

    if let Some(idle) = &opts.idle {
        let idle_f = idle.approx_f64();
        let _ = writeln!(out, r#"<g class="coverage">"#);
        for (agent_idx, piece, shift) in coverage_pieces(schedule, &span_exact, idle) {
            let color = PALETTE[agent_idx % PALETTE.len()];
            let t0 = (&piece.0 + &shift).approx_f64();
            let t1 = (&piece.2 + &shift).approx_f64();
            let x0 = piece.1.approx_f64();
            let x1 = piece.3.approx_f64();
            let _ = writeln!(
                out,
                r#"<polygon points="{},{} {},{} {},{} {},{}" fill="{}" fill-opacity="0.15"/>"#,
                px(x_px(x0)),
                px(y_px(t0)),
                px(x_px(x1)),
                px(y_px(t1)),
                px(x_px(x1)),
                px(y_px(t1 + idle_f)),
                px(x_px(x0)),
                px(y_px(t0 + idle_f)),
                color,
            );
        }
        let _ = writeln!(out, "</g>");

        let regions = analyze_gaps(schedule, idle, None).map_err(|e| match e {
            VerifyError::NotPeriodic => PlotError::IdleNeedsPeriodic,
            VerifyError::NonPositiveCandidate(c) => PlotError::BadIdle(c),
            VerifyError::InvalidSchedule(r) => PlotError::InvalidSchedule(r),
            _ => PlotError::IdleNeedsPeriodic,
        })?;
        if !regions.is_empty() {
            let _ = writeln!(out, r#"<g class="uncovered">"#);
            for start in &periods {
                let start_f = start.approx_f64();
                for region in &regions {
                    let pts = region
                        .vertices
                        .iter()
                        .map(|(vx, vt)| {
                            format!(
                                "{},{}",
                                px(x_px(vx.approx_f64())),
                                px(y_px(vt.approx_f64() + start_f))
                            )
                        })
                        .collect::<Vec<_>>()
                        .join(" ");
                    let _ = writeln!(
                        out,
                        r##"<polygon points="{pts}" fill="#d62728" fill-opacity="0.5"/>"##
                    );
                }
            }
            let _ = writeln!(out, "</g>");
        }
    }

    // axes drawn after the shaded areas so they stay visible
    let _ = writeln!(
        out,
        r##"<line x1="{l}" y1="{t}" x2="{r}" y2="{t}" stroke="#000000" stroke-width="1"/>"##,
        l = px(x_px(0.0)),
        t = px(y_px(0.0)),
        r = px(x_px(length)),
    );
    let _ = writeln!(
        out,
        r##"<line x1="{l}" y1="{t}" x2="{l}" y2="{b}" stroke="#000000" stroke-width="1"/>"##,
        l = px(x_px(0.0)),
        t = px(y_px(0.0)),
        b = px(y_px(span)),
    );
    let _ = writeln!(
        out,
        r#"<text x="{x}" y="{y}" text-anchor="middle" font-family="sans-serif" font-size="12">position</text>"#,
        x = px(x_px(length / 2.0)),
        y = px(MARGIN_TOP - 26.0),
    );
    let _ = writeln!(
        out,
        r#"<text x="{x}" y="{y}" text-anchor="middle" font-family="sans-serif" font-size="12" transform="rotate(-90 {x} {y})">time</text>"#,
        x = px(MARGIN_LEFT - 36.0),
        y = px(y_px(span / 2.0)),
    );
    for (value, text) in [
        (0.0, "0".to_string()),
        (length, schedule.fence.length.to_string()),
    ] {
        let _ = writeln!(
            out,
            r#"<text x="{x}" y="{y}" text-anchor="middle" font-family="sans-serif" font-size="10">{text}</text>"#,
            x = px(x_px(value)),
            y = px(MARGIN_TOP - 8.0),
        );
    }
    for (value, text) in [(0.0, "0".to_string()), (span, span_exact.to_string())] {
        let _ = writeln!(
            out,
            r#"<text x="{x}" y="{y}" text-anchor="end" font-family="sans-serif" font-size="10">{text}</text>"#,
            x = px(MARGIN_LEFT - 6.0),
            y = px(y_px(value) + 3.0),
        );
    }

    for (i, agent) in schedule.agents.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut pts: Vec<String> = Vec::new();
        let mut last: Option<(f64, f64)> = None;
        for start in &periods {
            let start_f = start.approx_f64();
            for (t, x) in agent.trajectory.breakpoints() {
                let p = (x.approx_f64(), t.approx_f64() + start_f);
                if last == Some(p) {
                    continue;
                }
                pts.push(format!("{},{}", px(x_px(p.0)), px(y_px(p.1))));
                last = Some(p);
            }
        }
        let _ = writeln!(
            out,
            r#"<polyline class="agent-{id}" points="{points}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
            id = agent.id,
            points = pts.join(" "),
        );
    }

    let _ = writeln!(out, "</svg>");
    Ok(out)
}

type CoveragePiece = (Rational, Rational, Rational, Rational);

/// Real pieces of every agent, shifted into every period copy that can still
/// shade part of the drawn window when extended by the idle budget.
fn coverage_pieces(
    schedule: &Schedule,
    span: &Rational,
    idle: &Rational,
) -> Vec<(usize, CoveragePiece, Rational)> {
    let mut out = Vec::new();
    let shifts: Vec<Rational> = match &schedule.time_model {
        TimeModel::Periodic(p) => {
            let mut m = (-(idle / p)).floor();
            let mut acc = Vec::new();
            loop {
                let shift = &Rational::from_bigint(m.clone()) * p;
                if &shift >= span {
                    break;
                }
                acc.push(shift);
                m += 1;
            }
            acc
        }
        TimeModel::Horizon(_) => vec![Rational::zero()],
    };
    for (idx, agent) in schedule.agents.iter().enumerate() {
        for piece in real_pieces_of(agent) {
            for shift in &shifts {
                let lo = &piece.0 + shift;
                let hi = &(&piece.2 + shift) + idle;
                if hi.is_positive() && &lo < span {
                    out.push((idx, piece.clone(), shift.clone()));
                }
            }
        }
    }
    out
}

fn real_pieces_of(agent: &crate::model::Agent) -> Vec<CoveragePiece> {
    let bps = agent.trajectory.breakpoints();
    bps.windows(2)
        .filter(|w| w[0].0 != w[1].0)
        .map(|w| {
            (
                w[0].0.clone(),
                w[0].1.clone(),
                w[1].0.clone(),
                w[1].1.clone(),
            )
        })
        .collect()
}
