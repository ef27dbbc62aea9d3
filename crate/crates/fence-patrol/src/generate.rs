//! Schedule constructions.
//!
//! Each generator returns a ready-to-verify [`Schedule`] together with the
//! idle time the construction is designed to achieve, when a closed form
//! exists, and a few key-value notes about how the parameters were used.

use crate::model::{common_period, Agent, Direction, Fence, Schedule, TimeModel, Trajectory};
use crate::numeric::Rational;
use crate::verify::analyze_gaps;

#[derive(Debug, thiserror::Error)]
pub enum GenerateError {
    #[error("BAD_SPEEDS: {0}")]
    BadSpeeds(String),
    #[error("SPEED_ORDER: {0}")]
    SpeedOrder(String),
    #[error("BAD_K: {0}")]
    BadK(String),
    #[error("BAD_RATIO: {0}")]
    BadRatio(String),
    #[error("BAD_TAU: {0}")]
    BadTau(String),
    #[error("BAD_HORIZON: {0}")]
    BadHorizon(String),
    #[error("BAD_LENGTH: {0}")]
    BadLength(String),
    #[error("AGENT_BUDGET: {0}")]
    AgentBudget(String),
}

#[derive(Debug, Clone)]
pub struct GeneratorOutput {
    pub schedule: Schedule,
    /// Exact idle time the construction attains, when known in closed form.
    pub predicted_idle: Option<Rational>,
    pub metadata: Vec<(String, String)>,
}

fn check_speeds(speeds: &[Rational]) -> Result<(), GenerateError> {
    if speeds.is_empty() {
        return Err(GenerateError::BadSpeeds("no speeds given".into()));
    }
    for v in speeds {
        if !v.is_positive() {
            return Err(GenerateError::BadSpeeds(format!(
                "speed {v} is not positive"
            )));
        }
    }
    Ok(())
}

fn meta(key: &str, value: impl ToString) -> (String, String) {
    (key.to_string(), value.to_string())
}

/// Splits a segment fence into one sub-segment per agent, sized
/// proportionally to its speed, with each agent bouncing across its own
/// piece. Every crossing takes `length / total speed`, so all agents turn in
/// lockstep and the idle time is one full round trip, `2*length / total`.
pub fn partition(length: &Rational, speeds: &[Rational]) -> Result<GeneratorOutput, GenerateError> {
    if !length.is_positive() {
        return Err(GenerateError::BadLength(format!("fence length {length}")));
    }
    check_speeds(speeds)?;
    let total: Rational = speeds.iter().sum();
    let half = length / &total;
    let period = &Rational::from_integer(2) * &half;
    let mut agents = Vec::with_capacity(speeds.len());
    let mut cut = Rational::zero();
    let mut cuts = vec![cut.clone()];
    for (i, v) in speeds.iter().enumerate() {
        let next = &cut + &(length * v / &total);
        agents.push(Agent {
            id: i as u32 + 1,
            max_speed: v.clone(),
            trajectory: Trajectory::new(vec![
                (Rational::zero(), cut.clone()),
                (half.clone(), next.clone()),
                (period.clone(), cut.clone()),
            ]),
        });
        cuts.push(next.clone());
        cut = next;
    }
    let schedule = Schedule {
        fence: Fence::segment(length.clone()),
        time_model: TimeModel::Periodic(period.clone()),
        direction: Direction::None,
        agents,
    };
    let cuts_text = cuts
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",");
    Ok(GeneratorOutput {
        schedule,
        predicted_idle: Some(period),
        metadata: vec![meta("segment_cuts", cuts_text)],
    })
}

/// Keeps the prefix of agents that maximises `rank * speed` (speeds sorted
/// non-increasing) and spreads them evenly around the unit circle, all
/// moving one way at the slowest kept speed. Points are then revisited every
/// `1 / (r * v_r)`; the remaining agents cannot improve this and are left
/// out.
pub fn runners(speeds: &[Rational]) -> Result<GeneratorOutput, GenerateError> {
    check_speeds(speeds)?;
    for pair in speeds.windows(2) {
        if pair[1] > pair[0] {
            return Err(GenerateError::SpeedOrder(format!(
                "speeds must be non-increasing, got {} before {}",
                pair[0], pair[1]
            )));
        }
    }
    let mut r = 1usize;
    let mut best = speeds[0].clone();
    for (i, v) in speeds.iter().enumerate() {
        let rate = &Rational::from_integer(i as i64 + 1) * v;
        if rate > best {
            best = rate;
            r = i + 1;
        }
    }
    let pace = &speeds[r - 1];
    let period = pace.recip();
    let idle = best.recip();
    let spacing = Rational::from_integer(r as i64).recip();
    let one = Rational::one();
    let agents = (0..r)
        .map(|j| {
            let start = &Rational::from_integer(j as i64) * &spacing;
            Agent {
                id: j as u32 + 1,
                max_speed: speeds[j].clone(),
                trajectory: Trajectory::from_unwrapped(
                    &[
                        (Rational::zero(), start.clone()),
                        (period.clone(), &start + &one),
                    ],
                    &one,
                ),
            }
        })
        .collect();
    let schedule = Schedule {
        fence: Fence::unit_circle(),
        time_model: TimeModel::Periodic(period),
        direction: Direction::Unidirectional,
        agents,
    };
    Ok(GeneratorOutput {
        schedule,
        predicted_idle: Some(idle),
        metadata: vec![
            meta("selected_runners", r),
            meta("discarded_agents", speeds.len() - r),
            meta("revisit_rate", &best),
        ],
    })
}

/// Idle time of the train construction without materialising it:
/// `2a / (a^2 - b^2 + 2(k-2)ab)`.
pub fn train_predicted_idle(a: &Rational, b: &Rational, k: u32) -> Result<Rational, GenerateError> {
    if k < 3 {
        return Err(GenerateError::BadK(format!(
            "train needs at least 3 agents, got {k}"
        )));
    }
    if !b.is_positive() || a <= b {
        return Err(GenerateError::BadRatio(format!(
            "train needs speeds a > b > 0, got a={a} b={b}"
        )));
    }
    let two = Rational::from_integer(2);
    let d = a * a - b * b + &two * &Rational::from_integer(k as i64 - 2) * a * b;
    Ok(&two * a / &d)
}

/// One fast shuttle (speed `a`) plus a slow convoy of `k-1` agents (speed
/// `b`) on the unit circle. The convoy rides one way at spacing
/// `x = 2ab / D` with `D = a^2 - b^2 + 2(k-2)ab`; the shuttle oscillates
/// across the uncovered arc between the convoy's head and tail, handing off
/// at both ends. Every point is then revisited each `x / b = 2a / D`.
pub fn train(a: &Rational, b: &Rational, k: u32) -> Result<GeneratorOutput, GenerateError> {
    let idle = train_predicted_idle(a, b, k)?;
    let two = Rational::from_integer(2);
    let d = a * a - b * b + &two * &Rational::from_integer(k as i64 - 2) * a * b;
    let spacing = &two * a * b / &d;
    let arc = (a * a - b * b) / &d;
    let lap = b.recip();
    let cycle = &spacing / b;
    let period = common_period(&[lap, cycle.clone()]).expect("positive periods");
    let cycles = &period / &cycle;
    let laps = &period * b;
    let cycle_count = i64::try_from(cycles.numer())
        .ok()
        .filter(|_| cycles.is_integer());
    let lap_count = i64::try_from(laps.numer())
        .ok()
        .filter(|_| laps.is_integer());
    let (cycle_count, lap_count) = match (cycle_count, lap_count) {
        (Some(c), Some(l)) if c <= 50_000 && l <= 50_000 => (c, l),
        _ => {
            return Err(GenerateError::AgentBudget(format!(
                "train with a={a} b={b} k={k} needs {cycles} shuttle cycles per period; \
                 use the predicted idle time instead"
            )))
        }
    };
    let one = Rational::one();
    // shuttle: from the convoy head, run ahead at speed a across the arc to
    // meet the tail one lap up, then run back to the new head
    let head0 = &Rational::from_integer(k as i64 - 2) * &spacing;
    let out_time = &arc / &(a - b);
    let mut pts: Vec<(Rational, Rational)> = Vec::with_capacity(2 * cycle_count as usize + 1);
    pts.push((Rational::zero(), head0.clone()));
    let mut t = Rational::zero();
    let mut head = head0;
    for _ in 0..cycle_count {
        pts.push((&t + &out_time, &head + &(a * &out_time)));
        t = &t + &cycle;
        head = &head + &spacing;
        pts.push((t.clone(), head.clone()));
    }
    let mut agents = vec![Agent {
        id: 1,
        max_speed: a.clone(),
        trajectory: Trajectory::from_unwrapped(&pts, &one),
    }];
    for j in 2..=k {
        let start = &Rational::from_integer((k - j) as i64) * &spacing;
        agents.push(Agent {
            id: j,
            max_speed: b.clone(),
            trajectory: Trajectory::from_unwrapped(
                &[
                    (Rational::zero(), start.clone()),
                    (period.clone(), &start + &laps),
                ],
                &one,
            ),
        });
    }
    let schedule = Schedule {
        fence: Fence::unit_circle(),
        time_model: TimeModel::Periodic(period),
        direction: Direction::None,
        agents,
    };
    Ok(GeneratorOutput {
        schedule,
        predicted_idle: Some(idle),
        metadata: vec![
            meta("convoy_spacing", &spacing),
            meta("uncovered_arc", &arc),
            meta("shuttle_cycles", cycle_count),
            meta("convoy_laps", lap_count),
        ],
    })
}

fn tile(traj: &Trajectory, span: &Rational, reps: u32) -> Trajectory {
    let mut pts: Vec<(Rational, Rational)> = Vec::new();
    for rep in 0..reps {
        let shift = &Rational::from_integer(rep as i64) * span;
        for (t, x) in traj.breakpoints() {
            let p = (t + &shift, x.clone());
            if pts.last() == Some(&p) {
                continue;
            }
            pts.push(p);
        }
    }
    Trajectory::new(pts)
}

fn rat(n: i64, d: i64) -> Rational {
    crate::numeric::rat(n, d)
}

fn harmonic_six_trajectories() -> Vec<Trajectory> {
    let one = Rational::one();
    let line = |pts: &[(Rational, Rational)]| Trajectory::from_unwrapped(pts, &one);
    vec![
        line(&[(rat(0, 1), rat(0, 1)), (rat(8, 1), rat(8, 1))]),
        line(&[(rat(0, 1), rat(0, 1)), (rat(8, 1), rat(4, 1))]),
        Trajectory::new(vec![
            (rat(0, 1), rat(2, 3)),
            (rat(1, 1), rat(1, 1)),
            (rat(1, 1), rat(0, 1)),
            (rat(5, 2), rat(1, 2)),
            (rat(7, 2), rat(1, 2)),
            (rat(5, 1), rat(1, 1)),
            (rat(5, 1), rat(0, 1)),
            (rat(13, 2), rat(1, 2)),
            (rat(15, 2), rat(1, 2)),
            (rat(8, 1), rat(2, 3)),
        ]),
        line(&[(rat(0, 1), rat(1, 4)), (rat(8, 1), rat(9, 4))]),
        line(&[
            (rat(0, 1), rat(0, 1)),
            (rat(2, 1), rat(0, 1)),
            (rat(9, 2), rat(1, 2)),
            (rat(11, 2), rat(1, 2)),
            (rat(8, 1), rat(1, 1)),
        ]),
        line(&[
            (rat(0, 1), rat(5, 12)),
            (rat(1, 2), rat(1, 2)),
            (rat(3, 2), rat(1, 2)),
            (rat(9, 2), rat(1, 1)),
            (rat(11, 2), rat(1, 1)),
            (rat(8, 1), rat(17, 12)),
        ]),
    ]
}

/// Six agents with speeds `1, 1/2, ..., 1/6` on the unit circle, all moving
/// one way over a period of 8. The slower agents wait and dash so that every
/// point is revisited within exactly 1; positions 0 and 1/2 attain that
/// bound.
pub fn harmonic_six() -> GeneratorOutput {
    let agents = harmonic_six_trajectories()
        .into_iter()
        .enumerate()
        .map(|(i, trajectory)| Agent {
            id: i as u32 + 1,
            max_speed: rat(1, i as i64 + 1),
            trajectory,
        })
        .collect();
    let schedule = Schedule {
        fence: Fence::unit_circle(),
        time_model: TimeModel::Periodic(rat(8, 1)),
        direction: Direction::Unidirectional,
        agents,
    };
    GeneratorOutput {
        schedule,
        predicted_idle: Some(Rational::one()),
        metadata: vec![meta("tight_positions", "0,1/2")],
    }
}

/// Thirty-two agents with speeds `1, 1/2, ..., 1/32` on the unit circle,
/// moving one way, beating idle time 1. Agents 1..6 repeat the six-agent
/// schedule over four of its periods; each remaining agent, alone or sharing
/// a loop with 1 or 3 partners, slips one extra visit into the middle of
/// every length-1 critical gap the base schedule leaves open.
pub fn harmonic_thirty_two() -> GeneratorOutput {
    let one = Rational::one();
    let period = rat(32, 1);
    let mut agents: Vec<Agent> = harmonic_six_trajectories()
        .into_iter()
        .enumerate()
        .map(|(i, traj)| Agent {
            id: i as u32 + 1,
            max_speed: rat(1, i as i64 + 1),
            trajectory: tile(&traj, &rat(8, 1), 4),
        })
        .collect();
    // a loop of g sharers moves at speed 1/(8g); member m trails the phase
    // anchor by 8m so the group jointly revisits its gap once per period 8
    let mut add_loop = |ids: &[u32], phase: Rational| {
        let g = ids.len() as i64;
        let speed_den = rat(8 * g, 1);
        let laps = rat(4, g);
        for (m, id) in ids.iter().enumerate() {
            let offset = &phase + &rat(8 * m as i64, 1);
            let start = (-&offset / &speed_den).rem_euclid(&one);
            agents.push(Agent {
                id: *id,
                max_speed: rat(1, *id as i64),
                trajectory: Trajectory::from_unwrapped(
                    &[
                        (Rational::zero(), start.clone()),
                        (period.clone(), &start + &laps),
                    ],
                    &one,
                ),
            });
        }
    };
    add_loop(&[7], rat(1, 3));
    add_loop(&[8], rat(7, 3));
    add_loop(&[9, 10], rat(3, 2));
    add_loop(&[11, 12], rat(7, 2));
    add_loop(&[13, 14], rat(9, 2));
    add_loop(&[15, 16], rat(11, 2));
    add_loop(&[17, 18, 19, 20], rat(13, 2));
    add_loop(&[21, 22, 23, 24], rat(15, 2));
    add_loop(&[25, 26, 27, 28], rat(18, 1));
    add_loop(&[29, 30, 31, 32], rat(24, 1));
    let schedule = Schedule {
        fence: Fence::unit_circle(),
        time_model: TimeModel::Periodic(period),
        direction: Direction::Unidirectional,
        agents,
    };
    GeneratorOutput {
        schedule,
        predicted_idle: None,
        metadata: vec![meta("base_agents", 6), meta("base_period", 8)],
    }
}

/// Finite-horizon patrol of the unit circle aiming for idle time at most
/// `tau`. One unit-speed agent loops for the whole horizon; in each window
/// of length `tau/2`, a fresh batch of slower agents starts just ahead of
/// the loop agent and sweeps on, consecutive starts abutting, until the
/// batch's reach closes the circle (`1 + sum 1/i >= 2/tau`). The horizon is
/// padded up to a whole number of `tau` windows.
pub fn greedy_finite(tau: &Rational, horizon: &Rational) -> Result<GeneratorOutput, GenerateError> {
    if !tau.is_positive() {
        return Err(GenerateError::BadTau(format!("window size {tau}")));
    }
    if !horizon.is_positive() {
        return Err(GenerateError::BadHorizon(format!("horizon {horizon}")));
    }
    let windows_per_tau = (horizon / tau).ceil();
    let m = i64::try_from(&windows_per_tau).map_err(|_| {
        GenerateError::AgentBudget(format!("horizon {horizon} needs too many windows"))
    })?;
    let padded = &Rational::from_bigint(windows_per_tau) * tau;
    let two = Rational::from_integer(2);
    let deficit = &two / tau - Rational::one();

    // cheap overcount first, so absurd parameters fail fast
    let budget = 20_000i64;
    let deficit_f = deficit.approx_f64();
    let mut est: f64 = 2.0;
    for _ in 0..2 * m {
        let mut acc = 0.0;
        while acc < deficit_f {
            acc += 1.0 / est;
            est += 1.0;
            if est > budget as f64 {
                return Err(GenerateError::AgentBudget(format!(
                    "tau {tau} over horizon {horizon} needs more than {budget} agents"
                )));
            }
        }
    }

    let one = Rational::one();
    let half_window = tau / &two;
    let mut agents = vec![Agent {
        id: 1,
        max_speed: one.clone(),
        trajectory: Trajectory::from_unwrapped(
            &[
                (Rational::zero(), Rational::zero()),
                (padded.clone(), padded.clone()),
            ],
            &one,
        ),
    }];
    let mut next_id: i64 = 2;
    let mut batch_ends = Vec::new();
    for w in 0..2 * m {
        let window_start = &Rational::from_integer(w) * &half_window;
        let mut start = (&window_start + &half_window).rem_euclid(&one);
        let mut acc = Rational::zero();
        while acc < deficit {
            let i = next_id;
            next_id += 1;
            let speed = Rational::from_integer(i).recip();
            acc = &acc + &speed;
            let reach = &half_window * &speed;
            let mut pts = Vec::with_capacity(4);
            if window_start.is_positive() {
                pts.push((Rational::zero(), start.clone()));
            }
            pts.push((window_start.clone(), start.clone()));
            let move_end = &window_start + &half_window;
            let arrive = &start + &reach;
            pts.push((move_end.clone(), arrive.clone()));
            if move_end < padded {
                pts.push((padded.clone(), arrive.clone()));
            }
            agents.push(Agent {
                id: i as u32,
                max_speed: speed,
                trajectory: Trajectory::from_unwrapped(&pts, &one),
            });
            start = arrive.rem_euclid(&one);
        }
        batch_ends.push((next_id - 1).to_string());
    }
    let schedule = Schedule {
        fence: Fence::unit_circle(),
        time_model: TimeModel::Horizon(padded.clone()),
        direction: Direction::Unidirectional,
        agents,
    };
    Ok(GeneratorOutput {
        schedule,
        predicted_idle: None,
        metadata: vec![
            meta("idle_bound", tau),
            meta("padded_horizon", &padded),
            meta("windows", 2 * m),
            meta("batch_last_agents", batch_ends.join(",")),
        ],
    })
}

fn zigzag_agents(offset: &Rational, first_id: u32) -> Vec<Agent> {
    let five = rat(5, 1);
    let block = rat(25, 3);
    let mk = |id: u32, pts: &[(Rational, Rational)]| Agent {
        id,
        max_speed: five.clone(),
        trajectory: Trajectory::new(pts.iter().map(|(t, x)| (t.clone(), offset + x)).collect()),
    };
    vec![
        mk(
            first_id,
            &[
                (rat(0, 1), rat(0, 1)),
                (rat(5, 3), block.clone()),
                (rat(10, 3), rat(0, 1)),
            ],
        ),
        mk(
            first_id + 1,
            &[
                (rat(0, 1), rat(5, 1)),
                (rat(1, 1), rat(0, 1)),
                (rat(8, 3), block.clone()),
                (rat(10, 3), rat(5, 1)),
            ],
        ),
        mk(
            first_id + 2,
            &[
                (rat(0, 1), rat(20, 3)),
                (rat(1, 3), block),
                (rat(2, 1), rat(0, 1)),
                (rat(10, 3), rat(20, 3)),
            ],
        ),
    ]
}

/// Chains `x` copies of a three-agent speed-5 zigzag over segments of length
/// 25/3, then adds `x+1` unit-speed agents at the copy boundaries. The
/// zigzags alone leave one uncovered wedge per boundary side per period; the
/// unit agents are placed from the analysed wedge geometry so every wedge is
/// re-covered with nothing to spare, making the idle time exactly 1 with
/// total speed `16x + 1`.
pub fn blocks(x: u32) -> Result<GeneratorOutput, GenerateError> {
    if x < 2 {
        return Err(GenerateError::BadK(format!(
            "block construction needs x >= 2, got {x}"
        )));
    }
    let block = rat(25, 3);
    let period = rat(10, 3);
    let one = Rational::one();

    // analyse a single zigzag block to anchor the boundary agents
    let probe = Schedule {
        fence: Fence::segment(block.clone()),
        time_model: TimeModel::Periodic(period.clone()),
        direction: Direction::None,
        agents: zigzag_agents(&Rational::zero(), 1),
    };
    let wedges = analyze_gaps(&probe, &one, None).expect("zigzag block analysis");
    assert_eq!(wedges.len(), 2, "one uncovered wedge per fence end");
    let apex_of = |region: &crate::verify::GapRegion, base_x: &Rational| {
        let mut base_times: Vec<Rational> = region
            .vertices
            .iter()
            .filter(|(vx, _)| vx == base_x)
            .map(|(_, vt)| vt.clone())
            .collect();
        base_times.sort();
        assert_eq!(base_times.len(), 2, "wedge base on the fence end");
        let apex = region
            .vertices
            .iter()
            .find(|(vx, _)| vx != base_x)
            .cloned()
            .expect("wedge apex");
        (base_times[0].clone(), base_times[1].clone(), apex)
    };
    let (lo_start, lo_end, lo_apex) = apex_of(&wedges[0], &Rational::zero());
    let (hi_start, hi_end, hi_apex) = apex_of(&wedges[1], &block);
    let lo_depth = lo_apex.0.clone();
    let hi_depth = &block - &hi_apex.0;

    // the unit agent in front of a wedge waits out the base gap minus 1,
    // touches the apex, and is back in time to close the gap at exactly 1
    let lo_rise = &lo_apex.1 - &lo_depth;
    assert_eq!(&lo_rise + &one, lo_end);
    assert_eq!(&lo_end - &lo_start, &hi_end - &hi_start);
    let lo_home = &lo_depth - &(&period - &lo_apex.1);
    let hi_wait = &hi_end - &one;
    assert_eq!(&hi_wait + &hi_depth, hi_apex.1);
    let hi_back = &hi_start + &one;
    let shared_home = &hi_apex.1 - &hi_depth;
    assert_eq!(&lo_apex.1 - &hi_apex.1, &lo_depth + &hi_depth);

    let mut agents = Vec::with_capacity(4 * x as usize + 1);
    for b in 0..x {
        let offset = &Rational::from_integer(b as i64) * &block;
        agents.extend(zigzag_agents(&offset, 3 * b + 1));
    }
    let unit = |id: u32, pts: Vec<(Rational, Rational)>| Agent {
        id,
        max_speed: one.clone(),
        trajectory: Trajectory::new(pts),
    };
    let zero = Rational::zero();
    agents.push(unit(
        3 * x + 1,
        vec![
            (zero.clone(), lo_home.clone()),
            (lo_home.clone(), zero.clone()),
            (lo_rise.clone(), zero.clone()),
            (lo_apex.1.clone(), lo_depth.clone()),
            (period.clone(), lo_home.clone()),
        ],
    ));
    for b in 1..x {
        let bnd = &Rational::from_integer(b as i64) * &block;
        agents.push(unit(
            3 * x + 1 + b,
            vec![
                (zero.clone(), &bnd + &shared_home),
                (hi_apex.1.clone(), &bnd - &hi_depth),
                (lo_apex.1.clone(), &bnd + &lo_depth),
                (period.clone(), &bnd + &shared_home),
            ],
        ));
    }
    let far = &Rational::from_integer(x as i64) * &block;
    agents.push(unit(
        4 * x + 1,
        vec![
            (zero.clone(), far.clone()),
            (hi_wait.clone(), far.clone()),
            (hi_apex.1.clone(), &far - &hi_depth),
            (hi_back.clone(), far.clone()),
            (period.clone(), far.clone()),
        ],
    ));

    let schedule = Schedule {
        fence: Fence::segment(far),
        time_model: TimeModel::Periodic(period),
        direction: Direction::None,
        agents,
    };
    Ok(GeneratorOutput {
        schedule,
        predicted_idle: Some(one),
        metadata: vec![meta("blocks", x), meta("wedge_area", &wedges[0].area)],
    })
}
