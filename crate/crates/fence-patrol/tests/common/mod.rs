//! Shared fixtures for the integration tests: seeded random schedules and
//! the three-agent zigzag used in several gap analyses.

use fence_patrol::model::{Agent, Direction, Fence, Schedule, TimeModel, Trajectory};
use fence_patrol::numeric::{rat, Rational};
use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_positive_rational(rng: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> Rational {
    rat(rng.gen_range(1..=max_num), rng.gen_range(1..=max_den))
}

pub fn random_speeds(rng: &mut ChaCha8Rng, max_k: usize) -> Vec<Rational> {
    let k = rng.gen_range(1..=max_k);
    (0..k)
        .map(|_| random_positive_rational(rng, 12, 12))
        .collect()
}

/// Random valid schedule on the unit circle: every agent strictly ascends,
/// so each supremum gap is attained and the sweep's witnesses are exact.
pub fn random_circle_schedule(rng: &mut ChaCha8Rng) -> Schedule {
    const GRID: i64 = 24;
    let period = random_positive_rational(rng, 6, 3);
    let k = rng.gen_range(1..=5);
    let one = Rational::one();
    let agents = (1..=k)
        .map(|id| {
            let laps = rng.gen_range(1..=2) as i64;
            let extra = rng.gen_range(0..=3usize);
            let mut times: Vec<i64> = sample(rng, GRID as usize - 1, extra)
                .iter()
                .map(|v| v as i64 + 1)
                .collect();
            times.sort_unstable();
            let mut climbs: Vec<i64> = sample(rng, (GRID * laps) as usize - 1, extra)
                .iter()
                .map(|v| v as i64 + 1)
                .collect();
            climbs.sort_unstable();

            let start = rat(rng.gen_range(0..GRID), GRID);
            let mut points = vec![(Rational::zero(), start.clone())];
            for (t, c) in times.iter().zip(&climbs) {
                points.push((&period * &rat(*t, GRID), &start + &rat(*c, GRID)));
            }
            points.push((period.clone(), &start + &Rational::from_integer(laps)));

            let top_speed = points
                .windows(2)
                .map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
                .max()
                .unwrap();
            Agent {
                id,
                max_speed: top_speed,
                trajectory: Trajectory::from_unwrapped(&points, &one),
            }
        })
        .collect();
    Schedule {
        fence: Fence::unit_circle(),
        time_model: TimeModel::Periodic(period),
        direction: Direction::Unidirectional,
        agents,
    }
}

/// Three speed-5 zigzag agents on a segment of length 25/3, period 10/3.
/// At candidate idle 1 they leave one uncovered triangle per fence end.
pub fn zigzag_trio() -> Schedule {
    let agent = |id, pts: Vec<(Rational, Rational)>| Agent {
        id,
        max_speed: rat(5, 1),
        trajectory: Trajectory::new(pts),
    };
    Schedule {
        fence: Fence::segment(rat(25, 3)),
        time_model: TimeModel::Periodic(rat(10, 3)),
        direction: Direction::None,
        agents: vec![
            agent(
                1,
                vec![
                    (rat(0, 1), rat(0, 1)),
                    (rat(5, 3), rat(25, 3)),
                    (rat(10, 3), rat(0, 1)),
                ],
            ),
            agent(
                2,
                vec![
                    (rat(0, 1), rat(5, 1)),
                    (rat(1, 1), rat(0, 1)),
                    (rat(8, 3), rat(25, 3)),
                    (rat(10, 3), rat(5, 1)),
                ],
            ),
            agent(
                3,
                vec![
                    (rat(0, 1), rat(20, 3)),
                    (rat(1, 3), rat(25, 3)),
                    (rat(2, 1), rat(0, 1)),
                    (rat(10, 3), rat(20, 3)),
                ],
            ),
        ],
    }
}
