//! Property tests: exact arithmetic invariants, wrap normalization, file
//! format identity, and soundness of the sampling oracle.

mod common;

use common::{random_circle_schedule, random_speeds, zigzag_trio};
use fence_patrol::generate::partition;
use fence_patrol::model::{Agent, Direction, Fence, Schedule, TimeModel, Trajectory};
use fence_patrol::numeric::{rat, Rational};
use fence_patrol::verify::{analyze_gaps, exact_idle, sampled_idle};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #[test]
    fn parse_render_round_trip(n in -10_000i64..10_000, d in 1i64..=400) {
        let r = rat(n, d);
        let text = r.to_string();
        prop_assert_eq!(text.parse::<Rational>().unwrap(), r.clone());
        prop_assert_eq!(text.contains('/'), !r.is_integer());
    }

    #[test]
    fn lcm_is_a_common_multiple(p1 in 1i64..=60, q1 in 1i64..=12, p2 in 1i64..=60, q2 in 1i64..=12) {
        let a = rat(p1, q1);
        let b = rat(p2, q2);
        let l = a.lcm(&b).unwrap();
        prop_assert!(l.is_positive());
        prop_assert!((&l / &a).is_integer());
        prop_assert!((&l / &b).is_integer());
        prop_assert_eq!(b.lcm(&a).unwrap(), l.clone());
        prop_assert_eq!(a.lcm(&a).unwrap(), a.clone());
        // nothing smaller works: l/2 misses at least one of the two
        let half = &l / &Rational::from_integer(2);
        prop_assert!(!((&half / &a).is_integer() && (&half / &b).is_integer()));
    }

    #[test]
    fn wrap_normalization_preserves_positions(
        start_num in -40i64..40,
        deltas in prop::collection::vec((1i64..=5, -12i64..=12), 1..=5),
        len_num in 1i64..=4,
    ) {
        let length = rat(len_num, 1);
        let den = 6;
        let mut profile = vec![(Rational::zero(), rat(start_num, den))];
        for (dt, dx) in &deltas {
            let last = profile.last().unwrap();
            profile.push((&last.0 + &rat(*dt, den), &last.1 + &rat(*dx, den)));
        }
        let wrapped = Trajectory::from_unwrapped(&profile, &length);
        let end = profile.last().unwrap().0.clone();
        let schedule = Schedule {
            fence: Fence::circle(length.clone()),
            time_model: TimeModel::Horizon(end),
            direction: Direction::None,
            agents: vec![Agent { id: 1, max_speed: rat(1000, 1), trajectory: wrapped }],
        };
        for w in profile.windows(2) {
            let mid = (&w[0].0 + &w[1].0) / &Rational::from_integer(2);
            let expect =
                (&w[0].1 + &(&(&w[1].1 - &w[0].1) / &Rational::from_integer(2))).rem_euclid(&length);
            prop_assert_eq!(schedule.position_of(0, &mid).unwrap(), expect);
        }
    }

    #[test]
    fn schedule_file_identity(seed in 0u64..500) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let speeds = random_speeds(&mut rng, 6);
        let out = partition(&rat(1, 1), &speeds).unwrap();
        let json = out.schedule.to_json_string();
        let back = Schedule::from_json_str(&json).unwrap();
        prop_assert_eq!(back.to_json_string(), json);
        prop_assert!(back.validate().pass());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn zigzag_gap_area_ignores_the_phase(num in 0i64..40, den in 1i64..=12) {
        let phase = rat(num, den);
        let regions = analyze_gaps(&zigzag_trio(), &rat(1, 1), Some(&phase)).unwrap();
        let total: Rational = regions.iter().map(|r| r.area.clone()).sum();
        prop_assert_eq!(total, rat(5, 18));
    }
}

#[test]
fn sampling_never_exceeds_the_sweep() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..25 {
        let schedule = random_circle_schedule(&mut rng);
        assert!(schedule.validate().pass(), "{}", schedule.validate());
        let exact = exact_idle(&schedule).unwrap().idle;
        for grid in [7u32, 64, 257] {
            assert!(sampled_idle(&schedule, grid).unwrap() <= exact);
        }
    }
}
