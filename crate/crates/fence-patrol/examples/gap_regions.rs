//! Where does a candidate idle time fail? Three speed-5 zigzag agents on a
//! segment of length 25/3 leave two uncovered triangles per period at
//! candidate 1, one against each fence end. Their shape dictates what a
//! patching agent must manage.

use fence_patrol::model::{Agent, Direction, Fence, Schedule, TimeModel, Trajectory};
use fence_patrol::numeric::{rat, Rational};
use fence_patrol::verify::analyze_gaps;

fn zigzag_trio() -> Schedule {
    let agent = |id, pts: &[(Rational, Rational)]| Agent {
        id,
        max_speed: rat(5, 1),
        trajectory: Trajectory::new(pts.to_vec()),
    };
    Schedule {
        fence: Fence::segment(rat(25, 3)),
        time_model: TimeModel::Periodic(rat(10, 3)),
        direction: Direction::None,
        agents: vec![
            agent(
                1,
                &[
                    (rat(0, 1), rat(0, 1)),
                    (rat(5, 3), rat(25, 3)),
                    (rat(10, 3), rat(0, 1)),
                ],
            ),
            agent(
                2,
                &[
                    (rat(0, 1), rat(5, 1)),
                    (rat(1, 1), rat(0, 1)),
                    (rat(8, 3), rat(25, 3)),
                    (rat(10, 3), rat(5, 1)),
                ],
            ),
            agent(
                3,
                &[
                    (rat(0, 1), rat(20, 3)),
                    (rat(1, 3), rat(25, 3)),
                    (rat(2, 1), rat(0, 1)),
                    (rat(10, 3), rat(20, 3)),
                ],
            ),
        ],
    }
}

fn main() {
    let schedule = zigzag_trio();

    for candidate in [rat(1, 1), rat(7, 6), rat(4, 3)] {
        let regions = analyze_gaps(&schedule, &candidate, None).unwrap();
        let total: Rational = regions.iter().map(|r| r.area.clone()).sum();
        println!(
            "candidate {candidate}: {} uncovered regions, total area {total}",
            regions.len()
        );
        for region in &regions {
            let pts = region
                .vertices
                .iter()
                .map(|(x, t)| format!("({x}, {t})"))
                .collect::<Vec<_>>()
                .join(" ");
            println!("  area {}: {pts}", region.area);
        }
    }
    // at the true idle time, 4/3, nothing is left uncovered
}
