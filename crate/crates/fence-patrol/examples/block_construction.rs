//! Chained zigzag blocks with unit-speed boundary guards. Idle time stays
//! exactly 1 while the speed budget per fence length approaches 48/50 of
//! what proportional splitting would need.

use fence_patrol::generate::blocks;
use fence_patrol::numeric::Rational;
use fence_patrol::verify::{compare, exact_idle, IdleTime};

fn main() {
    for x in [2u32, 3, 5] {
        let out = blocks(x).unwrap();
        let report = exact_idle(&out.schedule).unwrap();
        assert_eq!(report.idle, IdleTime::Bounded(Rational::one()));
        let ratios = compare(&out.schedule).unwrap();
        println!(
            "x = {x}: {} agents, length {}, idle {}, density vs split {}",
            out.schedule.agents.len(),
            out.schedule.fence.length,
            report.idle,
            ratios.rho_vs_partition.unwrap(),
        );
    }
}
