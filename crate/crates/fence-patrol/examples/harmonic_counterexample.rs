//! Thirty-two agents with speeds 1, 1/2, ..., 1/32 patrolling the unit
//! circle with idle time strictly below 1, which no proportional split of
//! the fence can match. Prints the exact idle time and cross-checks it with
//! grid sampling.

use fence_patrol::generate::harmonic_thirty_two;
use fence_patrol::verify::{exact_idle, sampled_idle, IdleTime};

fn main() {
    let out = harmonic_thirty_two();
    let schedule = &out.schedule;
    assert!(schedule.validate().pass());

    let report = exact_idle(schedule).unwrap();
    println!("agents: {}", schedule.agents.len());
    println!("idle:   {}", report.idle);
    if let IdleTime::Bounded(idle) = &report.idle {
        println!("        ~{:.6}", idle.approx_f64());
    }
    for w in &report.witnesses {
        let (gs, ge) = w.gap.as_ref().unwrap();
        println!("tight at position {} (gap {} .. {})", w.position, gs, ge);
    }

    for grid in [1024u32, 4096] {
        println!(
            "sampled on {grid} points: {}",
            sampled_idle(schedule, grid).unwrap()
        );
    }
}
