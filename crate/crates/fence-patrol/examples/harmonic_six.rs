//! Six agents with speeds 1, 1/2, ..., 1/6 going one way around the unit
//! circle. Idle time is exactly 1, and the sweep reports the positions
//! where the bound is tight.

use fence_patrol::generate::harmonic_six;
use fence_patrol::verify::exact_idle;

fn main() {
    let out = harmonic_six();
    let schedule = &out.schedule;

    let report = exact_idle(schedule).unwrap();
    println!("idle = {}", report.idle);
    println!(
        "critical positions examined: {}",
        report.critical_position_count
    );
    for w in &report.witnesses {
        match &w.gap {
            Some((from, to)) => println!(
                "  tight at {} (no visit during {} .. {})",
                w.position, from, to
            ),
            None => println!("  tight at {}", w.position),
        }
    }

    for agent in &schedule.agents {
        println!(
            "agent {} (speed {}): {} breakpoints",
            agent.id,
            agent.max_speed,
            agent.trajectory.breakpoints().len()
        );
    }
}
