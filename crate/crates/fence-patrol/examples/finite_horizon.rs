//! Finite-horizon patrolling on the circle: one unit-speed loop plus
//! batches of slower agents, a fresh batch per half-window, targeting idle
//! time at most tau.

use fence_patrol::generate::greedy_finite;
use fence_patrol::numeric::rat;
use fence_patrol::verify::exact_idle;

fn main() {
    let tau = rat(2, 3);
    let out = greedy_finite(&tau, &rat(2, 3)).unwrap();
    for (key, value) in &out.metadata {
        println!("{key} = {value}");
    }
    println!("agents = {}", out.schedule.agents.len());

    let report = exact_idle(&out.schedule).unwrap();
    println!("idle over horizon = {}", report.idle);
    assert!(report.idle.bounded().unwrap() <= &tau);

    // the batch boundaries follow the harmonic series: each batch i1..i2
    // needs 1 + 1/i1 + ... + 1/i2 to reach 2/tau
    let mut acc = rat(1, 1);
    for i in 2..=11i64 {
        acc = &acc + &rat(1, i);
    }
    println!("1 + 1/2 + ... + 1/11 = {acc} >= 3: {}", acc >= rat(3, 1));
}
