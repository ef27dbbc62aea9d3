//! A slow convoy plus one fast shuttle on the circle. With the shuttle no
//! faster than k times the convoy speed, ratios beyond 2 + sqrt(5) beat
//! both even spacing and proportional splitting. The b = 1/3 row is below
//! the ratio threshold and the b = 1/8 row breaks the proviso; both lose.

use fence_patrol::generate::{train, train_predicted_idle};
use fence_patrol::numeric::{rat, Rational};
use fence_patrol::verify::exact_idle;

fn main() {
    let a = rat(1, 1);
    let k = 5;

    for b in [rat(1, 3), rat(1, 5), rat(1, 8)] {
        let out = train(&a, &b, k).unwrap();
        let report = exact_idle(&out.schedule).unwrap();
        assert_eq!(report.idle.bounded(), out.predicted_idle.as_ref());

        // best single-rate alternative with the same speed multiset
        let mut speeds: Vec<Rational> = out
            .schedule
            .agents
            .iter()
            .map(|ag| ag.max_speed.clone())
            .collect();
        speeds.sort_by(|p, q| q.cmp(p));
        let runner_idle = speeds
            .iter()
            .enumerate()
            .map(|(i, v)| &Rational::from_integer(i as i64 + 1) * v)
            .max()
            .unwrap()
            .recip();
        let verdict = if report.idle.bounded().unwrap() < &runner_idle {
            "wins"
        } else {
            "loses"
        };
        println!(
            "b = {b}: convoy idle {}, runner idle {runner_idle}, convoy {verdict}",
            report.idle
        );
    }

    // far past the crossover the idle approaches 2/3
    let big = train_predicted_idle(&rat(1, 1), &rat(1, 1000), 1000).unwrap();
    println!(
        "k = 1000, b = 1/1000: predicted idle {big} (~{:.6})",
        big.approx_f64()
    );
}
