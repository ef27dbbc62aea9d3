//! Even spacing on a circle: only the prefix of agents that maximises
//! rank * speed is worth running; everyone slower sits out.

use fence_patrol::generate::runners;
use fence_patrol::verify::{compare, exact_idle};

fn main() {
    for speeds in [
        vec!["3", "2", "2"],
        vec!["1", "3/4", "3/5"],
        vec!["1", "1/2", "1/3"],
    ] {
        let parsed: Vec<_> = speeds.iter().map(|s| s.parse().unwrap()).collect();
        let out = runners(&parsed).unwrap();
        let report = exact_idle(&out.schedule).unwrap();
        let ratios = compare(&out.schedule).unwrap();
        println!(
            "speeds {:?}: kept {} of {}, idle {}, vs baseline {}",
            speeds,
            out.schedule.agents.len(),
            speeds.len(),
            report.idle,
            ratios.rho_vs_runners.unwrap(),
        );
        assert_eq!(
            Some(report.idle.bounded().unwrap().clone()),
            out.predicted_idle
        );
    }
}
