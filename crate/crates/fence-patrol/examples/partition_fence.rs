//! Splits a segment fence among agents of different speeds and confirms the
//! resulting idle time, 2*length / (sum of speeds), with the exact sweep.

use fence_patrol::generate::partition;
use fence_patrol::verify::{exact_idle, volume_lower_bound};

fn main() {
    let length = "1".parse().unwrap();
    let speeds: Vec<_> = ["1", "1/2", "1/3"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();

    let out = partition(&length, &speeds).unwrap();
    for (key, value) in &out.metadata {
        println!("{key} = {value}");
    }

    let report = exact_idle(&out.schedule).unwrap();
    println!("idle      = {}", report.idle);
    println!("predicted = {}", out.predicted_idle.unwrap());
    println!(
        "volume lower bound = {}",
        volume_lower_bound(&length, &speeds)
    );

    // round-trip through the on-disk format
    let json = out.schedule.to_json_string();
    let back = fence_patrol::model::Schedule::from_json_str(&json).unwrap();
    assert_eq!(back.to_json_string(), json);
    print!("{json}");
}
