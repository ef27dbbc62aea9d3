//! Renders position-time diagrams for a few schedules. Pass a directory to
//! write into; defaults to the system temp dir.

use fence_patrol::generate::{blocks, harmonic_six, train};
use fence_patrol::numeric::rat;
use fence_patrol::plot::{render_svg, PlotOptions};
use std::path::PathBuf;

fn main() {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);

    let jobs: Vec<(&str, _, PlotOptions)> = vec![
        (
            "harmonic_six.svg",
            harmonic_six().schedule,
            PlotOptions {
                periods: 1,
                idle: None,
                width: Some(400),
            },
        ),
        (
            "train_k5.svg",
            train(&rat(1, 1), &rat(1, 5), 5).unwrap().schedule,
            PlotOptions {
                periods: 1,
                idle: Some(rat(25, 27)),
                width: Some(400),
            },
        ),
        (
            "blocks_x2.svg",
            blocks(2).unwrap().schedule,
            PlotOptions {
                periods: 2,
                idle: Some(rat(1, 1)),
                width: Some(800),
            },
        ),
    ];

    for (name, schedule, opts) in jobs {
        let svg = render_svg(&schedule, &opts).unwrap();
        let path = dir.join(name);
        std::fs::write(&path, &svg).unwrap();
        println!("wrote {} ({} bytes)", path.display(), svg.len());
    }
}
