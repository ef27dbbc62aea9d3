//! Command-line front end.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid input, 3 failed
//! `--expect` check. Rationals are passed as `p/q` strings; no floats.

use crate::generate::{
    blocks, greedy_finite, harmonic_six, harmonic_thirty_two, partition, runners, train,
    GeneratorOutput,
};
use crate::model::{FenceKind, Schedule};
use crate::numeric::Rational;
use crate::plot::{render_svg, PlotOptions};
use crate::verify::{analyze_gaps, compare, exact_idle, IdleTime};
use clap::{Parser, Subcommand};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "fence-patrol",
    version,
    about = "Exact idle-time patrolling schedules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a schedule with one of the known constructions
    Generate {
        /// One of: a1, a2, train, harmonic6, harmonic32, greedy, blocks
        #[arg(long)]
        algo: String,
        /// Fence length for a1
        #[arg(long)]
        length: Option<String>,
        /// Comma-separated agent speeds for a1 and a2
        #[arg(long)]
        speeds: Option<String>,
        /// Shuttle speed for train
        #[arg(long)]
        a: Option<String>,
        /// Convoy speed for train
        #[arg(long)]
        b: Option<String>,
        /// Agent count for train
        #[arg(long)]
        k: Option<u32>,
        /// Target idle time for greedy
        #[arg(long)]
        tau: Option<String>,
        /// Horizon for greedy
        #[arg(long)]
        t: Option<String>,
        /// Number of blocks
        #[arg(long)]
        x: Option<u32>,
        /// Schedule file to write
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Validate a schedule file and compute its exact idle time
    Verify {
        input: PathBuf,
        /// Exact idle time to require; mismatch exits 3
        #[arg(long)]
        expect: Option<String>,
    },
    /// Regions of the position-time diagram a candidate idle time misses
    Gaps {
        input: PathBuf,
        /// Candidate idle time
        #[arg(long)]
        idle: String,
        /// File to write the region list to as JSON
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Idle time against the volume bound and baseline constructions
    Compare { input: PathBuf },
    /// Render a position-time diagram as SVG
    Plot {
        input: PathBuf,
        /// Periods to draw (periodic schedules only)
        #[arg(long, default_value_t = 1)]
        periods: u32,
        /// Candidate idle time to overlay coverage for
        #[arg(long)]
        idle: Option<String>,
        /// Drawing width of the fence in pixels
        #[arg(long)]
        width: Option<u32>,
        /// File to write the SVG to; standard output if absent
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

enum CliError {
    Io(String),
    Invalid(String),
    Expectation(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Expectation(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Io(m) | CliError::Invalid(m) | CliError::Expectation(m) => m,
        }
    }
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.message());
            e.code()
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Generate {
            algo,
            length,
            speeds,
            a,
            b,
            k,
            tau,
            t,
            x,
            out,
        } => cmd_generate(&algo, length, speeds, a, b, k, tau, t, x, &out),
        Command::Verify { input, expect } => cmd_verify(&input, expect),
        Command::Gaps { input, idle, out } => cmd_gaps(&input, &idle, out),
        Command::Compare { input } => cmd_compare(&input),
        Command::Plot {
            input,
            periods,
            idle,
            width,
            out,
        } => cmd_plot(&input, periods, idle, width, out),
    }
}

fn parse_rational(text: &str, flag: &str) -> Result<Rational, CliError> {
    text.trim()
        .parse()
        .map_err(|e| CliError::Invalid(format!("{flag}: bad rational '{text}': {e}")))
}

fn parse_speeds(text: &str) -> Result<Vec<Rational>, CliError> {
    text.split(',')
        .map(|part| parse_rational(part, "--speeds"))
        .collect()
}

fn need<T>(value: Option<T>, flag: &str, algo: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Invalid(format!("{flag} is required for --algo {algo}")))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn read_schedule(path: &Path) -> Result<Schedule, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    Schedule::from_json_str(&text).map_err(|e| CliError::Invalid(e.to_string()))
}

/// Idle-time ratio against the baseline matching the fence kind: the
/// proportional split on a segment, the evenly spaced runners on a circle.
fn baseline_ratio(schedule: &Schedule, idle: &Rational) -> Rational {
    let speeds: Vec<Rational> = schedule
        .agents
        .iter()
        .map(|a| a.max_speed.clone())
        .collect();
    match schedule.fence.kind {
        FenceKind::Segment => {
            let total: Rational = speeds.iter().sum();
            idle * &total / &(&Rational::from_integer(2) * &schedule.fence.length)
        }
        FenceKind::Circle => {
            let mut sorted = speeds;
            sorted.sort_by(|p, q| q.cmp(p));
            let best = sorted
                .iter()
                .enumerate()
                .map(|(i, v)| &Rational::from_integer(i as i64 + 1) * v)
                .max()
                .expect("nonempty agents");
            idle * &best
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_generate(
    algo: &str,
    length: Option<String>,
    speeds: Option<String>,
    a: Option<String>,
    b: Option<String>,
    k: Option<u32>,
    tau: Option<String>,
    t: Option<String>,
    x: Option<u32>,
    out_path: &Path,
) -> Result<(), CliError> {
    let generated: GeneratorOutput = match algo {
        "a1" => {
            let length = parse_rational(&need(length, "--length", algo)?, "--length")?;
            let speeds = parse_speeds(&need(speeds, "--speeds", algo)?)?;
            partition(&length, &speeds)
        }
        "a2" => {
            let speeds = parse_speeds(&need(speeds, "--speeds", algo)?)?;
            runners(&speeds)
        }
        "train" => {
            let a = parse_rational(&need(a, "--a", algo)?, "--a")?;
            let b = parse_rational(&need(b, "--b", algo)?, "--b")?;
            train(&a, &b, need(k, "--k", algo)?)
        }
        "harmonic6" => Ok(harmonic_six()),
        "harmonic32" => Ok(harmonic_thirty_two()),
        "greedy" => {
            let tau = parse_rational(&need(tau, "--tau", algo)?, "--tau")?;
            let t = parse_rational(&need(t, "--t", algo)?, "--t")?;
            greedy_finite(&tau, &t)
        }
        "blocks" => blocks(need(x, "--x", algo)?),
        other => return Err(CliError::Invalid(format!("unknown algorithm '{other}'"))),
    }
    .map_err(|e| CliError::Invalid(e.to_string()))?;

    write_file(out_path, &generated.schedule.to_json_string())?;
    let total: Rational = generated
        .schedule
        .agents
        .iter()
        .map(|a| a.max_speed.clone())
        .sum();
    println!("k={}", generated.schedule.agents.len());
    println!("total_speed={total}");
    if let Some(predicted) = &generated.predicted_idle {
        println!("predicted_idle={predicted}");
        println!("rho={}", baseline_ratio(&generated.schedule, predicted));
    }
    for (key, value) in &generated.metadata {
        println!("{key}={value}");
    }
    Ok(())
}

fn cmd_verify(input: &Path, expect: Option<String>) -> Result<(), CliError> {
    let schedule = read_schedule(input)?;
    let report = schedule.validate();
    if !report.pass() {
        return Err(CliError::Invalid(report.to_string()));
    }
    println!("validation=ok");
    let idle_report = exact_idle(&schedule).map_err(|e| CliError::Invalid(e.to_string()))?;
    println!("idle={}", idle_report.idle);
    let witnesses = idle_report
        .witnesses
        .iter()
        .map(|w| w.position.to_string())
        .collect::<Vec<_>>()
        .join(",");
    println!("witnesses={witnesses}");
    if let Some(expect) = expect {
        let expected = parse_rational(&expect, "--expect")?;
        if idle_report.idle != IdleTime::Bounded(expected.clone()) {
            return Err(CliError::Expectation(format!(
                "expected idle {expected}, got {}",
                idle_report.idle
            )));
        }
    }
    Ok(())
}

fn cmd_gaps(input: &Path, idle: &str, out: Option<PathBuf>) -> Result<(), CliError> {
    let schedule = read_schedule(input)?;
    let candidate = parse_rational(idle, "--idle")?;
    let regions =
        analyze_gaps(&schedule, &candidate, None).map_err(|e| CliError::Invalid(e.to_string()))?;
    if let Some(path) = out {
        let mut json = serde_json::to_string(&regions).expect("region serialization");
        json.push('\n');
        write_file(&path, &json)?;
    }
    let total: Rational = regions.iter().map(|r| r.area.clone()).sum();
    println!("regions={}", regions.len());
    println!("total_area={total}");
    Ok(())
}

fn cmd_compare(input: &Path) -> Result<(), CliError> {
    let schedule = read_schedule(input)?;
    let report = compare(&schedule).map_err(|e| CliError::Invalid(e.to_string()))?;
    println!("idle={}", report.idle);
    println!("lower_bound={}", report.lower_bound);
    if let Some(rho) = &report.rho_vs_partition {
        println!("rho_vs_A1={rho}");
    }
    if let Some(rho) = &report.rho_vs_runners {
        println!("rho_vs_A2={rho}");
    }
    Ok(())
}

fn cmd_plot(
    input: &Path,
    periods: u32,
    idle: Option<String>,
    width: Option<u32>,
    out: Option<PathBuf>,
) -> Result<(), CliError> {
    let schedule = read_schedule(input)?;
    let idle = idle
        .map(|text| parse_rational(&text, "--idle"))
        .transpose()?;
    let opts = PlotOptions {
        periods,
        idle,
        width,
    };
    let svg = render_svg(&schedule, &opts).map_err(|e| CliError::Invalid(e.to_string()))?;
    match out {
        Some(path) => write_file(&path, &svg),
        None => {
            print!("{svg}");
            Ok(())
        }
    }
}
