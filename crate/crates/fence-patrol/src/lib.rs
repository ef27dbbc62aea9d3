//! Exact-arithmetic construction and verification of fence patrolling
//! schedules.
//!
//! A number of agents with speed limits patrol a fence, modeled as a segment
//! or a circle. The quantity of interest is the idle time: the longest open
//! time interval during which some point of the fence goes unvisited. This
//! crate builds classic patrolling schedules, verifies their idle time
//! exactly with rational arithmetic, extracts uncovered space-time regions,
//! and renders position-time diagrams.
//!
//! Entry points:
//!
//! * [`numeric`]: canonical arbitrary-precision rationals.
//! * [`model`]: fences, trajectories, schedules, validation, JSON format.
//! * [`verify`]: exact idle-time sweep, sampled oracle, gap regions,
//!   lower bounds and schedule comparison.
//! * [`generate`]: schedule constructions (segment partition, circle
//!   runners, train, harmonic schedules, finite-horizon covering, block
//!   construction) with predicted idle times.
//! * [`plot`]: deterministic SVG position-time diagrams.
//!
//! The `examples/` directory shows one runnable program per capability; the
//! `fence-patrol` binary exposes the same operations as subcommands.

pub mod generate;
pub mod model;
pub mod numeric;
pub mod plot;
pub mod verify;

pub mod cli;
