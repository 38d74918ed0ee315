//! Episode loops for the four algorithms, seeded layouts and sweeps.

mod comparison;
mod config;
mod episode;
mod experiment;
mod obstacles;

use thiserror::Error;

pub use comparison::{derive_policy_seed, job_config, run_comparison, run_comparison_with, Execution};
pub use config::{AgentOrder, AlgorithmMode, ExperimentConfig};
pub use episode::{
    run_episode, run_iteration_cooperative, run_iteration_multi, run_iteration_single, EpisodeLog,
    LoopOptions, NeighborPairs, Round, Team, TracePoint,
};
pub use experiment::{build_world, run_experiment, RunResult};
pub use obstacles::{generate_obstacles, DRAW_BUDGET};

use crate::params::ParamRangeError;
use crate::world::WorldError;

#[derive(Debug, Error, PartialEq)]
pub enum HarnessError {
    #[error("could not place obstacle {placed} of {requested} without overlap")]
    InfeasibleLayout { placed: usize, requested: usize },
    #[error("unknown mode `{0}` (expected one of: single, separate, shared, cooperative)")]
    UnknownMode(String),
    #[error("invalid `{field}`: {reason}")]
    InvalidConfig { field: &'static str, reason: &'static str },
    #[error("no modes requested")]
    NoModes,
    #[error(transparent)]
    Param(#[from] ParamRangeError),
    #[error(transparent)]
    World(#[from] WorldError),
}
