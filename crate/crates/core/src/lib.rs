//! Box-pushing simulator with tabular Q-learning.
//!
//! A rectangular box is pushed across an arena toward a goal disk while
//! avoiding circular obstacles. Four learners are provided: a single agent,
//! three independent agents with separate tables, three agents sharing one
//! table, and three cooperative agents that update after every action and
//! blend their values with their neighbors'.
//!
//! - [`world`]: geometry, state encoding, kinematics, collision, reward.
//! - [`qlearn`]: tables, ε-greedy selection, update rules.
//! - [`harness`]: episode loops, seeded runs and sweeps.
//! - [`report`]: config files, CSV/trace/table output, SVG figures.

pub mod harness;
pub mod params;
pub mod qlearn;
pub mod report;
pub mod world;

pub use harness::{run_comparison, run_experiment, AlgorithmMode, ExperimentConfig, RunResult};
pub use params::Hyperparams;
