//! Seeds × modes sweep. Runs are independent, so with the `parallel`
//! feature they are spread over the rayon pool; results come back in job
//! order either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use super::config::{AlgorithmMode, ExperimentConfig};
use super::experiment::{run_experiment, RunResult};
use super::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Rayon when the `parallel` feature is on, otherwise sequential.
    #[default]
    Parallel,
}

/// Policy seed for run `(seed_index, mode)`, mixed so that every run in a
/// sweep draws an unrelated stream.
pub fn derive_policy_seed(base: u64, seed_index: usize, mode: AlgorithmMode) -> u64 {
    // splitmix64 finalizer over a packed key
    let mut z = base
        .wrapping_add((seed_index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add((mode.ordinal() as u64 + 1).wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The config for one job: layouts shift with the seed index only.
pub fn job_config(base: &ExperimentConfig, seed_index: usize, mode: AlgorithmMode) -> ExperimentConfig {
    ExperimentConfig {
        mode,
        obstacle_seed: base.obstacle_seed.wrapping_add(seed_index as u64),
        policy_seed: derive_policy_seed(base.policy_seed, seed_index, mode),
        ..base.clone()
    }
}

/// Results ordered seed-major: `[seed0/mode0, seed0/mode1, …, seed1/mode0, …]`.
pub fn run_comparison(
    base: &ExperimentConfig,
    modes: &[AlgorithmMode],
    n_seeds: usize,
) -> Result<Vec<RunResult>, HarnessError> {
    run_comparison_with(base, modes, n_seeds, Execution::default())
}

pub fn run_comparison_with(
    base: &ExperimentConfig,
    modes: &[AlgorithmMode],
    n_seeds: usize,
    execution: Execution,
) -> Result<Vec<RunResult>, HarnessError> {
    if modes.is_empty() {
        return Err(HarnessError::NoModes);
    }
    let jobs: Vec<ExperimentConfig> = (0..n_seeds)
        .flat_map(|k| modes.iter().map(move |m| job_config(base, k, *m)))
        .collect();
    match execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => jobs.par_iter().map(run_experiment).collect(),
        _ => jobs.iter().map(run_experiment).collect(),
    }
}
