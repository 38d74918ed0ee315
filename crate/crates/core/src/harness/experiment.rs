use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::config::ExperimentConfig;
use super::episode::{run_episode, EpisodeLog, Team};
use super::obstacles::generate_obstacles;
use super::HarnessError;
use crate::qlearn::QTable;
use crate::world::{Obstacle, World};

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub config: ExperimentConfig,
    pub obstacles: Vec<Obstacle>,
    pub episodes: Vec<EpisodeLog>,
    pub final_tables: Vec<QTable>,
}

impl RunResult {
    pub fn iterations(&self) -> Vec<usize> {
        self.episodes.iter().map(|e| e.iterations_used).collect()
    }

    pub fn world(&self) -> World {
        World {
            arena: self.config.arena,
            shape: self.config.shape,
            goal: self.config.goal,
            obstacles: self.obstacles.clone(),
        }
    }
}

/// Builds the world for `config`; the layout depends only on the obstacle seed.
pub fn build_world(config: &ExperimentConfig) -> Result<World, HarnessError> {
    let obstacles = generate_obstacles(
        config.obstacle_seed,
        config.n_obstacles,
        &config.arena.obstacle_region,
        config.obstacle_radius,
        &config.shape,
        &config.arena.box_start,
        &config.goal,
    )?;
    Ok(World { arena: config.arena, shape: config.shape, goal: config.goal, obstacles })
}

/// Runs `n_episodes` episodes with fresh zero tables. Deterministic in
/// `(config, obstacle_seed, policy_seed)`.
pub fn run_experiment(config: &ExperimentConfig) -> Result<RunResult, HarnessError> {
    config.validate()?;
    let world = build_world(config)?;
    let mut team = Team::new(config.mode);
    let mut rng = ChaCha8Rng::seed_from_u64(config.policy_seed);
    let options = config.loop_options();
    let episodes = (1..=config.n_episodes)
        .map(|k| {
            run_episode(
                &world,
                config.arena.box_start,
                &mut team,
                &config.hyperparams,
                &options,
                config.max_iterations,
                k,
                &mut rng,
            )
        })
        .collect();
    Ok(RunResult { config: config.clone(), obstacles: world.obstacles, episodes, final_tables: team.tables })
}
