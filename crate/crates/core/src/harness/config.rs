use std::fmt;
use std::str::FromStr;

use super::episode::{LoopOptions, NeighborPairs};
use super::HarnessError;
use crate::params::Hyperparams;
use crate::qlearn::{BlendRule, EmptyNeighborRule, NeighborAggregate};
use crate::world::{Arena, BoxShape, Goal};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgorithmMode {
    /// One agent, one table.
    SingleAgent,
    /// Three agents, a table each, one update per agent per round.
    MultiSeparate,
    /// Three agents writing one table.
    MultiShared,
    /// Three agents, a table each, updated and blended after every action.
    Cooperative,
}

impl AlgorithmMode {
    pub const ALL: [AlgorithmMode; 4] = [
        AlgorithmMode::SingleAgent,
        AlgorithmMode::MultiSeparate,
        AlgorithmMode::MultiShared,
        AlgorithmMode::Cooperative,
    ];

    pub const TEAM_SIZE: usize = 3;

    pub fn agent_count(self) -> usize {
        match self {
            AlgorithmMode::SingleAgent => 1,
            _ => Self::TEAM_SIZE,
        }
    }

    pub fn table_count(self) -> usize {
        match self {
            AlgorithmMode::SingleAgent | AlgorithmMode::MultiShared => 1,
            AlgorithmMode::MultiSeparate | AlgorithmMode::Cooperative => Self::TEAM_SIZE,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmMode::SingleAgent => "single",
            AlgorithmMode::MultiSeparate => "separate",
            AlgorithmMode::MultiShared => "shared",
            AlgorithmMode::Cooperative => "cooperative",
        }
    }

    pub fn ordinal(self) -> usize {
        self as usize
    }
}

impl fmt::Display for AlgorithmMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmMode {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AlgorithmMode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| HarnessError::UnknownMode(s.to_string()))
    }
}

/// Order in which the agents of a team act within a round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AgentOrder {
    /// Always 0, 1, 2.
    #[default]
    Fixed,
    /// A fresh permutation each round, drawn from the policy stream.
    Shuffled,
}

/// Everything needed to reproduce a run.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub arena: Arena,
    pub shape: BoxShape,
    pub goal: Goal,
    pub n_obstacles: usize,
    pub obstacle_radius: f64,
    pub max_iterations: usize,
    pub n_episodes: usize,
    pub hyperparams: Hyperparams,
    pub mode: AlgorithmMode,
    pub obstacle_seed: u64,
    pub policy_seed: u64,
    pub agent_order: AgentOrder,
    pub blend: BlendRule,
    pub neighbor_pairs: NeighborPairs,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            arena: Arena::default(),
            shape: BoxShape::default(),
            goal: Goal::default(),
            n_obstacles: 6,
            obstacle_radius: 10.0,
            max_iterations: 2000,
            n_episodes: 80,
            hyperparams: Hyperparams::default(),
            mode: AlgorithmMode::SingleAgent,
            obstacle_seed: 1,
            policy_seed: 1,
            agent_order: AgentOrder::Fixed,
            blend: BlendRule { aggregate: NeighborAggregate::Mean, empty: EmptyNeighborRule::NoOp },
            neighbor_pairs: NeighborPairs::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn loop_options(&self) -> LoopOptions {
        LoopOptions { agent_order: self.agent_order, blend: self.blend, neighbor_pairs: self.neighbor_pairs }
    }

    // negated comparisons so NaN is rejected too
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<(), HarnessError> {
        self.hyperparams.validate()?;
        self.arena.validate()?;
        let invalid = |field, reason| Err(HarnessError::InvalidConfig { field, reason });
        if !(self.shape.length > 0.0 && self.shape.width > 0.0) {
            return invalid("box_length", "box dimensions must be positive");
        }
        if !(self.goal.radius > 0.0) {
            return invalid("goal_radius", "must be positive");
        }
        if !(self.obstacle_radius > 0.0) {
            return invalid("obstacle_radius", "must be positive");
        }
        if self.max_iterations < 1 {
            return invalid("max_iterations", "must be at least 1");
        }
        if self.n_episodes < 1 {
            return invalid("n_episodes", "must be at least 1");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mode_shapes() {
        let shapes: Vec<_> = AlgorithmMode::ALL.iter().map(|m| (m.agent_count(), m.table_count())).collect();
        assert_eq!(shapes, vec![(1, 1), (3, 3), (3, 1), (3, 3)]);
    }

    #[test]
    fn mode_names_parse() {
        for m in AlgorithmMode::ALL {
            assert_eq!(m.name().parse::<AlgorithmMode>().unwrap(), m);
        }
        assert!("both".parse::<AlgorithmMode>().is_err());
    }

    #[test]
    fn default_config_valid() {
        assert!(ExperimentConfig::default().validate().is_ok());
        let c = ExperimentConfig { n_episodes: 0, ..Default::default() };
        assert!(matches!(c.validate(), Err(HarnessError::InvalidConfig { field: "n_episodes", .. })));
    }
}
