//! Tabular Q-learning: table storage, ε-greedy selection and the update
//! rules used by the four algorithms.

mod policy;
mod table;
mod update;

pub use crate::params::{Hyperparams, ParamRangeError};
pub use policy::select_action;
pub use table::QTable;
pub use update::{
    cooperative_blend, td_update_independent, td_update_shared, td_update_single,
    BlendRule, EmptyNeighborRule, NeighborAggregate,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AgentId(usize);

impl AgentId {
    pub fn new(index: usize) -> Self {
        AgentId(index)
    }

    pub fn index(self) -> usize {
        self.0
    }
}

/// Agents within detection range of some agent, excluding that agent.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NeighborSet(Vec<AgentId>);

impl NeighborSet {
    /// Every other agent in a team of `team_size`.
    pub fn all_others(agent: AgentId, team_size: usize) -> Self {
        NeighborSet((0..team_size).filter(|&j| j != agent.0).map(AgentId).collect())
    }

    /// Builds a set from arbitrary ids, dropping `agent` itself and duplicates.
    pub fn from_ids(agent: AgentId, ids: impl IntoIterator<Item = AgentId>) -> Self {
        let mut v: Vec<AgentId> = ids.into_iter().filter(|j| *j != agent).collect();
        v.sort();
        v.dedup();
        NeighborSet(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = &AgentId> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neighbor_sets_exclude_self() {
        let n = NeighborSet::all_others(AgentId::new(1), 3);
        assert_eq!(n.iter().map(|a| a.index()).collect::<Vec<_>>(), vec![0, 2]);
        let n = NeighborSet::from_ids(AgentId::new(0), [AgentId::new(0), AgentId::new(2), AgentId::new(2)]);
        assert_eq!(n.len(), 1);
        assert!(NeighborSet::all_others(AgentId::new(0), 1).is_empty());
    }
}
