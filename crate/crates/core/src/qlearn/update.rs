use super::{AgentId, NeighborSet, QTable};
use crate::world::{Action, StateId};

/// What the cooperative blend does when an agent has no neighbors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EmptyNeighborRule {
    /// Leave the entry untouched.
    #[default]
    NoOp,
    /// Apply the blend with an empty sum, scaling the entry by ω.
    Literal,
}

/// How the neighbor values enter the cooperative blend.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NeighborAggregate {
    /// Plain sum over neighbors.
    #[default]
    Sum,
    /// Sum divided by the neighbor count.
    Mean,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BlendRule {
    pub aggregate: NeighborAggregate,
    pub empty: EmptyNeighborRule,
}

/// Incremental form: `Q ← Q + α (r + γ max Q(s′, ·) − Q)`.
pub fn td_update_single(
    table: &mut QTable,
    s: StateId,
    a: Action,
    r: f64,
    s_next: StateId,
    alpha: f64,
    gamma: f64,
) -> f64 {
    let q = table.get(s, a);
    let target = r + gamma * table.max_value(s_next);
    let updated = q + alpha * (target - q);
    table.set(s, a, updated);
    updated
}

/// Convex form: `Q ← (1 − α) Q + α (r + γ max Q(s′, ·))`.
pub fn td_update_independent(
    table: &mut QTable,
    s: StateId,
    a: Action,
    r: f64,
    s_next: StateId,
    alpha: f64,
    gamma: f64,
) -> f64 {
    let q = table.get(s, a);
    let target = r + gamma * table.max_value(s_next);
    let updated = (1.0 - alpha) * q + alpha * target;
    table.set(s, a, updated);
    updated
}

/// Same arithmetic as [`td_update_independent`], applied to the one table
/// every agent reads and writes.
pub fn td_update_shared(
    shared: &mut QTable,
    s: StateId,
    a: Action,
    r: f64,
    s_next: StateId,
    alpha: f64,
    gamma: f64,
) -> f64 {
    td_update_independent(shared, s, a, r, s_next, alpha, gamma)
}

/// `Q_i(s_i, a_i) ← ω Q_i(s_i, a_i) + (1 − ω) Σ_j Q_j(s_j, a_j)` over the
/// neighbors `j` of agent `i`, each evaluated at its own current pair.
///
/// `sa_pairs[k]` is agent `k`'s current (state, action). Returns the new
/// value of the blended entry.
pub fn cooperative_blend(
    tables: &mut [QTable],
    agent: AgentId,
    sa_pairs: &[(StateId, Action)],
    neighbors: &NeighborSet,
    omega: f64,
    rule: BlendRule,
) -> f64 {
    let i = agent.index();
    let (s_i, a_i) = sa_pairs[i];
    let own = tables[i].get(s_i, a_i);
    if neighbors.is_empty() && rule.empty == EmptyNeighborRule::NoOp {
        return own;
    }
    let mut neighbor_sum: f64 = neighbors
        .iter()
        .map(|j| {
            let (s_j, a_j) = sa_pairs[j.index()];
            tables[j.index()].get(s_j, a_j)
        })
        .sum();
    if rule.aggregate == NeighborAggregate::Mean && !neighbors.is_empty() {
        neighbor_sum /= neighbors.len() as f64;
    }
    let blended = omega * own + (1.0 - omega) * neighbor_sum;
    tables[i].set(s_i, a_i, blended);
    blended
}
