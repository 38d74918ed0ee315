use crate::world::{Action, StateId};

/// Dense `8192 × 6` action-value table, row-major, zero-initialized.
#[derive(Debug, Clone, PartialEq)]
pub struct QTable {
    values: Box<[f64]>,
}

impl Default for QTable {
    fn default() -> Self {
        Self::new()
    }
}

impl QTable {
    pub const STATES: usize = StateId::COUNT;
    pub const ACTIONS: usize = Action::COUNT;

    pub fn new() -> Self {
        QTable {
            values: vec![0.0; Self::STATES * Self::ACTIONS].into_boxed_slice(),
        }
    }

    /// Builds a table from row-major values; `None` if the length is wrong.
    pub fn from_values(values: Vec<f64>) -> Option<Self> {
        (values.len() == Self::STATES * Self::ACTIONS).then(|| QTable {
            values: values.into_boxed_slice(),
        })
    }

    #[inline]
    fn offset(state: StateId, action: Action) -> usize {
        state.index() * Self::ACTIONS + action.index()
    }

    pub fn get(&self, state: StateId, action: Action) -> f64 {
        self.values[Self::offset(state, action)]
    }

    pub fn set(&mut self, state: StateId, action: Action, value: f64) {
        self.values[Self::offset(state, action)] = value;
    }

    pub fn row(&self, state: StateId) -> &[f64] {
        let start = state.index() * Self::ACTIONS;
        &self.values[start..start + Self::ACTIONS]
    }

    pub fn max_value(&self, state: StateId) -> f64 {
        self.row(state).iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Actions sharing the row maximum, in table order.
    pub fn argmax_set(&self, state: StateId) -> Vec<Action> {
        let best = self.max_value(state);
        Action::ALL
            .iter()
            .copied()
            .filter(|a| self.get(state, *a) == best)
            .collect()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(Self::ACTIONS)
    }

    pub fn nonzero_count(&self) -> usize {
        self.values.iter().filter(|v| **v != 0.0).count()
    }

    pub fn all_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }
}
