use rand::Rng;

use super::QTable;
use crate::world::{Action, StateId};

/// ε-greedy selection. Ties among maximal actions are broken uniformly.
pub fn select_action<R: Rng + ?Sized>(
    table: &QTable,
    state: StateId,
    epsilon: f64,
    rng: &mut R,
) -> Action {
    if rng.gen::<f64>() < epsilon {
        return Action::ALL[rng.gen_range(0..Action::COUNT)];
    }
    let best = table.argmax_set(state);
    if best.len() == 1 {
        best[0]
    } else {
        best[rng.gen_range(0..best.len())]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn frequencies(table: &QTable, epsilon: f64, trials: usize) -> [f64; 6] {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let s = StateId::from_index(0).unwrap();
        let mut counts = [0usize; 6];
        for _ in 0..trials {
            counts[select_action(table, s, epsilon, &mut rng).index()] += 1;
        }
        counts.map(|c| c as f64 / trials as f64)
    }

    #[test]
    fn greedy_unique_argmax() {
        let mut t = QTable::new();
        let s = StateId::from_index(0).unwrap();
        t.set(s, Action::TranslateForward, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..100 {
            assert_eq!(select_action(&t, s, 0.0, &mut rng), Action::TranslateForward);
        }
    }

    #[test]
    fn tie_break_uniform() {
        for f in frequencies(&QTable::new(), 0.0, 60_000) {
            assert!((f - 1.0 / 6.0).abs() < 0.02, "{f}");
        }
    }

    #[test]
    fn full_exploration_uniform() {
        let mut t = QTable::new();
        t.set(StateId::from_index(0).unwrap(), Action::RotateCcw, 5.0);
        for f in frequencies(&t, 1.0, 60_000) {
            assert!((f - 1.0 / 6.0).abs() < 0.02, "{f}");
        }
    }

    #[test]
    fn seeded_sequences_repeat() {
        let t = QTable::new();
        let s = StateId::from_index(3).unwrap();
        let run = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..50).map(|_| select_action(&t, s, 0.3, &mut rng)).collect::<Vec<_>>()
        };
        assert_eq!(run(5), run(5));
        assert_ne!(run(5), run(6));
    }
}
