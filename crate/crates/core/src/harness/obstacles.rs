use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::HarnessError;
use crate::world::{collides, BoxPose, BoxShape, Goal, Obstacle, Rect, Vec2};

/// Draws per obstacle before the layout is declared infeasible.
pub const DRAW_BUDGET: usize = 10_000;

/// Uniformly places `count` obstacles in `region`, rejecting any that would
/// overlap an earlier obstacle, the box at its start pose, or the goal disk.
pub fn generate_obstacles(
    seed: u64,
    count: usize,
    region: &Rect,
    radius: f64,
    shape: &BoxShape,
    box_start: &BoxPose,
    goal: &Goal,
) -> Result<Vec<Obstacle>, HarnessError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut placed: Vec<Obstacle> = Vec::with_capacity(count);
    for index in 0..count {
        let found = (0..DRAW_BUDGET).find_map(|_| {
            let center = Vec2::new(
                rng.gen_range(region.x_min..=region.x_max),
                rng.gen_range(region.y_min..=region.y_max),
            );
            let candidate = Obstacle { center, radius };
            let clear = placed.iter().all(|o| o.center.distance(center) > o.radius + radius)
                && center.distance(goal.center) > goal.radius + radius
                && !collides(box_start, shape, &[candidate]);
            clear.then_some(candidate)
        });
        match found {
            Some(o) => placed.push(o),
            None => return Err(HarnessError::InfeasibleLayout { placed: index, requested: count }),
        }
    }
    Ok(placed)
}
