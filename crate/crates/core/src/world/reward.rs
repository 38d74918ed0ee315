use super::geometry::{BoxPose, Goal};
use crate::params::Hyperparams;

pub const OBSTACLE_CLEAR_REWARD: f64 = 1.0;
pub const OBSTACLE_HIT_REWARD: f64 = -9.0;
/// Offset subtracted from the rotation cosine; rotations smaller than
/// `acos(0.9)` (about 25.84°) earn a positive rotation term.
pub const ROTATION_OFFSET: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RewardParts {
    pub r_distance: f64,
    pub r_rotation: f64,
    pub r_obstacle: f64,
    pub r_total: f64,
}

pub fn distance_reward(d_old: f64, d_new: f64, c_d: f64) -> f64 {
    (d_old - d_new) * c_d
}

pub fn rotation_reward(angle_before_deg: f64, angle_after_deg: f64) -> f64 {
    (angle_after_deg - angle_before_deg).to_radians().cos() - ROTATION_OFFSET
}

pub fn obstacle_reward(collided: bool) -> f64 {
    if collided {
        OBSTACLE_HIT_REWARD
    } else {
        OBSTACLE_CLEAR_REWARD
    }
}

pub fn combine(r_distance: f64, r_rotation: f64, r_obstacle: f64, params: &Hyperparams) -> RewardParts {
    RewardParts {
        r_distance,
        r_rotation,
        r_obstacle,
        r_total: params.w1 * r_distance + params.w2 * r_rotation + params.w3 * r_obstacle,
    }
}

/// Reward for moving the box from `before` to `after`. Distances are
/// measured from the goal center to the box center.
pub fn compute_reward(
    before: &BoxPose,
    after: &BoxPose,
    goal: &Goal,
    collided: bool,
    params: &Hyperparams,
) -> RewardParts {
    let r_distance = distance_reward(
        before.center.distance(goal.center),
        after.center.distance(goal.center),
        params.c_d,
    );
    let r_rotation = rotation_reward(before.angle_deg(), after.angle_deg());
    combine(r_distance, r_rotation, obstacle_reward(collided), params)
}
