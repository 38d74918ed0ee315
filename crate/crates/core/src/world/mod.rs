//! The box-pushing environment: geometry, state encoding, kinematics,
//! collisions and reward.
//!
//! Everything here is a pure function over small `Copy` values. A
//! [`World`] bundles the static parts of an environment (arena, box
//! footprint, goal, obstacles) and exposes [`World::step`], which applies
//! one action to a pose.

pub mod action;
pub mod collision;
pub mod encoding;
pub mod geometry;
pub mod reward;

use thiserror::Error;

pub use action::{rotate_box, translate_box, Action};
pub use collision::{collides, disk_hits_box};
pub use encoding::{
    encode_goal_bits, encode_obstacle_bits, encode_obstacle_bits_in, encode_state, goal_angle,
    goal_angle_in, AngleFrame, Sensor, SensingRule, StateId,
};
pub use geometry::{normalize_deg, BoxPose, BoxShape, Goal, Obstacle, Rect, Vec2};
pub use reward::{combine, compute_reward, distance_reward, obstacle_reward, rotation_reward, RewardParts};

use crate::params::Hyperparams;

#[derive(Debug, Error, PartialEq)]
pub enum WorldError {
    #[error("action {action} is not a {expected} action")]
    WrongActionKind { action: Action, expected: &'static str },
    #[error("angle {0} is outside [0, 360)")]
    AngleOutOfRange(f64),
    #[error("goal bits {0} exceed 31")]
    GoalBitsOutOfRange(u8),
    #[error("invalid arena: {0}")]
    InvalidArena(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arena {
    pub width: f64,
    pub height: f64,
    /// Region obstacle centers are drawn from.
    pub obstacle_region: Rect,
    /// Sensing disk around the box center and the frames of the state bearings.
    pub sensor: Sensor,
    pub box_start: BoxPose,
    /// Translation distance per action.
    pub step_length: f64,
    /// Rotation per action, in degrees.
    pub rotation_step: f64,
}

impl Default for Arena {
    fn default() -> Self {
        Arena {
            width: 1000.0,
            height: 700.0,
            obstacle_region: Rect {
                x_min: 100.0,
                x_max: 700.0,
                y_min: 100.0,
                y_max: 600.0,
            },
            sensor: Sensor::new(150.0),
            box_start: BoxPose::at(0.0, 0.0, 0.0),
            step_length: 20.0,
            rotation_step: 15.0,
        }
    }
}

impl Arena {
    pub fn bounds(&self) -> Rect {
        Rect {
            x_min: 0.0,
            x_max: self.width,
            y_min: 0.0,
            y_max: self.height,
        }
    }

    // negated comparisons so NaN is rejected too
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<(), WorldError> {
        if !(self.width > 0.0 && self.height > 0.0) {
            return Err(WorldError::InvalidArena("width and height must be positive"));
        }
        if !self.obstacle_region.is_valid() || !self.bounds().contains_rect(&self.obstacle_region) {
            return Err(WorldError::InvalidArena("obstacle region must lie inside the arena"));
        }
        if !(self.sensor.detection_range > 0.0) {
            return Err(WorldError::InvalidArena("detection_range must be positive"));
        }
        if !(self.step_length > 0.0) {
            return Err(WorldError::InvalidArena("step_length must be positive"));
        }
        if !(self.rotation_step > 0.0 && self.rotation_step < 90.0) {
            return Err(WorldError::InvalidArena("rotation_step must lie in (0, 90)"));
        }
        if !self.box_start.center.is_finite() {
            return Err(WorldError::InvalidArena("box start must be finite"));
        }
        Ok(())
    }
}

/// One applied action and its consequences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transition {
    pub state_before: StateId,
    pub action: Action,
    pub state_after: StateId,
    pub reward: RewardParts,
    pub collided: bool,
    pub pose_before: BoxPose,
    pub pose_after: BoxPose,
}

pub fn goal_reached(pose: &BoxPose, goal: &Goal) -> bool {
    pose.center.distance(goal.center) <= goal.radius
}

/// Static environment: arena, box footprint, goal and obstacle layout.
#[derive(Debug, Clone, PartialEq)]
pub struct World {
    pub arena: Arena,
    pub shape: BoxShape,
    pub goal: Goal,
    pub obstacles: Vec<Obstacle>,
}

impl World {
    pub fn encode(&self, pose: &BoxPose) -> StateId {
        encode_state(pose, &self.goal, &self.obstacles, &self.arena.sensor)
    }

    pub fn collides(&self, pose: &BoxPose) -> bool {
        collides(pose, &self.shape, &self.obstacles)
    }

    pub fn goal_reached(&self, pose: &BoxPose) -> bool {
        goal_reached(pose, &self.goal)
    }

    /// Pose the action would produce, ignoring obstacles.
    pub fn candidate(&self, pose: &BoxPose, action: Action) -> BoxPose {
        let moved = if action.is_translation() {
            translate_box(*pose, action, self.arena.step_length)
        } else {
            rotate_box(*pose, action, self.arena.rotation_step)
        };
        moved.expect("action kind matched")
    }

    /// Applies `action`. A motion that would overlap an obstacle is
    /// reverted: the box stays put and the collision penalty applies.
    pub fn step(&self, pose: &BoxPose, action: Action, params: &Hyperparams) -> Transition {
        let candidate = self.candidate(pose, action);
        let collided = self.collides(&candidate);
        let pose_after = if collided { *pose } else { candidate };
        Transition {
            state_before: self.encode(pose),
            action,
            state_after: self.encode(&pose_after),
            reward: compute_reward(pose, &pose_after, &self.goal, collided, params),
            collided,
            pose_before: *pose,
            pose_after,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn world(obstacles: Vec<Obstacle>) -> World {
        World {
            arena: Arena::default(),
            shape: BoxShape::default(),
            goal: Goal::default(),
            obstacles,
        }
    }

    #[test]
    fn free_move_advances() {
        let w = world(vec![]);
        let t = w.step(&BoxPose::at(0.0, 0.0, 0.0), Action::TranslateForward, &Hyperparams::default());
        assert!(!t.collided);
        assert_eq!(t.pose_after.center, Vec2::new(20.0, 0.0));
        assert!(t.reward.r_distance > 0.0);
    }

    #[test]
    fn blocked_move_reverts() {
        // box front edge at x = 60; after a 20 step it reaches 80
        let w = world(vec![Obstacle::new(85.0, 0.0, 10.0)]);
        let start = BoxPose::at(0.0, 0.0, 0.0);
        let t = w.step(&start, Action::TranslateForward, &Hyperparams::default());
        assert!(t.collided);
        assert_eq!(t.pose_after, start);
        assert_eq!(t.reward.r_obstacle, -9.0);
        assert_eq!(t.reward.r_distance, 0.0);
        assert!((t.reward.r_rotation - 0.1).abs() < 1e-15);
        assert_eq!(t.state_before, t.state_after);
    }

    #[test]
    fn rotation_keeps_center() {
        let w = world(vec![]);
        let start = BoxPose::at(10.0, 20.0, 0.0);
        let t = w.step(&start, Action::RotateCcw, &Hyperparams::default());
        assert_eq!(t.pose_after.center, start.center);
        assert_eq!(t.pose_after.angle_deg(), 15.0);
        assert_eq!(t.reward.r_distance, 0.0);
    }

    #[test]
    fn goal_boundary_inclusive() {
        let g = Goal { center: Vec2::ZERO, radius: 30.0 };
        assert!(goal_reached(&BoxPose::at(0.0, 0.0, 0.0), &g));
        assert!(goal_reached(&BoxPose::at(30.0, 0.0, 0.0), &g));
        assert!(!goal_reached(&BoxPose::at(30.001, 0.0, 0.0), &g));
    }

    #[test]
    fn arena_validation() {
        assert!(Arena::default().validate().is_ok());
        let bad = Arena { rotation_step: 90.0, ..Arena::default() };
        assert!(bad.validate().is_err());
        let mut bad = Arena::default();
        bad.obstacle_region.x_max = 1200.0;
        assert!(bad.validate().is_err());
    }
}
