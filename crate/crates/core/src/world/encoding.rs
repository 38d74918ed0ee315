//! Discrete 13-bit state: 5 goal-bearing bits above 8 obstacle-sector bits.

use std::fmt;

use super::geometry::{normalize_deg, BoxPose, Goal, Obstacle};
use super::WorldError;

pub const GOAL_CELLS: u16 = 32;
pub const SECTORS: u16 = 8;
pub const GOAL_CELL_WIDTH_DEG: f64 = 360.0 / GOAL_CELLS as f64;
pub const SECTOR_WIDTH_DEG: f64 = 360.0 / SECTORS as f64;

/// Index into a Q-table row, `goal_bits · 256 + obstacle_bits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateId(u16);

impl StateId {
    pub const COUNT: usize = (GOAL_CELLS as usize) << SECTORS;

    pub fn from_parts(goal_bits: u8, obstacle_bits: u8) -> Result<StateId, WorldError> {
        if u16::from(goal_bits) >= GOAL_CELLS {
            return Err(WorldError::GoalBitsOutOfRange(goal_bits));
        }
        Ok(StateId((u16::from(goal_bits) << SECTORS) | u16::from(obstacle_bits)))
    }

    pub fn from_index(index: usize) -> Option<StateId> {
        (index < Self::COUNT).then_some(StateId(index as u16))
    }

    pub fn index(self) -> usize {
        usize::from(self.0)
    }

    pub fn goal_bits(self) -> u8 {
        (self.0 >> SECTORS) as u8
    }

    pub fn obstacle_bits(self) -> u8 {
        (self.0 & 0xff) as u8
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:05b}|{:08b}", self.goal_bits(), self.obstacle_bits())
    }
}

/// How an obstacle is judged to be inside the sensing disk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SensingRule {
    /// Obstacle center within the detection range.
    #[default]
    Center,
    /// Any part of the obstacle disk within the detection range.
    InflateByRadius,
}

/// Reference direction that bearings in the state are measured from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AngleFrame {
    /// World +x axis.
    #[default]
    World,
    /// The box heading, so bearings turn with the box.
    Box,
}

impl AngleFrame {
    fn reference_deg(self, pose: &BoxPose) -> f64 {
        match self {
            AngleFrame::World => 0.0,
            AngleFrame::Box => pose.angle_deg(),
        }
    }
}

/// Bearing from the box center to the goal center in `[0, 360)`; 0 when
/// the two coincide.
pub fn goal_angle(pose: &BoxPose, goal: &Goal) -> f64 {
    goal_angle_in(pose, goal, AngleFrame::World)
}

pub fn goal_angle_in(pose: &BoxPose, goal: &Goal, frame: AngleFrame) -> f64 {
    let d = goal.center - pose.center;
    if d.x == 0.0 && d.y == 0.0 {
        return 0.0;
    }
    normalize_deg(d.bearing_deg() - frame.reference_deg(pose))
}

pub fn encode_goal_bits(theta_deg: f64) -> Result<u8, WorldError> {
    if !(0.0..360.0).contains(&theta_deg) {
        return Err(WorldError::AngleOutOfRange(theta_deg));
    }
    let cell = (theta_deg / GOAL_CELL_WIDTH_DEG).floor() as u8;
    Ok(cell.min(GOAL_CELLS as u8 - 1))
}

/// Sector `k` covers bearings `[45k, 45(k+1))` in the world frame and maps
/// to bit `7 - k`, so sector 0 is the most significant bit.
pub fn encode_obstacle_bits(
    pose: &BoxPose,
    obstacles: &[Obstacle],
    detection_range: f64,
    rule: SensingRule,
) -> u8 {
    encode_obstacle_bits_in(pose, obstacles, detection_range, rule, AngleFrame::World)
}

pub fn encode_obstacle_bits_in(
    pose: &BoxPose,
    obstacles: &[Obstacle],
    detection_range: f64,
    rule: SensingRule,
    frame: AngleFrame,
) -> u8 {
    let reference = frame.reference_deg(pose);
    let mut bits = 0u8;
    for obstacle in obstacles {
        let offset = obstacle.center - pose.center;
        let reach = match rule {
            SensingRule::Center => detection_range,
            SensingRule::InflateByRadius => detection_range + obstacle.radius,
        };
        if offset.norm() > reach {
            continue;
        }
        let bearing = normalize_deg(offset.bearing_deg() - reference);
        let sector = ((bearing / SECTOR_WIDTH_DEG).floor() as u8).min(SECTORS as u8 - 1);
        bits |= 0x80 >> sector;
    }
    bits
}

/// Sensing settings that shape the encoded state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sensor {
    pub detection_range: f64,
    pub rule: SensingRule,
    pub goal_frame: AngleFrame,
    pub sector_frame: AngleFrame,
}

impl Sensor {
    /// Goal bearing relative to the box heading, world-frame sectors.
    pub fn new(detection_range: f64) -> Self {
        Sensor { goal_frame: AngleFrame::Box, ..Sensor::world(detection_range) }
    }

    /// World-frame bearings for both the goal and the sectors.
    pub fn world(detection_range: f64) -> Self {
        Sensor {
            detection_range,
            rule: SensingRule::Center,
            goal_frame: AngleFrame::World,
            sector_frame: AngleFrame::World,
        }
    }
}

pub fn encode_state(pose: &BoxPose, goal: &Goal, obstacles: &[Obstacle], sensor: &Sensor) -> StateId {
    let theta = goal_angle_in(pose, goal, sensor.goal_frame);
    let goal_bits = encode_goal_bits(theta).expect("goal angle is normalized");
    let obstacle_bits =
        encode_obstacle_bits_in(pose, obstacles, sensor.detection_range, sensor.rule, sensor.sector_frame);
    StateId::from_parts(goal_bits, obstacle_bits).expect("goal bits below 32")
}
