use std::fmt;

use super::geometry::{BoxPose, Vec2};
use super::WorldError;

/// The six box actions. Translations are relative to the box heading;
/// rotations spin the box about its center.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Action {
    TranslateForward,
    TranslateBackward,
    TranslateLeft,
    TranslateRight,
    RotateCcw,
    RotateCw,
}

impl Action {
    pub const COUNT: usize = 6;

    pub const ALL: [Action; Action::COUNT] = [
        Action::TranslateForward,
        Action::TranslateBackward,
        Action::TranslateLeft,
        Action::TranslateRight,
        Action::RotateCcw,
        Action::RotateCw,
    ];

    /// Zero-based table column.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<Action> {
        Action::ALL.get(index).copied()
    }

    /// One-based action number (1 through 6).
    pub fn number(self) -> usize {
        self.index() + 1
    }

    pub fn is_translation(self) -> bool {
        self.index() < 4
    }

    pub fn is_rotation(self) -> bool {
        !self.is_translation()
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Action::TranslateForward => "forward",
            Action::TranslateBackward => "backward",
            Action::TranslateLeft => "left",
            Action::TranslateRight => "right",
            Action::RotateCcw => "rotate_ccw",
            Action::RotateCw => "rotate_cw",
        };
        f.write_str(name)
    }
}

/// Unit direction for a line of given angle, signed so that it points
/// toward `angle_deg` rather than away from it.
///
/// Uses the slope form: for slope `m = tan(angle)` the step is
/// `(±1, ±m) · sqrt(1 / (1 + m²))`.
fn slope_direction(angle_deg: f64) -> Vec2 {
    let rad = angle_deg.to_radians();
    let m = rad.tan();
    let k = (1.0 / (1.0 + m * m)).sqrt();
    let sign = if rad.cos() < 0.0 { -1.0 } else { 1.0 };
    Vec2::new(sign * k, sign * m * k)
}

/// Moves the box center by `step` along its heading (forward/backward) or
/// along the heading rotated by 90° (left/right). The heading is unchanged.
pub fn translate_box(pose: BoxPose, action: Action, step: f64) -> Result<BoxPose, WorldError> {
    let heading = pose.angle_deg();
    let displacement = match action {
        Action::TranslateForward => slope_direction(heading) * step,
        Action::TranslateBackward => -slope_direction(heading) * step,
        Action::TranslateLeft => slope_direction(heading + 90.0) * step,
        Action::TranslateRight => -slope_direction(heading + 90.0) * step,
        Action::RotateCcw | Action::RotateCw => {
            return Err(WorldError::WrongActionKind {
                action,
                expected: "translation",
            })
        }
    };
    Ok(BoxPose::new(pose.center + displacement, heading))
}

/// Spins the box about its center by `delta_deg` (CCW for action 5, CW for 6).
pub fn rotate_box(pose: BoxPose, action: Action, delta_deg: f64) -> Result<BoxPose, WorldError> {
    let delta = match action {
        Action::RotateCcw => delta_deg,
        Action::RotateCw => -delta_deg,
        _ => {
            return Err(WorldError::WrongActionKind {
                action,
                expected: "rotation",
            })
        }
    };
    Ok(BoxPose::new(pose.center, pose.angle_deg() + delta))
}
