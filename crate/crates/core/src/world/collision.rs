use super::geometry::{BoxPose, BoxShape, Obstacle, Vec2};

/// Closest point of the oriented box rectangle to `point`, expressed in the
/// box frame (x along the heading).
fn closest_in_box_frame(pose: &BoxPose, shape: &BoxShape, point: Vec2) -> (Vec2, Vec2) {
    let (sin, cos) = pose.angle_deg().to_radians().sin_cos();
    let d = point - pose.center;
    let local = Vec2::new(d.dot(Vec2::new(cos, sin)), d.dot(Vec2::new(-sin, cos)));
    let half_l = shape.length / 2.0;
    let half_w = shape.width / 2.0;
    let clamped = Vec2::new(local.x.clamp(-half_l, half_l), local.y.clamp(-half_w, half_w));
    (local, clamped)
}

/// Whether the obstacle disk touches or overlaps the oriented box.
pub fn disk_hits_box(pose: &BoxPose, shape: &BoxShape, obstacle: &Obstacle) -> bool {
    let (local, closest) = closest_in_box_frame(pose, shape, obstacle.center);
    local.distance(closest) <= obstacle.radius
}

/// Touching (distance exactly equal to the radius) counts as a collision.
pub fn collides(pose: &BoxPose, shape: &BoxShape, obstacles: &[Obstacle]) -> bool {
    obstacles.iter().any(|o| disk_hits_box(pose, shape, o))
}
