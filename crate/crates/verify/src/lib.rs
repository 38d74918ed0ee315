//! Helpers for the acceptance suite in `tests/acceptance.rs`.
//!
//! The suite lives in its own package so that it runs after every other
//! test target in the workspace.

use std::io::Write as _;

use boxpush::world::{BoxPose, BoxShape, Vec2};

/// Writes `A<n> PASS|FAIL: detail` to stderr, which the test harness does not
/// capture, then fails the calling test if `pass` is false.
pub fn report(id: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let mut err = std::io::stderr().lock();
    writeln!(err, "\n{id} {verdict}: {detail}").expect("stderr");
    drop(err);
    assert!(pass, "{id} failed: {detail}");
}

pub fn inside_box(pose: &BoxPose, shape: &BoxShape, p: Vec2) -> bool {
    let (sn, c) = pose.angle_deg().to_radians().sin_cos();
    let (dx, dy) = (p.x - pose.center.x, p.y - pose.center.y);
    (dx * c + dy * sn).abs() <= shape.length / 2.0 && (-dx * sn + dy * c).abs() <= shape.width / 2.0
}

/// Disk/box overlap by sampling: the disk center or any of 3600 boundary
/// points inside the box, or any box corner inside the disk.
pub fn sampled_overlap(pose: &BoxPose, shape: &BoxShape, center: Vec2, r: f64) -> bool {
    let (sn, c) = pose.angle_deg().to_radians().sin_cos();
    let (hl, hw) = (shape.length / 2.0, shape.width / 2.0);
    inside_box(pose, shape, center)
        || [(hl, hw), (-hl, hw), (-hl, -hw), (hl, -hw)].iter().any(|(u, v)| {
            Vec2::new(pose.center.x + u * c - v * sn, pose.center.y + u * sn + v * c).distance(center) <= r
        })
        || (0..3600).any(|k| {
            let t = std::f64::consts::TAU * k as f64 / 3600.0;
            inside_box(pose, shape, Vec2::new(center.x + r * t.cos(), center.y + r * t.sin()))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_oracle_basics() {
        let pose = BoxPose::at(0.0, 0.0, 0.0);
        let shape = BoxShape::default();
        assert!(sampled_overlap(&pose, &shape, Vec2::new(0.0, 0.0), 5.0));
        assert!(sampled_overlap(&pose, &shape, Vec2::new(65.0, 0.0), 10.0));
        assert!(!sampled_overlap(&pose, &shape, Vec2::new(75.0, 0.0), 10.0));
        // box entirely inside a large disk
        assert!(sampled_overlap(&pose, &shape, Vec2::new(5.0, 5.0), 200.0));
    }
}
