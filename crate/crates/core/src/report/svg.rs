//! SVG 1.1 figures: the arena with box paths, learning curves, and the
//! four-mode overlay.

use std::fmt::Write as _;
use std::str::FromStr;

use super::ReportError;
use crate::world::{BoxPose, BoxShape, Vec2, World};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    ArenaPath,
    IterationsCurve,
    ComparisonOverlay,
}

impl PlotKind {
    pub const ALL: [PlotKind; 3] = [PlotKind::ArenaPath, PlotKind::IterationsCurve, PlotKind::ComparisonOverlay];

    pub fn name(self) -> &'static str {
        match self {
            PlotKind::ArenaPath => "arena_path",
            PlotKind::IterationsCurve => "iterations_curve",
            PlotKind::ComparisonOverlay => "comparison_overlay",
        }
    }
}

impl FromStr for PlotKind {
    type Err = ReportError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PlotKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| ReportError::UnknownPlotKind(s.to_string()))
    }
}

const PALETTE: [&str; 4] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd"];

fn open(out: &mut String, width: f64, height: f64, view: (f64, f64, f64, f64)) {
    write!(
        out,
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width:.0}\" height=\"{height:.0}\" viewBox=\"{:.2} {:.2} {:.2} {:.2}\">\n",
        view.0, view.1, view.2, view.3
    )
    .expect("write to String");
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn points(pts: impl Iterator<Item = (f64, f64)>) -> String {
    pts.map(|(x, y)| format!("{x:.2},{y:.2}")).collect::<Vec<_>>().join(" ")
}

fn box_corners(pose: &BoxPose, shape: &BoxShape) -> [Vec2; 4] {
    let (s, c) = pose.angle_deg().to_radians().sin_cos();
    let (hl, hw) = (shape.length / 2.0, shape.width / 2.0);
    [(hl, hw), (-hl, hw), (-hl, -hw), (hl, -hw)].map(|(u, v)| Vec2 {
        x: pose.center.x + u * c - v * s,
        y: pose.center.y + u * s + v * c,
    })
}

/// The arena, obstacles, goal annulus, and one polyline per path of box
/// poses, with the box outline drawn at each path's first and last pose.
pub fn arena_path_svg(world: &World, paths: &[Vec<BoxPose>]) -> String {
    let reach = world.shape.length.hypot(world.shape.width) / 2.0;
    let (mut x0, mut y0, mut x1, mut y1) = (0.0f64, 0.0f64, world.arena.width, world.arena.height);
    for p in paths.iter().flatten() {
        x0 = x0.min(p.center.x - reach);
        x1 = x1.max(p.center.x + reach);
        y0 = y0.min(p.center.y - reach);
        y1 = y1.max(p.center.y + reach);
    }
    let pad = 20.0;
    let (x0, y0, x1, y1) = (x0 - pad, y0 - pad, x1 + pad, y1 + pad);
    // screen y grows downward
    let map = |v: Vec2| (v.x, y0 + y1 - v.y);

    let mut out = String::new();
    open(&mut out, x1 - x0, y1 - y0, (x0, y0, x1 - x0, y1 - y0));
    let (ax, ay) = map(Vec2 { x: 0.0, y: world.arena.height });
    writeln!(
        out,
        "<rect class=\"arena\" x=\"{ax:.2}\" y=\"{ay:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"none\" stroke=\"#444\" stroke-width=\"2\"/>",
        world.arena.width, world.arena.height
    )
    .expect("write to String");
    for o in &world.obstacles {
        let (cx, cy) = map(o.center);
        writeln!(out, "<circle class=\"obstacle\" cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"{:.2}\" fill=\"#555\"/>", o.radius)
            .expect("write to String");
    }
    let (gx, gy) = map(world.goal.center);
    let ring = |r: f64| format!("M {:.2},{gy:.2} A {r:.2},{r:.2} 0 1,0 {:.2},{gy:.2} A {r:.2},{r:.2} 0 1,0 {:.2},{gy:.2} Z", gx - r, gx + r, gx - r);
    let (outer, inner) = (world.goal.radius, world.goal.radius * 0.6);
    writeln!(
        out,
        "<path class=\"goal\" d=\"{} {}\" fill=\"#d62728\" fill-rule=\"evenodd\"/>",
        ring(outer),
        ring(inner)
    )
    .expect("write to String");
    for (k, path) in paths.iter().enumerate() {
        let colour = PALETTE[k % PALETTE.len()];
        for pose in [path.first(), path.last()].into_iter().flatten() {
            let corners = box_corners(pose, &world.shape);
            writeln!(
                out,
                "<polygon class=\"box\" points=\"{}\" fill=\"none\" stroke=\"{colour}\" stroke-opacity=\"0.6\"/>",
                points(corners.iter().map(|c| map(*c)))
            )
            .expect("write to String");
        }
        writeln!(
            out,
            "<polyline class=\"path\" points=\"{}\" fill=\"none\" stroke=\"{colour}\" stroke-width=\"1.5\"/>",
            points(path.iter().map(|p| map(p.center)))
        )
        .expect("write to String");
    }
    out.push_str("</svg>\n");
    out
}

const CHART_W: f64 = 720.0;
const CHART_H: f64 = 440.0;
const MARGIN: f64 = 60.0;

struct Frame {
    n: usize,
    y_max: f64,
    y_step: f64,
}

/// 1, 2 or 5 times a power of ten, at least `raw`.
fn nice_step(raw: f64) -> f64 {
    let magnitude = 10f64.powf(raw.log10().floor());
    [1.0, 2.0, 5.0, 10.0].into_iter().map(|m| m * magnitude).find(|s| *s >= raw).unwrap_or(10.0 * magnitude)
}

impl Frame {
    fn new(n: usize, data_max: f64) -> Self {
        let data_max = if data_max > 0.0 && data_max.is_finite() { data_max } else { 1.0 };
        let y_step = nice_step(data_max / 5.0);
        Frame { n: n.max(1), y_max: (data_max / y_step).ceil() * y_step, y_step }
    }

    fn x(&self, episode: usize) -> f64 {
        let span = (self.n - 1).max(1) as f64;
        MARGIN + (episode.saturating_sub(1)) as f64 / span * (CHART_W - 2.0 * MARGIN)
    }

    fn y(&self, v: f64) -> f64 {
        CHART_H - MARGIN - v / self.y_max * (CHART_H - 2.0 * MARGIN)
    }

    fn axes(&self, out: &mut String, title: &str) {
        let (left, bottom) = (MARGIN, CHART_H - MARGIN);
        writeln!(
            out,
            "<g class=\"axes\" stroke=\"#000\" fill=\"none\">\n<line x1=\"{left}\" y1=\"{bottom}\" x2=\"{}\" y2=\"{bottom}\"/>\n<line x1=\"{left}\" y1=\"{MARGIN}\" x2=\"{left}\" y2=\"{bottom}\"/>\n</g>",
            CHART_W - MARGIN
        )
        .expect("write to String");
        out.push_str("<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#000\">\n");
        let ticks = (self.y_max / self.y_step).round() as usize;
        for i in 0..=ticks {
            let v = self.y_step * i as f64;
            writeln!(out, "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{v:.0}</text>", left - 6.0, self.y(v) + 4.0)
                .expect("write to String");
        }
        let step = (self.n / 8).max(1);
        for e in (1..=self.n).filter(|e| e % step == 0 || *e == 1) {
            writeln!(out, "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{e}</text>", self.x(e), bottom + 16.0)
                .expect("write to String");
        }
        out.push_str("</g>\n");
        writeln!(
            out,
            "<text class=\"title\" x=\"{:.2}\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">{}</text>",
            CHART_W / 2.0,
            escape(title)
        )
        .expect("write to String");
        writeln!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">episode</text>",
            CHART_W / 2.0,
            CHART_H - 20.0
        )
        .expect("write to String");
        writeln!(
            out,
            "<text x=\"16\" y=\"{:.2}\" transform=\"rotate(-90 16 {:.2})\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">iterations</text>",
            CHART_H / 2.0,
            CHART_H / 2.0
        )
        .expect("write to String");
    }

    fn polyline(&self, out: &mut String, values: &[f64], colour: &str, class: &str) {
        writeln!(
            out,
            "<polyline class=\"{class}\" points=\"{}\" fill=\"none\" stroke=\"{colour}\" stroke-width=\"1.5\"/>",
            points(values.iter().enumerate().map(|(i, v)| (self.x(i + 1), self.y(*v))))
        )
        .expect("write to String");
    }
}

/// Iterations per episode as one polyline of `iterations.len()` points.
pub fn iterations_curve_svg(iterations: &[usize], title: &str) -> String {
    let values: Vec<f64> = iterations.iter().map(|v| *v as f64).collect();
    let frame = Frame::new(values.len(), values.iter().cloned().fold(0.0, f64::max));
    let mut out = String::new();
    open(&mut out, CHART_W, CHART_H, (0.0, 0.0, CHART_W, CHART_H));
    frame.axes(&mut out, title);
    frame.polyline(&mut out, &values, PALETTE[0], "curve");
    out.push_str("</svg>\n");
    out
}

/// One polyline per named series plus a legend.
pub fn comparison_overlay_svg(series: &[(String, Vec<f64>)], title: &str) -> String {
    let n = series.iter().map(|s| s.1.len()).max().unwrap_or(1);
    let y_max = series.iter().flat_map(|s| s.1.iter().cloned()).fold(0.0, f64::max);
    let frame = Frame::new(n, y_max);
    let mut out = String::new();
    open(&mut out, CHART_W, CHART_H, (0.0, 0.0, CHART_W, CHART_H));
    frame.axes(&mut out, title);
    for (k, (_, values)) in series.iter().enumerate() {
        frame.polyline(&mut out, values, PALETTE[k % PALETTE.len()], "curve");
    }
    out.push_str("<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n");
    for (k, (name, _)) in series.iter().enumerate() {
        let y = MARGIN + 8.0 + 18.0 * k as f64;
        let x = CHART_W - MARGIN - 140.0;
        let colour = PALETTE[k % PALETTE.len()];
        writeln!(
            out,
            "<line x1=\"{x:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"{colour}\" stroke-width=\"2\"/>\n<text x=\"{:.2}\" y=\"{:.2}\">{}</text>",
            x + 24.0,
            x + 30.0,
            y + 4.0,
            escape(name)
        )
        .expect("write to String");
    }
    out.push_str("</g>\n</svg>\n");
    out
}
