//! Flat `key = value` config files.
//!
//! One pair per line; `#` starts a comment; blank lines are ignored. Every
//! key is optional and falls back to the defaults of
//! [`ExperimentConfig::default`]. [`to_config_text`] writes the canonical
//! form (every key, fixed order), which is also what the config hash covers.

use std::fmt::Write as _;
use std::path::Path;

use sha2::{Digest, Sha256};

use super::ConfigError;
use crate::harness::{AgentOrder, ExperimentConfig, HarnessError, NeighborPairs};
use crate::qlearn::{EmptyNeighborRule, NeighborAggregate};
use crate::world::{AngleFrame, SensingRule};

pub fn load_config(path: &Path) -> Result<ExperimentConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_config(&text)
}

fn parse_num<T: std::str::FromStr>(line: usize, key: &str, value: &str) -> Result<T, ConfigError> {
    value.parse().map_err(|_| ConfigError::Parse {
        line,
        message: format!("`{key}` expects a number, got `{value}`"),
    })
}

fn parse_choice<T: Copy>(line: usize, key: &str, value: &str, options: &[(&str, T)]) -> Result<T, ConfigError> {
    options
        .iter()
        .find(|(name, _)| *name == value)
        .map(|(_, v)| *v)
        .ok_or_else(|| ConfigError::Parse {
            line,
            message: format!(
                "`{key}` expects one of {}, got `{value}`",
                options.iter().map(|(n, _)| *n).collect::<Vec<_>>().join("|")
            ),
        })
}

const FRAMES: [(&str, AngleFrame); 2] = [("box", AngleFrame::Box), ("world", AngleFrame::World)];
const RULES: [(&str, SensingRule); 2] = [("center", SensingRule::Center), ("inflate", SensingRule::InflateByRadius)];
const ORDERS: [(&str, AgentOrder); 2] = [("fixed", AgentOrder::Fixed), ("shuffled", AgentOrder::Shuffled)];
const AGGREGATES: [(&str, NeighborAggregate); 2] = [("mean", NeighborAggregate::Mean), ("sum", NeighborAggregate::Sum)];
const PAIRS: [(&str, NeighborPairs); 2] = [("acting", NeighborPairs::Acting), ("own", NeighborPairs::Own)];
const EMPTY: [(&str, EmptyNeighborRule); 2] = [("noop", EmptyNeighborRule::NoOp), ("literal", EmptyNeighborRule::Literal)];

fn name_of<T: PartialEq + Copy>(options: &[(&'static str, T)], value: T) -> &'static str {
    options.iter().find(|(_, v)| *v == value).map(|(n, _)| *n).expect("every variant listed")
}

pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let mut c = ExperimentConfig::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| ConfigError::Parse {
            line,
            message: format!("expected `key = value`, got `{content}`"),
        })?;
        let (key, value) = (key.trim(), value.trim());
        let h = &mut c.hyperparams;
        let a = &mut c.arena;
        match key {
            "alpha" => h.alpha = parse_num(line, key, value)?,
            "gamma" => h.gamma = parse_num(line, key, value)?,
            "epsilon" => h.epsilon = parse_num(line, key, value)?,
            "omega" => h.omega = parse_num(line, key, value)?,
            "c_d" => h.c_d = parse_num(line, key, value)?,
            "w1" => h.w1 = parse_num(line, key, value)?,
            "w2" => h.w2 = parse_num(line, key, value)?,
            "w3" => h.w3 = parse_num(line, key, value)?,
            "arena_width" => a.width = parse_num(line, key, value)?,
            "arena_height" => a.height = parse_num(line, key, value)?,
            "obstacle_x_min" => a.obstacle_region.x_min = parse_num(line, key, value)?,
            "obstacle_x_max" => a.obstacle_region.x_max = parse_num(line, key, value)?,
            "obstacle_y_min" => a.obstacle_region.y_min = parse_num(line, key, value)?,
            "obstacle_y_max" => a.obstacle_region.y_max = parse_num(line, key, value)?,
            "detection_range" => a.sensor.detection_range = parse_num(line, key, value)?,
            "sensing_rule" => a.sensor.rule = parse_choice(line, key, value, &RULES)?,
            "goal_frame" => a.sensor.goal_frame = parse_choice(line, key, value, &FRAMES)?,
            "sector_frame" => a.sensor.sector_frame = parse_choice(line, key, value, &FRAMES)?,
            "box_start_x" => a.box_start.center.x = parse_num(line, key, value)?,
            "box_start_y" => a.box_start.center.y = parse_num(line, key, value)?,
            "box_start_angle" => {
                let angle: f64 = parse_num(line, key, value)?;
                a.box_start = crate::world::BoxPose::new(a.box_start.center, angle);
            }
            "step_length" => a.step_length = parse_num(line, key, value)?,
            "rotation_step" => a.rotation_step = parse_num(line, key, value)?,
            "box_length" => c.shape.length = parse_num(line, key, value)?,
            "box_width" => c.shape.width = parse_num(line, key, value)?,
            "goal_x" => c.goal.center.x = parse_num(line, key, value)?,
            "goal_y" => c.goal.center.y = parse_num(line, key, value)?,
            "goal_radius" => c.goal.radius = parse_num(line, key, value)?,
            "n_obstacles" => c.n_obstacles = parse_num(line, key, value)?,
            "obstacle_radius" => c.obstacle_radius = parse_num(line, key, value)?,
            "max_iterations" => c.max_iterations = parse_num(line, key, value)?,
            "n_episodes" => c.n_episodes = parse_num(line, key, value)?,
            "obstacle_seed" => c.obstacle_seed = parse_num(line, key, value)?,
            "policy_seed" => c.policy_seed = parse_num(line, key, value)?,
            "mode" => {
                c.mode = value.parse().map_err(|e: HarnessError| ConfigError::Parse { line, message: e.to_string() })?
            }
            "agent_order" => c.agent_order = parse_choice(line, key, value, &ORDERS)?,
            "blend" => c.blend.aggregate = parse_choice(line, key, value, &AGGREGATES)?,
            "empty_neighbor_rule" => c.blend.empty = parse_choice(line, key, value, &EMPTY)?,
            "neighbor_pairs" => c.neighbor_pairs = parse_choice(line, key, value, &PAIRS)?,
            _ => return Err(ConfigError::UnknownKey { line, key: key.to_string() }),
        }
    }
    validate(&c)?;
    Ok(c)
}

/// Runs the config's own validation and names the offending field.
pub fn validate(c: &ExperimentConfig) -> Result<(), ConfigError> {
    c.validate().map_err(|e| {
        let field = match &e {
            HarnessError::Param(p) => p.name.to_string(),
            HarnessError::InvalidConfig { field, .. } => field.to_string(),
            _ => "arena".to_string(),
        };
        ConfigError::Invalid { field, message: e.to_string() }
    })
}

/// Canonical text form: every key, fixed order, shortest round-trip floats.
pub fn to_config_text(c: &ExperimentConfig) -> String {
    let h = &c.hyperparams;
    let a = &c.arena;
    let mut out = String::new();
    let mut put = |k: &str, v: String| writeln!(out, "{k} = {v}").expect("write to String");
    put("mode", c.mode.name().to_string());
    put("obstacle_seed", c.obstacle_seed.to_string());
    put("policy_seed", c.policy_seed.to_string());
    put("alpha", h.alpha.to_string());
    put("gamma", h.gamma.to_string());
    put("epsilon", h.epsilon.to_string());
    put("omega", h.omega.to_string());
    put("c_d", h.c_d.to_string());
    put("w1", h.w1.to_string());
    put("w2", h.w2.to_string());
    put("w3", h.w3.to_string());
    put("arena_width", a.width.to_string());
    put("arena_height", a.height.to_string());
    put("obstacle_x_min", a.obstacle_region.x_min.to_string());
    put("obstacle_x_max", a.obstacle_region.x_max.to_string());
    put("obstacle_y_min", a.obstacle_region.y_min.to_string());
    put("obstacle_y_max", a.obstacle_region.y_max.to_string());
    put("n_obstacles", c.n_obstacles.to_string());
    put("obstacle_radius", c.obstacle_radius.to_string());
    put("goal_x", c.goal.center.x.to_string());
    put("goal_y", c.goal.center.y.to_string());
    put("goal_radius", c.goal.radius.to_string());
    put("box_length", c.shape.length.to_string());
    put("box_width", c.shape.width.to_string());
    put("box_start_x", a.box_start.center.x.to_string());
    put("box_start_y", a.box_start.center.y.to_string());
    put("box_start_angle", a.box_start.angle_deg().to_string());
    put("step_length", a.step_length.to_string());
    put("rotation_step", a.rotation_step.to_string());
    put("detection_range", a.sensor.detection_range.to_string());
    put("sensing_rule", name_of(&RULES, a.sensor.rule).to_string());
    put("goal_frame", name_of(&FRAMES, a.sensor.goal_frame).to_string());
    put("sector_frame", name_of(&FRAMES, a.sensor.sector_frame).to_string());
    put("max_iterations", c.max_iterations.to_string());
    put("n_episodes", c.n_episodes.to_string());
    put("agent_order", name_of(&ORDERS, c.agent_order).to_string());
    put("blend", name_of(&AGGREGATES, c.blend.aggregate).to_string());
    put("empty_neighbor_rule", name_of(&EMPTY, c.blend.empty).to_string());
    put("neighbor_pairs", name_of(&PAIRS, c.neighbor_pairs).to_string());
    out
}

/// SHA-256 of the canonical text, hex encoded.
pub fn config_hash(c: &ExperimentConfig) -> String {
    hex::encode(Sha256::digest(to_config_text(c).as_bytes()))
}
