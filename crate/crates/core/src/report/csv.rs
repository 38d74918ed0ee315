//! Per-episode iteration counts and box-center traces as CSV.
//!
//! LF line endings, no trailing blank line, fixed six-decimal floats.

use std::fmt::Write as _;

use super::ReportError;
use crate::harness::{EpisodeLog, RunResult};

pub const ITERATIONS_HEADER: &str = "episode,iterations,reached_goal,cumulative_reward";
pub const TRACE_HEADER: &str = "episode,iteration,sub_step,x,y,angle_deg";

/// Six decimals, with negative zero written as `0.000000`.
pub fn fmt6(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

fn join_lines(lines: Vec<String>) -> String {
    lines.join("\n")
}

pub fn iterations_csv(result: &RunResult) -> String {
    let mut lines = vec![ITERATIONS_HEADER.to_string()];
    for e in &result.episodes {
        lines.push(format!(
            "{},{},{},{}",
            e.episode_index,
            e.iterations_used,
            e.reached_goal,
            fmt6(e.cumulative_reward)
        ));
    }
    join_lines(lines)
}

/// Which episodes go into a trace file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceSelection {
    /// One episode, 1-based.
    Episode(usize),
    All,
}

pub fn select_episodes(result: &RunResult, selection: TraceSelection) -> Result<Vec<&EpisodeLog>, ReportError> {
    match selection {
        TraceSelection::All => Ok(result.episodes.iter().collect()),
        TraceSelection::Episode(k) => {
            if k == 0 || k > result.episodes.len() {
                Err(ReportError::EpisodeOutOfRange { requested: k, available: result.episodes.len() })
            } else {
                Ok(vec![&result.episodes[k - 1]])
            }
        }
    }
}

pub fn trace_csv(result: &RunResult, selection: TraceSelection) -> Result<String, ReportError> {
    let mut out = String::from(TRACE_HEADER);
    for e in select_episodes(result, selection)? {
        for p in &e.trace {
            write!(
                out,
                "\n{},{},{},{},{},{}",
                e.episode_index,
                p.iteration,
                p.sub_step,
                fmt6(p.pose.center.x),
                fmt6(p.pose.center.y),
                fmt6(p.pose.angle_deg())
            )
            .expect("write to String");
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationRow {
    pub episode: usize,
    pub iterations: usize,
    pub reached_goal: bool,
    pub cumulative_reward: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub episode: usize,
    pub iteration: usize,
    pub sub_step: usize,
    pub x: f64,
    pub y: f64,
    pub angle_deg: f64,
}

fn data_rows<'a>(file: &'a str, text: &'a str, header: &str, columns: usize) -> Result<Vec<(usize, Vec<&'a str>)>, ReportError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == header => {}
        _ => return Err(ReportError::Malformed { file: file.to_string(), line: 1, message: format!("expected header `{header}`") }),
    }
    lines
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, l)| {
            let fields: Vec<&str> = l.split(',').collect();
            if fields.len() != columns {
                return Err(ReportError::Malformed {
                    file: file.to_string(),
                    line: i + 1,
                    message: format!("expected {columns} fields, got {}", fields.len()),
                });
            }
            Ok((i + 1, fields))
        })
        .collect()
}

fn field<T: std::str::FromStr>(file: &str, line: usize, value: &str) -> Result<T, ReportError> {
    value.parse().map_err(|_| ReportError::Malformed {
        file: file.to_string(),
        line,
        message: format!("bad value `{value}`"),
    })
}

pub fn parse_iterations_csv(text: &str) -> Result<Vec<IterationRow>, ReportError> {
    const F: &str = "iterations.csv";
    data_rows(F, text, ITERATIONS_HEADER, 4)?
        .into_iter()
        .map(|(line, f)| {
            Ok(IterationRow {
                episode: field(F, line, f[0])?,
                iterations: field(F, line, f[1])?,
                reached_goal: field(F, line, f[2])?,
                cumulative_reward: field(F, line, f[3])?,
            })
        })
        .collect()
}

pub fn parse_trace_csv(text: &str) -> Result<Vec<TraceRow>, ReportError> {
    const F: &str = "trace.csv";
    data_rows(F, text, TRACE_HEADER, 6)?
        .into_iter()
        .map(|(line, f)| {
            Ok(TraceRow {
                episode: field(F, line, f[0])?,
                iteration: field(F, line, f[1])?,
                sub_step: field(F, line, f[2])?,
                x: field(F, line, f[3])?,
                y: field(F, line, f[4])?,
                angle_deg: field(F, line, f[5])?,
            })
        })
        .collect()
}
