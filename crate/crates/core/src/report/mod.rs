//! Output formats: config files, CSV metrics, Q-table snapshots, manifests
//! and SVG figures, plus the directory layouts written by `run` and
//! `compare`.

mod config_file;
mod csv;
mod manifest;
mod qtable_file;
mod summary;
mod svg;

use std::path::Path;

use thiserror::Error;

pub use config_file::{config_hash, load_config, parse_config, to_config_text, validate};
pub use csv::{
    fmt6, iterations_csv, parse_iterations_csv, parse_trace_csv, select_episodes, trace_csv, IterationRow,
    TraceRow, TraceSelection, ITERATIONS_HEADER, TRACE_HEADER,
};
pub use manifest::{sha256_hex, RunManifest, MANIFEST_FILE};
pub use qtable_file::{parse_qtable, qtable_text};
pub use summary::{
    expected_win_fraction, median, parse_summary_csv, ComparisonSummary, RankingCheck, Window, EARLY_EPISODES,
    LATE_EPISODES,
};
pub use svg::{arena_path_svg, comparison_overlay_svg, iterations_curve_svg, PlotKind};

use crate::harness::{HarnessError, RunResult};

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("invalid `{field}`: {message}")]
    Invalid { field: String, message: String },
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{file}:{line}: {message}")]
    Malformed { file: String, line: usize, message: String },
    #[error("episode {requested} out of range (run has {available})")]
    EpisodeOutOfRange { requested: usize, available: usize },
    #[error("unknown plot kind `{0}` (expected one of: arena_path, iterations_curve, comparison_overlay)")]
    UnknownPlotKind(String),
    #[error("manifest self-check failed for: {}", .0.join(", "))]
    ManifestMismatch(Vec<String>),
    #[error("{0}")]
    Summary(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Harness(#[from] HarnessError),
}

impl ReportError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        ReportError::Io { path: path.display().to_string(), source }
    }
}

pub const ITERATIONS_FILE: &str = "iterations.csv";
pub const TRACE_FILE: &str = "trace.csv";
pub const CONFIG_FILE: &str = "config.txt";
pub const SUMMARY_FILE: &str = "comparison_summary.csv";
pub const STATS_FILE: &str = "comparison_stats.csv";
pub const RANKING_FILE: &str = "ranking.csv";
pub const OVERLAY_FILE: &str = "comparison_overlay.svg";

pub fn qtable_file_name(table_index: usize) -> String {
    format!("qtable_{table_index}.txt")
}

fn finish(manifest: RunManifest) -> Result<RunManifest, ReportError> {
    manifest.write()?;
    let mismatched = manifest.verify()?;
    if mismatched.is_empty() {
        Ok(manifest)
    } else {
        Err(ReportError::ManifestMismatch(mismatched))
    }
}

fn emit_run_files(manifest: &mut RunManifest, prefix: &str, result: &RunResult) -> Result<(), ReportError> {
    let hash = config_hash(&result.config);
    manifest.emit(&format!("{prefix}{CONFIG_FILE}"), to_config_text(&result.config).as_bytes())?;
    manifest.emit(&format!("{prefix}{ITERATIONS_FILE}"), iterations_csv(result).as_bytes())?;
    manifest.emit(&format!("{prefix}{TRACE_FILE}"), trace_csv(result, TraceSelection::All)?.as_bytes())?;
    for (k, table) in result.final_tables.iter().enumerate() {
        manifest.emit(&format!("{prefix}{}", qtable_file_name(k)), qtable_text(table, &hash).as_bytes())?;
    }
    Ok(())
}

/// Writes one run's outputs into `out_dir`: config.txt, iterations.csv,
/// trace.csv (every episode), one qtable file per table, and manifest.txt,
/// which is verified against the files before returning.
pub fn write_run(result: &RunResult, config_path: Option<&Path>, out_dir: &Path) -> Result<RunManifest, ReportError> {
    let mut manifest = RunManifest::new(config_path, out_dir);
    emit_run_files(&mut manifest, "", result)?;
    finish(manifest)
}

/// Run directory name inside a comparison output.
pub fn run_dir_name(seed_index: usize, result: &RunResult) -> String {
    format!("seed{seed_index:02}_{}", result.config.mode.name())
}

/// Writes a sweep: one directory per run, the summary, stats and ranking
/// CSVs, the overlay figure, and a single manifest covering all of it.
pub fn write_comparison(
    runs: &[RunResult],
    config_path: Option<&Path>,
    out_dir: &Path,
) -> Result<(ComparisonSummary, RunManifest), ReportError> {
    let summary = ComparisonSummary::from_runs(runs)?;
    let mut manifest = RunManifest::new(config_path, out_dir);
    for (i, r) in runs.iter().enumerate() {
        let seed_index = i / summary.modes.len();
        emit_run_files(&mut manifest, &format!("{}/", run_dir_name(seed_index, r)), r)?;
    }
    let summary_text = summary.summary_csv();
    manifest.emit(SUMMARY_FILE, summary_text.as_bytes())?;
    manifest.emit(STATS_FILE, summary.stats_csv().as_bytes())?;
    manifest.emit(RANKING_FILE, summary.ranking_csv().as_bytes())?;
    let title = format!("mean iterations per episode over {} seeds", summary.n_seeds);
    manifest.emit(OVERLAY_FILE, comparison_overlay_svg(&parse_summary_csv(&summary_text)?, &title).as_bytes())?;
    Ok((summary, finish(manifest)?))
}
