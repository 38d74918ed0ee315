use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use boxpush::harness::{build_world, run_comparison_with, run_experiment, AlgorithmMode, Execution, ExperimentConfig};
use boxpush::report::{
    self, arena_path_svg, comparison_overlay_svg, iterations_curve_svg, load_config, parse_iterations_csv,
    parse_summary_csv, parse_trace_csv, write_comparison, write_run, ComparisonSummary,
};
use boxpush::world::BoxPose;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "boxpush", version, about = "Q-learning box-pushing experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and write its outputs.
    Run {
        /// Flat `key = value` config; defaults apply when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Overrides the config's mode.
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long)]
        obstacle_seed: Option<u64>,
        #[arg(long)]
        policy_seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run all four modes over several seeds and summarize.
    Compare {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        seeds: usize,
        #[arg(long)]
        out: PathBuf,
        /// Run jobs one at a time instead of on the thread pool.
        #[arg(long)]
        sequential: bool,
    },
    /// Render an SVG from a run or compare output directory.
    Plot {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        out: PathBuf,
        /// Episode for arena_path: a 1-based index or `all`. Defaults to the last.
        #[arg(long)]
        episode: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Single,
    Separate,
    Shared,
    Cooperative,
}

impl From<Mode> for AlgorithmMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Single => AlgorithmMode::SingleAgent,
            Mode::Separate => AlgorithmMode::MultiSeparate,
            Mode::Shared => AlgorithmMode::MultiShared,
            Mode::Cooperative => AlgorithmMode::Cooperative,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Kind {
    ArenaPath,
    IterationsCurve,
    ComparisonOverlay,
}

fn base_config(path: Option<&Path>) -> Result<ExperimentConfig> {
    match path {
        Some(p) => load_config(p).with_context(|| format!("loading {}", p.display())),
        None => Ok(ExperimentConfig::default()),
    }
}

fn read(dir: &Path, name: &str) -> Result<String> {
    let path = dir.join(name);
    std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))
}

fn cmd_run(
    config: Option<PathBuf>,
    mode: Option<Mode>,
    obstacle_seed: Option<u64>,
    policy_seed: Option<u64>,
    out: PathBuf,
) -> Result<()> {
    let mut cfg = base_config(config.as_deref())?;
    if let Some(m) = mode {
        cfg.mode = m.into();
    }
    if let Some(s) = obstacle_seed {
        cfg.obstacle_seed = s;
    }
    if let Some(s) = policy_seed {
        cfg.policy_seed = s;
    }
    let result = run_experiment(&cfg)?;
    let manifest = write_run(&result, config.as_deref(), &out)?;
    let reached = result.episodes.iter().filter(|e| e.reached_goal).count();
    println!(
        "{} mode: goal reached in {reached}/{} episodes, last episode took {} iterations",
        cfg.mode,
        result.episodes.len(),
        result.episodes.last().map_or(0, |e| e.iterations_used)
    );
    println!("wrote {} files and {} to {}", manifest.files.len(), report::MANIFEST_FILE, out.display());
    Ok(())
}

fn cmd_compare(config: Option<PathBuf>, seeds: usize, out: PathBuf, sequential: bool) -> Result<()> {
    if seeds == 0 {
        bail!("--seeds must be at least 1");
    }
    let cfg = base_config(config.as_deref())?;
    let execution = if sequential { Execution::Sequential } else { Execution::Parallel };
    let runs = run_comparison_with(&cfg, &AlgorithmMode::ALL, seeds, execution)?;
    let (summary, manifest) = write_comparison(&runs, config.as_deref(), &out)?;
    print_summary(&summary);
    println!("wrote {} files and {} to {}", manifest.files.len(), report::MANIFEST_FILE, out.display());
    Ok(())
}

fn print_summary(summary: &ComparisonSummary) {
    let (early, late) = (summary.early(), summary.late());
    for m in &summary.modes {
        let mean = |w| {
            let v: Vec<f64> = summary.window_means(*m, w).expect("own mode");
            v.iter().sum::<f64>() / v.len() as f64
        };
        println!(
            "{:<12} episodes {}: {:8.1}   episodes {}: {:8.1}",
            m.name(),
            early.label(),
            mean(early),
            late.label(),
            mean(late)
        );
    }
    for r in summary.ranking() {
        let line = format!(
            "cooperative beat {} on {}/{} seeds (episodes {})",
            r.baseline,
            r.wins,
            r.seeds,
            late.label()
        );
        match r.required {
            Some(f) if !r.met() => eprintln!("warning: ranking discrepancy: {line}, expected at least {:.0}%", f * 100.0),
            _ => println!("{line}"),
        }
    }
}

fn cmd_plot(input: PathBuf, kind: Kind, out: PathBuf, episode: Option<String>) -> Result<()> {
    let svg = match kind {
        Kind::ArenaPath => {
            let cfg = report::parse_config(&read(&input, report::CONFIG_FILE)?)?;
            let world = build_world(&cfg)?;
            let rows = parse_trace_csv(&read(&input, report::TRACE_FILE)?)?;
            let last = rows.last().map(|r| r.episode).context("trace has no records")?;
            let wanted: Option<usize> = match episode.as_deref() {
                None => Some(last),
                Some("all") => None,
                Some(s) => Some(s.parse().with_context(|| format!("--episode expects a number or `all`, got `{s}`"))?),
            };
            let mut paths: Vec<Vec<BoxPose>> = Vec::new();
            let mut current = None;
            for r in rows.iter().filter(|r| wanted.is_none_or(|k| r.episode == k)) {
                if current != Some(r.episode) {
                    paths.push(Vec::new());
                    current = Some(r.episode);
                }
                paths.last_mut().expect("pushed above").push(BoxPose::at(r.x, r.y, r.angle_deg));
            }
            if paths.is_empty() {
                bail!("episode {} not in trace (episodes 1-{last})", wanted.unwrap_or(0));
            }
            arena_path_svg(&world, &paths)
        }
        Kind::IterationsCurve => {
            let rows = parse_iterations_csv(&read(&input, report::ITERATIONS_FILE)?)?;
            let iterations: Vec<usize> = rows.iter().map(|r| r.iterations).collect();
            iterations_curve_svg(&iterations, "iterations per episode")
        }
        Kind::ComparisonOverlay => {
            let series = parse_summary_csv(&read(&input, report::SUMMARY_FILE)?)?;
            comparison_overlay_svg(&series, "mean iterations per episode")
        }
    };
    std::fs::write(&out, svg).with_context(|| format!("writing {}", out.display()))?;
    println!("wrote {}", out.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run { config, mode, obstacle_seed, policy_seed, out } => {
            cmd_run(config, mode, obstacle_seed, policy_seed, out)
        }
        Command::Compare { config, seeds, out, sequential } => cmd_compare(config, seeds, out, sequential),
        Command::Plot { input, kind, out, episode } => cmd_plot(input, kind, out, episode),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
