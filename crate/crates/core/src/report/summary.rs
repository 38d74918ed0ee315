//! Aggregates over a seeds × modes sweep.

use std::fmt::Write as _;

use super::csv::fmt6;
use super::ReportError;
use crate::harness::{AlgorithmMode, RunResult};

/// An inclusive, 1-based range of episodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub first: usize,
    pub last: usize,
}

impl Window {
    pub fn leading(n: usize) -> Self {
        Window { first: 1, last: n }
    }

    pub fn trailing(n: usize, n_episodes: usize) -> Self {
        Window { first: n_episodes.saturating_sub(n) + 1, last: n_episodes }
    }

    pub fn label(&self) -> String {
        format!("{}-{}", self.first, self.last)
    }

    /// Mean of `values` over the window, clamped to what is there.
    pub fn mean(&self, values: &[usize]) -> f64 {
        let hi = self.last.min(values.len());
        let lo = self.first.max(1);
        if lo > hi {
            return f64::NAN;
        }
        let slice = &values[lo - 1..hi];
        slice.iter().sum::<usize>() as f64 / slice.len() as f64
    }
}

pub const EARLY_EPISODES: usize = 10;
pub const LATE_EPISODES: usize = 20;

pub fn median(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        (v[mid - 1] + v[mid]) / 2.0
    }
}

/// How often the cooperative team beat one baseline over the late window.
#[derive(Debug, Clone, PartialEq)]
pub struct RankingCheck {
    pub baseline: AlgorithmMode,
    pub wins: usize,
    pub seeds: usize,
    /// Minimum fraction of seeds expected to be won; `None` means report only.
    pub required: Option<f64>,
}

impl RankingCheck {
    pub fn met(&self) -> bool {
        match self.required {
            Some(f) => self.wins as f64 >= f * self.seeds as f64 - 1e-9,
            None => true,
        }
    }
}

/// The fraction of seeds on which cooperation is expected to beat `baseline`.
pub fn expected_win_fraction(baseline: AlgorithmMode) -> Option<f64> {
    match baseline {
        AlgorithmMode::MultiSeparate => Some(0.8),
        AlgorithmMode::MultiShared => Some(0.7),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonSummary {
    pub modes: Vec<AlgorithmMode>,
    pub n_seeds: usize,
    pub n_episodes: usize,
    /// `per_seed[m][k]`: iteration counts of `modes[m]` on seed `k`.
    pub per_seed: Vec<Vec<Vec<usize>>>,
}

impl ComparisonSummary {
    /// Groups seed-major sweep output by mode.
    pub fn from_runs(runs: &[RunResult]) -> Result<Self, ReportError> {
        let mut modes: Vec<AlgorithmMode> = Vec::new();
        for r in runs {
            if !modes.contains(&r.config.mode) {
                modes.push(r.config.mode);
            }
        }
        if modes.is_empty() {
            return Err(ReportError::Summary("no runs".into()));
        }
        let mut per_seed = vec![Vec::new(); modes.len()];
        for r in runs {
            let m = modes.iter().position(|x| *x == r.config.mode).expect("collected above");
            per_seed[m].push(r.iterations());
        }
        let n_seeds = per_seed[0].len();
        let n_episodes = per_seed[0][0].len();
        let ragged = per_seed
            .iter()
            .any(|s| s.len() != n_seeds || s.iter().any(|it| it.len() != n_episodes));
        if ragged {
            return Err(ReportError::Summary("modes differ in seed or episode counts".into()));
        }
        Ok(ComparisonSummary { modes, n_seeds, n_episodes, per_seed })
    }

    fn index(&self, mode: AlgorithmMode) -> Option<usize> {
        self.modes.iter().position(|m| *m == mode)
    }

    /// Per-episode mean over seeds.
    pub fn mean_curve(&self, mode: AlgorithmMode) -> Option<Vec<f64>> {
        let seeds = &self.per_seed[self.index(mode)?];
        Some(
            (0..self.n_episodes)
                .map(|e| seeds.iter().map(|s| s[e] as f64).sum::<f64>() / seeds.len() as f64)
                .collect(),
        )
    }

    /// Window mean of each seed.
    pub fn window_means(&self, mode: AlgorithmMode, window: Window) -> Option<Vec<f64>> {
        Some(self.per_seed[self.index(mode)?].iter().map(|s| window.mean(s)).collect())
    }

    pub fn early(&self) -> Window {
        Window::leading(EARLY_EPISODES.min(self.n_episodes))
    }

    pub fn late(&self) -> Window {
        Window::trailing(LATE_EPISODES.min(self.n_episodes), self.n_episodes)
    }

    /// Cooperative vs every other mode present, seed by seed, on the late window.
    pub fn ranking(&self) -> Vec<RankingCheck> {
        let Some(coop) = self.window_means(AlgorithmMode::Cooperative, self.late()) else {
            return Vec::new();
        };
        self.modes
            .iter()
            .filter(|m| **m != AlgorithmMode::Cooperative)
            .map(|&baseline| {
                let other = self.window_means(baseline, self.late()).expect("mode present");
                RankingCheck {
                    baseline,
                    wins: coop.iter().zip(&other).filter(|(c, o)| c < o).count(),
                    seeds: self.n_seeds,
                    required: expected_win_fraction(baseline),
                }
            })
            .collect()
    }

    pub fn ranking_discrepancy(&self) -> bool {
        self.ranking().iter().any(|r| !r.met())
    }

    /// `episode,<mode>,...` with the per-episode mean over seeds.
    pub fn summary_csv(&self) -> String {
        let curves: Vec<Vec<f64>> = self.modes.iter().map(|m| self.mean_curve(*m).expect("own mode")).collect();
        let mut out = String::from("episode");
        for m in &self.modes {
            write!(out, ",{}", m.name()).expect("write to String");
        }
        for e in 0..self.n_episodes {
            write!(out, "\n{}", e + 1).expect("write to String");
            for c in &curves {
                write!(out, ",{}", fmt6(c[e])).expect("write to String");
            }
        }
        out
    }

    /// `mode,window,seeds,mean,median` over the per-seed window means.
    pub fn stats_csv(&self) -> String {
        let mut out = String::from("mode,window,seeds,mean,median");
        for m in &self.modes {
            for w in [self.early(), self.late()] {
                let means = self.window_means(*m, w).expect("own mode");
                let mean = means.iter().sum::<f64>() / means.len() as f64;
                write!(out, "\n{},{},{},{},{}", m.name(), w.label(), self.n_seeds, fmt6(mean), fmt6(median(&means)))
                    .expect("write to String");
            }
        }
        out
    }

    /// `baseline,wins,seeds,required,met`; `required` is empty when not checked.
    pub fn ranking_csv(&self) -> String {
        let mut out = String::from("baseline,wins,seeds,required,met");
        for r in self.ranking() {
            let required = r.required.map(|f| f.to_string()).unwrap_or_default();
            write!(out, "\n{},{},{},{},{}", r.baseline.name(), r.wins, r.seeds, required, r.met()).expect("write to String");
        }
        out
    }
}

/// Reads `summary_csv` output back as `(mode name, curve)` series.
pub fn parse_summary_csv(text: &str) -> Result<Vec<(String, Vec<f64>)>, ReportError> {
    let bad = |line: usize, message: &str| ReportError::Malformed {
        file: "comparison_summary.csv".into(),
        line,
        message: message.to_string(),
    };
    let mut lines = text.lines().filter(|l| !l.is_empty());
    let header: Vec<&str> = lines.next().ok_or_else(|| bad(1, "empty file"))?.split(',').collect();
    if header.first() != Some(&"episode") || header.len() < 2 {
        return Err(bad(1, "expected `episode,<mode>,...` header"));
    }
    let mut series: Vec<(String, Vec<f64>)> = header[1..].iter().map(|h| (h.to_string(), Vec::new())).collect();
    for (i, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != header.len() {
            return Err(bad(i + 2, "wrong field count"));
        }
        for (s, f) in series.iter_mut().zip(&fields[1..]) {
            s.1.push(f.parse().map_err(|_| bad(i + 2, "bad number"))?);
        }
    }
    Ok(series)
}
