use std::path::Path;
use std::process::{Command, Output};

fn boxpush(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boxpush")).args(args).output().expect("spawn boxpush")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn run_with_defaults_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let o = boxpush(&["run", "--out", path(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for f in ["iterations.csv", "trace.csv", "qtable_0.txt", "manifest.txt", "config.txt"] {
        assert!(out.join(f).is_file(), "missing {f}");
    }
    let iterations = std::fs::read_to_string(out.join("iterations.csv")).unwrap();
    assert_eq!(iterations.lines().count(), 81);
}

#[test]
fn run_is_byte_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.cfg");
    std::fs::write(&cfg, "# short run\nn_episodes = 12\n").unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        let o = boxpush(&[
            "run", "--config", path(&cfg), "--mode", "shared", "--obstacle-seed", "3", "--policy-seed", "9", "--out",
            path(out),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    for f in ["iterations.csv", "trace.csv", "qtable_0.txt", "config.txt"] {
        assert_eq!(std::fs::read(a.join(f)).unwrap(), std::fs::read(b.join(f)).unwrap(), "{f} differs");
    }
    let config = std::fs::read_to_string(a.join("config.txt")).unwrap();
    assert!(config.contains("mode = shared\n") && config.contains("obstacle_seed = 3\n"));
    assert!(config.contains("n_episodes = 12\n"));
}

#[test]
fn unknown_mode_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = boxpush(&["run", "--mode", "both", "--out", path(dir.path())]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    for m in ["single", "separate", "shared", "cooperative"] {
        assert!(err.contains(m), "mode list missing {m}: {err}");
    }
}

#[test]
fn bad_config_is_a_runtime_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "epsilon = 1.5\n").unwrap();
    let o = boxpush(&["run", "--config", path(&cfg), "--out", path(&dir.path().join("x"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("epsilon"));

    let o = boxpush(&["run", "--config", path(&dir.path().join("missing.cfg")), "--out", path(dir.path())]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn missing_subcommand_is_a_usage_error() {
    assert_eq!(boxpush(&[]).status.code(), Some(2));
    assert_eq!(boxpush(&["plot", "--in", ".", "--kind", "heatmap", "--out", "x.svg"]).status.code(), Some(2));
}

#[test]
fn compare_then_plot() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.cfg");
    std::fs::write(&cfg, "n_episodes = 6\n").unwrap();
    let out = dir.path().join("cmp");
    let o = boxpush(&["compare", "--config", path(&cfg), "--seeds", "2", "--out", path(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let run_dirs = std::fs::read_dir(&out).unwrap().filter(|e| e.as_ref().unwrap().path().is_dir()).count();
    assert_eq!(run_dirs, 8);
    let summary = std::fs::read_to_string(out.join("comparison_summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 7);
    assert!(summary.starts_with("episode,single,separate,shared,cooperative\n"));

    let cases = [
        (out.clone(), "comparison_overlay", None),
        (out.join("seed00_single"), "iterations_curve", None),
        (out.join("seed01_cooperative"), "arena_path", None),
        (out.join("seed01_cooperative"), "arena_path", Some("all")),
        (out.join("seed01_cooperative"), "arena_path", Some("2")),
    ];
    for (input, kind, episode) in cases {
        let svg = dir.path().join(format!("{kind}.svg"));
        let mut args = vec!["plot", "--in", path(&input), "--kind", kind, "--out", path(&svg)];
        if let Some(e) = episode {
            args.extend(["--episode", e]);
        }
        let o = boxpush(&args);
        assert!(o.status.success(), "{kind}: {}", String::from_utf8_lossy(&o.stderr));
        let text = std::fs::read_to_string(&svg).unwrap();
        assert!(text.starts_with("<?xml") && text.trim_end().ends_with("</svg>"));
    }

    let svg = dir.path().join("none.svg");
    let o = boxpush(&[
        "plot", "--in", path(&out.join("seed00_single")), "--kind", "arena_path", "--episode", "99", "--out", path(&svg),
    ]);
    assert_eq!(o.status.code(), Some(1));
}
