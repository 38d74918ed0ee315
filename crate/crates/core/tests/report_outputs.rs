use boxpush::harness::{run_comparison, run_experiment, AlgorithmMode, ExperimentConfig};
use boxpush::report::{
    arena_path_svg, comparison_overlay_svg, iterations_csv, iterations_curve_svg, parse_iterations_csv,
    parse_qtable, parse_trace_csv, trace_csv, write_run, ComparisonSummary, TraceSelection, RunManifest,
    MANIFEST_FILE,
};

fn svg_root(text: &str) -> roxmltree::Document<'_> {
    let doc = roxmltree::Document::parse(text).expect("well-formed XML");
    let root = doc.root_element();
    assert_eq!(root.tag_name().name(), "svg");
    assert_eq!(root.tag_name().namespace(), Some("http://www.w3.org/2000/svg"));
    assert_eq!(root.attribute("version"), Some("1.1"));
    for attr in ["width", "height", "viewBox"] {
        assert!(root.attribute(attr).is_some(), "missing {attr}");
    }
    doc
}

fn count(doc: &roxmltree::Document, tag: &str) -> usize {
    doc.descendants().filter(|n| n.has_tag_name(tag)).count()
}

#[test]
fn full_length_run_csv() {
    let r = run_experiment(&ExperimentConfig::default()).unwrap();
    let text = iterations_csv(&r);
    assert_eq!(text.lines().count(), 81);
    let rows = parse_iterations_csv(&text).unwrap();
    for (row, e) in rows.iter().zip(&r.episodes) {
        assert_eq!(row.iterations, e.iterations_used);
        assert_eq!(row.reached_goal, e.reached_goal);
        assert!((row.cumulative_reward - e.cumulative_reward).abs() <= 5e-7);
    }
    let all = trace_csv(&r, TraceSelection::All).unwrap();
    let columns: Vec<usize> = all.lines().map(|l| l.split(',').count()).collect();
    assert!(columns.iter().all(|c| *c == 6));
    let trace = parse_trace_csv(&all).unwrap();
    assert_eq!(trace.len(), r.episodes.iter().map(|e| e.trace.len()).sum::<usize>());
    let poses = r.episodes.iter().flat_map(|e| e.trace.iter().map(|p| p.pose));
    for (row, pose) in trace.iter().zip(poses) {
        assert!((row.x - pose.center.x).abs() <= 5e-7 && (row.y - pose.center.y).abs() <= 5e-7);
        assert!((row.angle_deg - pose.angle_deg()).abs() <= 5e-7);
    }
}

#[test]
fn capped_episode_is_reported() {
    let c = ExperimentConfig { max_iterations: 3, n_episodes: 2, ..Default::default() };
    let r = run_experiment(&c).unwrap();
    let rows = parse_iterations_csv(&iterations_csv(&r)).unwrap();
    assert!(rows.iter().all(|row| row.iterations == 3 && !row.reached_goal));
}

#[test]
fn run_directory_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let r = run_experiment(&ExperimentConfig { mode: AlgorithmMode::Cooperative, n_episodes: 5, ..Default::default() })
        .unwrap();
    write_run(&r, None, dir.path()).unwrap();
    let manifest = RunManifest::parse(&std::fs::read_to_string(dir.path().join(MANIFEST_FILE)).unwrap()).unwrap();
    assert!(manifest.verify().unwrap().is_empty());
    let listed: Vec<&str> = manifest.files.iter().map(|(n, _)| n.as_str()).collect();
    let mut on_disk: Vec<String> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n != MANIFEST_FILE)
        .collect();
    on_disk.sort();
    let mut sorted = listed.clone();
    sorted.sort();
    assert_eq!(sorted, on_disk);
    for (k, table) in r.final_tables.iter().enumerate() {
        let (back, _) = parse_qtable(&std::fs::read_to_string(dir.path().join(format!("qtable_{k}.txt"))).unwrap()).unwrap();
        assert_eq!(&back, table);
    }
}

#[test]
fn arena_svg_structure() {
    let r = run_experiment(&ExperimentConfig { n_episodes: 3, ..Default::default() }).unwrap();
    let path: Vec<_> = r.episodes.last().unwrap().trace.iter().map(|p| p.pose).collect();
    let text = arena_path_svg(&r.world(), &[path]);
    let doc = svg_root(&text);
    assert_eq!(count(&doc, "circle"), 6);
    assert_eq!(count(&doc, "polyline"), 1);
    assert_eq!(count(&doc, "rect"), 1);
    let goal: Vec<_> = doc.descendants().filter(|n| n.attribute("class") == Some("goal")).collect();
    assert_eq!(goal.len(), 1);
    assert_eq!(goal[0].attribute("fill-rule"), Some("evenodd"));
}

#[test]
fn curve_svgs() {
    let its: Vec<usize> = (1..=80).rev().collect();
    let doc_text = iterations_curve_svg(&its, "run");
    let doc = svg_root(&doc_text);
    let polylines: Vec<_> = doc.descendants().filter(|n| n.has_tag_name("polyline")).collect();
    assert_eq!(polylines.len(), 1);
    assert_eq!(polylines[0].attribute("points").unwrap().split(' ').count(), 80);

    let base = ExperimentConfig { n_episodes: 4, max_iterations: 200, ..Default::default() };
    let summary = ComparisonSummary::from_runs(&run_comparison(&base, &AlgorithmMode::ALL, 2).unwrap()).unwrap();
    let series: Vec<(String, Vec<f64>)> =
        summary.modes.iter().map(|m| (m.name().to_string(), summary.mean_curve(*m).unwrap())).collect();
    let text = comparison_overlay_svg(&series, "four modes");
    let doc = svg_root(&text);
    assert_eq!(count(&doc, "polyline"), 4);
    let legend = doc.descendants().find(|n| n.attribute("class") == Some("legend")).unwrap();
    let labels: Vec<&str> = legend.descendants().filter(|n| n.has_tag_name("text")).filter_map(|n| n.text()).collect();
    assert_eq!(labels, vec!["single", "separate", "shared", "cooperative"]);
}
