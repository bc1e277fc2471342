//! Render contract: byte-identical SVGs for identical inputs, lossless
//! companion CSVs, overlay filtering, and downsampling behavior.

use std::collections::BTreeMap;

use tgeval_core::split::{chronological_split, Fractions};
use tgeval_core::synth::{generate, SynthConfig};
use tgeval_core::taxonomy::{build_catalog, CatalogConfig};
use tgeval_core::History;
use tgeval_viz::style::Downsample;
use tgeval_viz::{edge_layout, node_layout, render, Overlay, StyleConfig};

fn small_history() -> History {
    let records = vec![
        (0, 1, 0.0),
        (2, 3, 1.0),
        (0, 1, 2.0),
        (1, 2, 3.0),
        (0, 3, 4.0),
        (2, 3, 5.0),
        (0, 1, 6.0),
        (3, 1, 7.0),
        (0, 2, 8.0),
        (2, 1, 9.0),
    ];
    History::from_dense(records, 4).unwrap()
}

#[test]
fn identical_inputs_render_identical_bytes() {
    let history = generate(&SynthConfig::new(30, 400, 5)).unwrap();
    let split = chronological_split(history, Fractions::DEFAULT).unwrap();
    let mut layout = node_layout(split.history()).unwrap();
    layout.mark_split(&split);

    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    render(&layout, &StyleConfig::default(), &Overlay::None, &a).unwrap();
    render(&layout, &StyleConfig::default(), &Overlay::None, &b).unwrap();
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(
        std::fs::read(a.with_extension("csv")).unwrap(),
        std::fs::read(b.with_extension("csv")).unwrap()
    );
}

#[test]
fn plain_plots_are_lossless() {
    let history = small_history();
    let dir = tempfile::tempdir().unwrap();

    let node = dir.path().join("tna.svg");
    let stats = render(
        &node_layout(&history).unwrap(),
        &StyleConfig::default(),
        &Overlay::None,
        &node,
    )
    .unwrap();
    assert_eq!(stats.points_drawn, 2 * history.len());
    let csv = std::fs::read_to_string(stats.csv_path).unwrap();
    assert_eq!(csv.lines().count(), 1 + 2 * history.len());

    let edge = dir.path().join("tea.svg");
    let stats = render(
        &edge_layout(&history).unwrap(),
        &StyleConfig::default(),
        &Overlay::None,
        &edge,
    )
    .unwrap();
    assert_eq!(stats.points_drawn, history.len());
}

#[test]
fn label_overlay_colors_points_and_validates_keys() {
    let history = small_history();
    let layout = node_layout(&history).unwrap();
    let dir = tempfile::tempdir().unwrap();

    let mut labels = BTreeMap::new();
    labels.insert(0usize, "positive".to_string());
    labels.insert(3usize, "historical-edge".to_string());
    let out = dir.path().join("competing.svg");
    render(
        &layout,
        &StyleConfig::default(),
        &Overlay::Labels(labels),
        &out,
    )
    .unwrap();
    let csv = std::fs::read_to_string(out.with_extension("csv")).unwrap();
    assert!(csv.contains("positive"));
    assert!(csv.contains("historical-edge"));

    let mut bogus = BTreeMap::new();
    bogus.insert(999usize, "positive".to_string());
    let err = render(
        &layout,
        &StyleConfig::default(),
        &Overlay::Labels(bogus),
        &dir.path().join("bogus.svg"),
    );
    assert!(err.is_err());
}

#[test]
fn rank_overlay_applies_the_display_threshold() {
    let history = small_history();
    let layout = node_layout(&history).unwrap();
    let dir = tempfile::tempdir().unwrap();

    let mut values = BTreeMap::new();
    values.insert(0usize, 250.0);
    values.insert(1usize, 150.0);
    values.insert(2usize, 500.0);
    let out = dir.path().join("ranks.svg");
    let stats = render(
        &layout,
        &StyleConfig::default(),
        &Overlay::Ranks {
            values,
            threshold: 200.0,
        },
        &out,
    )
    .unwrap();
    // events 0 and 2 pass the threshold; each contributes 2 node points
    assert_eq!(stats.points_drawn, 4);
    let csv = std::fs::read_to_string(stats.csv_path).unwrap();
    assert_eq!(csv.lines().count(), 1 + 4);
    assert!(csv.lines().next().unwrap().ends_with(",value"));
}

#[test]
fn downsampling_caps_the_svg_but_not_the_csv() {
    let history = generate(&SynthConfig::new(30, 500, 9)).unwrap();
    let layout = node_layout(&history).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let config = StyleConfig {
        downsample: Some(Downsample { cap: 100, seed: 4 }),
        ..StyleConfig::default()
    };
    let out = dir.path().join("sampled.svg");
    let stats = render(&layout, &config, &Overlay::None, &out).unwrap();
    assert_eq!(stats.points_drawn, 100);
    assert_eq!(stats.points_downsampled, 2 * history.len() - 100);
    let csv = std::fs::read_to_string(stats.csv_path).unwrap();
    assert_eq!(csv.lines().count(), 1 + 2 * history.len());
}

#[test]
fn degree_scatter_joins_ranks_to_degrees() {
    let history = small_history();
    let split = chronological_split(history, Fractions::DEFAULT).unwrap();
    let catalog = build_catalog(&split, CatalogConfig::default()).unwrap();
    let ranks: Vec<tgeval_core::metrics::RankRecord> = split
        .test_events()
        .iter()
        .map(|e| tgeval_core::metrics::RankRecord {
            positive_ordinal: e.ordinal,
            rank: 3.0 + e.ordinal as f64,
            k: 10,
            best_label: "positive".into(),
        })
        .collect();
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("degree.svg");
    let stats = tgeval_viz::degree_scatter(
        &ranks,
        split.history(),
        &catalog,
        tgeval_viz::DegreeMode::DestinationNode,
        &StyleConfig::default(),
        false,
        4,
        &out,
    )
    .unwrap();
    assert_eq!(stats.points, ranks.len());
    let csv = std::fs::read_to_string(stats.csv_path).unwrap();
    assert!(csv.starts_with("positive_ordinal,degree,rank"));
    // (2,1,9): node 1 took part in events at t in {0,2,3,6,7} before 9
    let line = csv.lines().find(|l| l.starts_with("9,")).unwrap();
    assert_eq!(line, format!("9,5,{}", 3.0 + 9.0));
}
