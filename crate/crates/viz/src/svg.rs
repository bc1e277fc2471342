//! SVG rendering of plot layouts with optional per-event overlays, plus
//! the companion CSV export of exactly the plotted tuples.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use tgeval_core::error::{Error, Result};

use crate::layout::PlotLayout;
use crate::style::{StyleConfig, StyleMap};

/// Per-event decoration of a base layout.
#[derive(Debug, Clone)]
pub enum Overlay {
    /// Plain activity plot.
    None,
    /// Color every event by a label, e.g. the competing-events winner.
    /// Events without a label keep their base style key.
    Labels(BTreeMap<usize, String>),
    /// Color events by a numeric value (prediction rank); only events
    /// with value strictly above the threshold are drawn.
    Ranks {
        values: BTreeMap<usize, f64>,
        threshold: f64,
    },
}

/// What a render produced.
#[derive(Debug, Clone)]
pub struct RenderStats {
    pub svg_path: PathBuf,
    pub csv_path: PathBuf,
    pub points_drawn: usize,
    pub points_downsampled: usize,
}

struct StyledPoint {
    timestamp: f64,
    row: usize,
    key: String,
    value: Option<f64>,
}

/// Fixed-precision float formatting keeps SVG output byte-stable.
fn fmt(v: f64) -> String {
    format!("{v:.2}")
}

fn bucket_edges(min: f64, max: f64, buckets: usize) -> Vec<(f64, f64)> {
    let span = (max - min).max(f64::EPSILON);
    (0..buckets)
        .map(|i| {
            (
                min + span * i as f64 / buckets as f64,
                min + span * (i + 1) as f64 / buckets as f64,
            )
        })
        .collect()
}

fn apply_overlay(
    layout: &PlotLayout,
    overlay: &Overlay,
    buckets: usize,
) -> Result<Vec<StyledPoint>> {
    match overlay {
        Overlay::None => Ok(layout
            .points
            .iter()
            .map(|p| StyledPoint {
                timestamp: p.timestamp,
                row: p.row,
                key: layout.key_label(p.key).to_string(),
                value: None,
            })
            .collect()),
        Overlay::Labels(labels) => {
            for &ordinal in labels.keys() {
                if ordinal > layout.max_ordinal {
                    return Err(Error::Data(format!(
                        "overlay key {ordinal} does not resolve to any plotted event"
                    )));
                }
            }
            Ok(layout
                .points
                .iter()
                .map(|p| StyledPoint {
                    timestamp: p.timestamp,
                    row: p.row,
                    key: labels
                        .get(&p.ordinal)
                        .cloned()
                        .unwrap_or_else(|| layout.key_label(p.key).to_string()),
                    value: None,
                })
                .collect())
        }
        Overlay::Ranks { values, threshold } => {
            for &ordinal in values.keys() {
                if ordinal > layout.max_ordinal {
                    return Err(Error::Data(format!(
                        "overlay key {ordinal} does not resolve to any plotted event"
                    )));
                }
            }
            let kept: BTreeMap<usize, f64> = values
                .iter()
                .filter(|(_, &v)| v > *threshold)
                .map(|(&k, &v)| (k, v))
                .collect();
            let max_value = kept.values().copied().fold(*threshold, f64::max);
            let edges = bucket_edges(*threshold, max_value, buckets);
            let key_of = |v: f64| -> String {
                let idx = edges
                    .iter()
                    .rposition(|&(lo, _)| v >= lo)
                    .unwrap_or(0)
                    .min(buckets - 1);
                format!(
                    "rank {:.0}-{:.0}",
                    edges[idx].0.ceil(),
                    edges[idx].1.floor().max(edges[idx].0.ceil())
                )
            };
            Ok(layout
                .points
                .iter()
                .filter_map(|p| {
                    kept.get(&p.ordinal).map(|&v| StyledPoint {
                        timestamp: p.timestamp,
                        row: p.row,
                        key: key_of(v),
                        value: Some(v),
                    })
                })
                .collect())
        }
    }
}

/// Colors for the rank buckets come from the sequential palette, in
/// ascending bucket order.
fn rank_style_map(config: &StyleConfig, keys: &[String]) -> StyleMap {
    let mut with_colors = config.clone();
    let mut sorted: Vec<String> = keys.to_vec();
    sorted.sort_by(|a, b| {
        let lo = |s: &str| -> f64 {
            s.trim_start_matches("rank ")
                .split('-')
                .next()
                .and_then(|v| v.parse().ok())
                .unwrap_or(0.0)
        };
        lo(a).total_cmp(&lo(b))
    });
    sorted.dedup();
    let palette = &config.rank_palette;
    let n = sorted.len();
    for (i, key) in sorted.iter().enumerate() {
        let idx = if n <= 1 {
            palette.len() - 1
        } else {
            i * (palette.len() - 1) / (n - 1)
        };
        with_colors.colors.insert(key.clone(), palette[idx].clone());
    }
    with_colors.resolve(keys.iter().cloned())
}

/// Renders a layout to `out` (SVG) and its companion CSV next to it.
///
/// The CSV holds exactly the plotted tuples `timestamp,row,style_key`
/// (plus `value` for rank overlays), written before any downsampling so
/// lossless plots stay lossless on disk too.
pub fn render(
    layout: &PlotLayout,
    config: &StyleConfig,
    overlay: &Overlay,
    out: impl AsRef<Path>,
) -> Result<RenderStats> {
    let svg_path = out.as_ref().to_path_buf();
    let csv_path = svg_path.with_extension("csv");
    let styled = apply_overlay(layout, overlay, config.rank_buckets)?;

    // Companion CSV first: the lossless record.
    let mut csv = String::new();
    let with_value = matches!(overlay, Overlay::Ranks { .. });
    csv.push_str(if with_value {
        "timestamp,row,style_key,value\n"
    } else {
        "timestamp,row,style_key\n"
    });
    for p in &styled {
        match p.value {
            Some(v) => {
                let _ = writeln!(csv, "{},{},{},{}", p.timestamp, p.row, p.key, v);
            }
            None => {
                let _ = writeln!(csv, "{},{},{}", p.timestamp, p.row, p.key);
            }
        }
    }
    fs::write(&csv_path, csv).map_err(|e| Error::Io {
        path: csv_path.display().to_string(),
        source: e,
    })?;

    // Optional uniform downsampling for the rendered SVG only.
    let mut drawn: Vec<&StyledPoint> = styled.iter().collect();
    let mut downsampled = 0usize;
    if let Some(ds) = config.downsample {
        if drawn.len() > ds.cap {
            let mut rng = ChaCha12Rng::seed_from_u64(ds.seed);
            let mut picked = rand::seq::index::sample(&mut rng, drawn.len(), ds.cap).into_vec();
            picked.sort_unstable();
            downsampled = drawn.len() - ds.cap;
            drawn = picked.into_iter().map(|i| &styled[i]).collect();
        }
    }

    let style_map = match overlay {
        Overlay::Ranks { .. } => {
            let keys: Vec<String> = styled.iter().map(|p| p.key.clone()).collect();
            rank_style_map(config, &keys)
        }
        _ => config.resolve(styled.iter().map(|p| p.key.clone())),
    };

    let svg = draw_svg(layout, config, &style_map, &drawn);
    fs::write(&svg_path, svg).map_err(|e| Error::Io {
        path: svg_path.display().to_string(),
        source: e,
    })?;

    Ok(RenderStats {
        svg_path,
        csv_path,
        points_drawn: drawn.len(),
        points_downsampled: downsampled,
    })
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn draw_svg(
    layout: &PlotLayout,
    config: &StyleConfig,
    styles: &StyleMap,
    points: &[&StyledPoint],
) -> String {
    let width = config.width as f64;
    let height = config.height as f64;
    let (ml, mr, mt, mb) = (60.0, 160.0, 30.0, 45.0);
    let pw = width - ml - mr;
    let ph = height - mt - mb;
    let (t0, t1) = layout.t_range;
    let t_span = (t1 - t0).max(f64::EPSILON);
    let rows = layout.rows().max(1);
    let x = |t: f64| ml + (t - t0) / t_span * pw;
    let y = |row: usize| mt + ph - (row as f64 + 0.5) / rows as f64 * ph;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"##,
        config.width, config.height, config.width, config.height
    );
    let _ = writeln!(
        svg,
        r##"<rect x="0" y="0" width="{}" height="{}" fill="{}"/>"##,
        config.width, config.height, config.background
    );
    // frame
    let _ = writeln!(
        svg,
        r##"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#cccccc" stroke-width="1"/>"##,
        fmt(ml),
        fmt(mt),
        fmt(pw),
        fmt(ph)
    );

    // split boundaries
    for boundary in &layout.boundaries {
        let bx = x(boundary.t);
        let _ = writeln!(
            svg,
            r##"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="#555555" stroke-width="1" stroke-dasharray="4,3"/>"##,
            fmt(bx),
            fmt(mt),
            fmt(mt + ph)
        );
        let _ = writeln!(
            svg,
            r##"<text x="{}" y="{}" font-size="11" font-family="monospace" fill="#555555">{}</text>"##,
            fmt(bx + 3.0),
            fmt(mt + 12.0),
            xml_escape(&boundary.label)
        );
    }

    // points
    for p in points {
        let _ = writeln!(
            svg,
            r##"<circle cx="{}" cy="{}" r="{}" fill="{}"/>"##,
            fmt(x(p.timestamp)),
            fmt(y(p.row)),
            fmt(config.point_radius),
            styles.color(&p.key)
        );
    }

    // axes
    let axis_label = match layout.kind {
        crate::layout::EntityKind::Node => "node rank (first arrival)",
        crate::layout::EntityKind::Edge => "edge rank (first interaction)",
    };
    let _ = writeln!(
        svg,
        r##"<text x="{}" y="{}" font-size="12" font-family="monospace" fill="#000000">time {} .. {}</text>"##,
        fmt(ml),
        fmt(height - 12.0),
        fmt(t0),
        fmt(t1)
    );
    let _ = writeln!(
        svg,
        r##"<text x="{}" y="{}" font-size="12" font-family="monospace" fill="#000000" transform="rotate(-90 14 {})">{}</text>"##,
        fmt(14.0),
        fmt(mt + ph / 2.0),
        fmt(mt + ph / 2.0),
        axis_label
    );
    let _ = writeln!(
        svg,
        r##"<text x="{}" y="{}" font-size="10" font-family="monospace" fill="#000000">0</text>"##,
        fmt(ml - 14.0),
        fmt(mt + ph)
    );
    let _ = writeln!(
        svg,
        r##"<text x="{}" y="{}" font-size="10" font-family="monospace" fill="#000000">{}</text>"##,
        fmt(ml - 34.0),
        fmt(mt + 10.0),
        rows - 1
    );

    // legend
    let legend_x = ml + pw + 16.0;
    let mut legend_y = mt + 10.0;
    for (key, color) in styles.entries() {
        let _ = writeln!(
            svg,
            r##"<circle cx="{}" cy="{}" r="4" fill="{}"/>"##,
            fmt(legend_x),
            fmt(legend_y),
            color
        );
        let _ = writeln!(
            svg,
            r##"<text x="{}" y="{}" font-size="11" font-family="monospace" fill="#000000">{}</text>"##,
            fmt(legend_x + 10.0),
            fmt(legend_y + 4.0),
            xml_escape(key)
        );
        legend_y += 16.0;
    }

    svg.push_str("</svg>\n");
    svg
}
