//! Prediction rank against degree-at-prediction-time scatters: for each
//! positive event, x is the strict-past degree of the destination node
//! (or of the pair itself) and y is the event's rank.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use tgeval_core::error::{Error, Result};
use tgeval_core::event::History;
use tgeval_core::metrics::RankRecord;
use tgeval_core::taxonomy::EntityCatalog;

use crate::style::StyleConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeMode {
    /// x = temporal degree of the destination node at the event's time.
    DestinationNode,
    /// x = prior event count on the event's pair.
    Edge,
}

impl DegreeMode {
    fn axis_label(self) -> &'static str {
        match self {
            DegreeMode::DestinationNode => "destination degree at prediction time",
            DegreeMode::Edge => "edge degree at prediction time",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ScatterStats {
    pub svg_path: PathBuf,
    pub csv_path: PathBuf,
    pub points: usize,
}

fn fmt(v: f64) -> String {
    format!("{v:.2}")
}

/// Renders the scatter and writes `positive_ordinal,degree,rank` CSV.
/// With `log_x`, positions use log10(1 + degree). `trend_bins > 0` adds
/// a binned-mean polyline.
pub fn degree_scatter(
    ranks: &[RankRecord],
    history: &History,
    catalog: &EntityCatalog,
    mode: DegreeMode,
    config: &StyleConfig,
    log_x: bool,
    trend_bins: usize,
    out: impl AsRef<Path>,
) -> Result<ScatterStats> {
    if ranks.is_empty() {
        return Err(Error::Data("no rank records to plot".into()));
    }
    let events = history.events();
    let mut rows: Vec<(usize, usize, f64)> = Vec::with_capacity(ranks.len());
    for record in ranks {
        let event = events.get(record.positive_ordinal).ok_or_else(|| {
            Error::Data(format!(
                "rank record ordinal {} is outside the event stream",
                record.positive_ordinal
            ))
        })?;
        let degree = match mode {
            DegreeMode::DestinationNode => {
                catalog.temporal_degree(event.destination, event.timestamp)
            }
            DegreeMode::Edge => {
                catalog.edge_degree(event.source, event.destination, event.timestamp)
            }
        };
        rows.push((record.positive_ordinal, degree, record.rank));
    }

    let svg_path = out.as_ref().to_path_buf();
    let csv_path = svg_path.with_extension("csv");
    let mut csv = String::from("positive_ordinal,degree,rank\n");
    for &(ordinal, degree, rank) in &rows {
        let _ = writeln!(csv, "{ordinal},{degree},{rank}");
    }
    fs::write(&csv_path, csv).map_err(|e| Error::Io {
        path: csv_path.display().to_string(),
        source: e,
    })?;

    let xval = |degree: usize| -> f64 {
        if log_x {
            (1.0 + degree as f64).log10()
        } else {
            degree as f64
        }
    };
    let x_max = rows.iter().map(|&(_, d, _)| xval(d)).fold(0.0, f64::max);
    let y_max = rows.iter().map(|&(_, _, r)| r).fold(1.0, f64::max);

    let width = config.width as f64;
    let height = config.height as f64;
    let (ml, mr, mt, mb) = (60.0, 30.0, 30.0, 45.0);
    let pw = width - ml - mr;
    let ph = height - mt - mb;
    let px = |v: f64| ml + v / x_max.max(f64::EPSILON) * pw;
    let py = |v: f64| mt + ph - v / y_max * ph;

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
    let _ = writeln!(
        svg,
        r##"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#cccccc" stroke-width="1"/>"##,
        fmt(ml),
        fmt(mt),
        fmt(pw),
        fmt(ph)
    );
    for &(_, degree, rank) in &rows {
        let _ = writeln!(
            svg,
            r##"<circle cx="{}" cy="{}" r="{}" fill="{}" fill-opacity="0.6"/>"##,
            fmt(px(xval(degree))),
            fmt(py(rank)),
            fmt(config.point_radius.max(2.0)),
            crate::style::DEFAULT_PALETTE[0]
        );
    }

    // binned-mean trend line over the x range
    if trend_bins > 0 && rows.len() > 1 {
        let mut sums = vec![(0.0f64, 0usize); trend_bins];
        let span = x_max.max(f64::EPSILON);
        for &(_, degree, rank) in &rows {
            let bin = ((xval(degree) / span) * trend_bins as f64)
                .floor()
                .min(trend_bins as f64 - 1.0) as usize;
            sums[bin].0 += rank;
            sums[bin].1 += 1;
        }
        let line: Vec<String> = sums
            .iter()
            .enumerate()
            .filter(|(_, &(_, n))| n > 0)
            .map(|(i, &(sum, n))| {
                let cx = span * (i as f64 + 0.5) / trend_bins as f64;
                format!("{},{}", fmt(px(cx)), fmt(py(sum / n as f64)))
            })
            .collect();
        if line.len() > 1 {
            let _ = writeln!(
                svg,
                r##"<polyline points="{}" fill="none" stroke="#de2d26" stroke-width="2"/>"##,
                line.join(" ")
            );
        }
    }

    let x_label = if log_x {
        format!("log10(1 + {})", mode.axis_label())
    } else {
        mode.axis_label().to_string()
    };
    let _ = writeln!(
        svg,
        r##"<text x="{}" y="{}" font-size="12" font-family="monospace" fill="#000000">{}</text>"##,
        fmt(ml),
        fmt(height - 12.0),
        x_label
    );
    let _ = writeln!(
        svg,
        r##"<text x="{}" y="{}" font-size="12" font-family="monospace" fill="#000000" transform="rotate(-90 14 {})">prediction rank</text>"##,
        fmt(14.0),
        fmt(mt + ph / 2.0),
        fmt(mt + ph / 2.0)
    );
    svg.push_str("</svg>\n");
    fs::write(&svg_path, svg).map_err(|e| Error::Io {
        path: svg_path.display().to_string(),
        source: e,
    })?;

    Ok(ScatterStats {
        svg_path,
        csv_path,
        points: rows.len(),
    })
}
