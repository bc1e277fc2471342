//! Shared stage plumbing: artifact readers/writers and the glue between
//! the library crates and the subcommands. Every stage can run off the
//! previous stage's files alone.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use tgeval_core::error::{Error, Result};
use tgeval_core::event::History;
use tgeval_core::metrics::RankRecord;
use tgeval_core::sampling::{CandidateSet, Negative, SampleStats, SamplingPlan, Strategy};
use tgeval_core::scoring::{ExternalScoreTable, ScoreSidecar, ScoredCandidateSet};
use tgeval_core::split::SplitHistory;

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        source: e,
    }
}

/// Sidecar describing a candidate file: the plan that produced it, its
/// hash, and the run stats.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct CandidateSidecar {
    pub plan: SamplingPlan,
    pub spec_hash: String,
    pub emitted: usize,
    pub skipped: Vec<(usize, String)>,
}

/// Writes `positive_ordinal,slot,neg_source,neg_destination,strategy`
/// with slot 0 echoing the positive pair under the pseudo-strategy
/// "positive", so the file is self-contained for external models. Node
/// ids are the raw dataset identifiers.
pub fn write_candidates(
    sets: &[CandidateSet],
    history: &History,
    plan: &SamplingPlan,
    stats: &SampleStats,
    csv_path: &Path,
    sidecar_path: &Path,
) -> Result<()> {
    let file = File::create(csv_path).map_err(|e| io_err(csv_path, e))?;
    let mut out = BufWriter::new(file);
    writeln!(out, "positive_ordinal,slot,neg_source,neg_destination,strategy")
        .map_err(|e| io_err(csv_path, e))?;
    let mut writer = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    for set in sets {
        let ordinal = set.positive.ordinal.to_string();
        writer
            .write_record([
                ordinal.as_str(),
                "0",
                history.raw_id(set.positive.source),
                history.raw_id(set.positive.destination),
                "positive",
            ])
            .map_err(|e| Error::Data(format!("{}: {e}", csv_path.display())))?;
        for (slot, negative) in set.negatives.iter().enumerate() {
            writer
                .write_record([
                    ordinal.as_str(),
                    &(slot + 1).to_string(),
                    history.raw_id(negative.source),
                    history.raw_id(negative.destination),
                    negative.strategy.label(),
                ])
                .map_err(|e| Error::Data(format!("{}: {e}", csv_path.display())))?;
        }
    }
    writer
        .flush()
        .map_err(|e| io_err(csv_path, e))?;

    let sidecar = CandidateSidecar {
        plan: plan.clone(),
        spec_hash: plan.spec_hash(),
        emitted: stats.emitted,
        skipped: stats.skipped.clone(),
    };
    let json = serde_json::to_string_pretty(&sidecar)
        .map_err(|e| Error::Data(format!("candidate sidecar: {e}")))?;
    std::fs::write(sidecar_path, json + "\n").map_err(|e| io_err(sidecar_path, e))?;
    Ok(())
}

/// Reads a candidate file back into sets, validating positives against
/// the history and remapping raw ids to dense indices.
pub fn read_candidates(csv_path: &Path, history: &History) -> Result<Vec<CandidateSet>> {
    let file = File::open(csv_path).map_err(|e| io_err(csv_path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(BufReader::new(file));
    let mut sets: Vec<CandidateSet> = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| Error::Data(format!("{}: {e}", csv_path.display())))?;
        let line = row.position().map(|p| p.line()).unwrap_or(0);
        let parse = |msg: String| Error::Parse {
            path: csv_path.display().to_string(),
            line,
            message: msg,
        };
        if row.len() < 5 {
            return Err(parse("expected 5 columns".into()));
        }
        let ordinal: usize = row[0]
            .parse()
            .map_err(|_| parse(format!("bad ordinal {:?}", &row[0])))?;
        let slot: usize = row[1]
            .parse()
            .map_err(|_| parse(format!("bad slot {:?}", &row[1])))?;
        let source = history
            .dense_id(&row[2])
            .ok_or_else(|| parse(format!("unknown node id {:?}", &row[2])))?;
        let destination = history
            .dense_id(&row[3])
            .ok_or_else(|| parse(format!("unknown node id {:?}", &row[3])))?;

        if slot == 0 {
            let event = *history.events().get(ordinal).ok_or_else(|| {
                parse(format!("ordinal {ordinal} outside the event stream"))
            })?;
            if event.pair() != (source, destination) {
                return Err(parse(format!(
                    "positive for ordinal {ordinal} does not match the event stream"
                )));
            }
            sets.push(CandidateSet {
                positive: event,
                negatives: Vec::new(),
            });
        } else {
            let strategy: Strategy = row[4].parse()?;
            let set = sets
                .last_mut()
                .filter(|s| s.positive.ordinal == ordinal)
                .ok_or_else(|| parse(format!("slot {slot} arrived before slot 0")))?;
            if set.negatives.len() + 1 != slot {
                return Err(parse(format!("slot {slot} out of sequence")));
            }
            set.negatives.push(Negative {
                source,
                destination,
                strategy,
            });
        }
    }
    if sets.is_empty() {
        return Err(Error::Data(format!(
            "{}: no candidate rows",
            csv_path.display()
        )));
    }
    Ok(sets)
}

pub fn read_candidate_sidecar(path: &Path) -> Result<CandidateSidecar> {
    let file = File::open(path).map_err(|e| io_err(path, e))?;
    serde_json::from_reader(BufReader::new(file))
        .map_err(|e| Error::Data(format!("{}: {e}", path.display())))
}

/// Writes scores in the external-table format (slot 0 first) plus the
/// provenance sidecar binding them to the sampler.
pub fn write_scores(
    scored: &[ScoredCandidateSet],
    model: &str,
    spec_hash: &str,
    csv_path: &Path,
    sidecar_path: &Path,
) -> Result<()> {
    let mut table = ExternalScoreTable::new(model.to_string(), spec_hash.to_string());
    for set in scored {
        for (slot, &score) in set.scores.iter().enumerate() {
            table.insert(set.candidates.positive.ordinal, slot, score);
        }
    }
    table.write(csv_path, sidecar_path)
}

pub fn read_score_sidecar(path: &Path) -> Result<ScoreSidecar> {
    let file = File::open(path).map_err(|e| io_err(path, e))?;
    serde_json::from_reader(BufReader::new(file))
        .map_err(|e| Error::Data(format!("{}: {e}", path.display())))
}

/// Joins a candidate file with a score table into scored sets.
pub fn join_scores(
    sets: Vec<CandidateSet>,
    table: &ExternalScoreTable,
) -> Result<Vec<ScoredCandidateSet>> {
    sets.into_iter()
        .map(|set| {
            let ordinal = set.positive.ordinal;
            let mut scores = Vec::with_capacity(set.negatives.len() + 1);
            for slot in 0..=set.negatives.len() {
                scores.push(table.get(ordinal, slot)?);
            }
            Ok(ScoredCandidateSet {
                candidates: set,
                scores,
            })
        })
        .collect()
}

/// `positive_ordinal,rank,best_label` per event.
pub fn write_ranks(ranks: &[RankRecord], path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| io_err(path, e))?;
    let mut out = BufWriter::new(file);
    writeln!(out, "positive_ordinal,rank,best_label").map_err(|e| io_err(path, e))?;
    for record in ranks {
        writeln!(
            out,
            "{},{},{}",
            record.positive_ordinal, record.rank, record.best_label
        )
        .map_err(|e| io_err(path, e))?;
    }
    out.flush().map_err(|e| io_err(path, e))
}

pub fn read_ranks(path: &Path) -> Result<Vec<RankRecord>> {
    let file = File::open(path).map_err(|e| io_err(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(BufReader::new(file));
    let mut ranks = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| Error::Data(format!("{}: {e}", path.display())))?;
        if row.len() < 3 {
            return Err(Error::Data(format!(
                "{}: expected positive_ordinal,rank,best_label",
                path.display()
            )));
        }
        ranks.push(RankRecord {
            positive_ordinal: row[0]
                .parse()
                .map_err(|_| Error::Data(format!("bad ordinal {:?}", &row[0])))?,
            rank: row[1]
                .parse()
                .map_err(|_| Error::Data(format!("bad rank {:?}", &row[1])))?,
            k: 0,
            best_label: row[2].to_string(),
        });
    }
    if ranks.is_empty() {
        return Err(Error::Data(format!("{}: no rank rows", path.display())));
    }
    Ok(ranks)
}

/// `entity_type,entity_id,category,first_arrival,last_arrival` for every
/// observed node and directed pair.
pub fn write_classification(
    catalog: &tgeval_core::taxonomy::EntityCatalog,
    history: &History,
    path: &Path,
) -> Result<()> {
    let file = File::create(path).map_err(|e| io_err(path, e))?;
    let mut out = BufWriter::new(file);
    writeln!(out, "entity_type,entity_id,category,first_arrival,last_arrival")
        .map_err(|e| io_err(path, e))?;
    for node in 0..history.node_count() as u32 {
        if let Some((first, last)) = catalog.node_first_last(node) {
            writeln!(
                out,
                "node,{},{},{},{}",
                history.raw_id(node),
                catalog.classify_node(node).label(),
                first,
                last
            )
            .map_err(|e| io_err(path, e))?;
        }
    }
    for (u, v) in catalog.observed_pairs() {
        let (first, last) = catalog.edge_first_last(u, v).expect("observed pair");
        writeln!(
            out,
            "edge,{}->{},{},{},{}",
            history.raw_id(u),
            history.raw_id(v),
            catalog.classify_edge(u, v).label(),
            first,
            last
        )
        .map_err(|e| io_err(path, e))?;
    }
    out.flush().map_err(|e| io_err(path, e))
}

/// Serializes any value as pretty JSON with a trailing newline.
pub fn write_json<T: serde::Serialize>(value: &T, path: &Path) -> Result<()> {
    let json = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Data(format!("{}: {e}", path.display())))?;
    std::fs::write(path, json + "\n").map_err(|e| io_err(path, e))
}

/// Labels overlay from a rank file: ordinal -> winning candidate label.
pub fn labels_from_ranks(ranks: &[RankRecord]) -> std::collections::BTreeMap<usize, String> {
    ranks
        .iter()
        .map(|r| (r.positive_ordinal, r.best_label.clone()))
        .collect()
}

/// Rank-value overlay from a rank file.
pub fn values_from_ranks(ranks: &[RankRecord]) -> std::collections::BTreeMap<usize, f64> {
    ranks
        .iter()
        .map(|r| (r.positive_ordinal, r.rank))
        .collect()
}

/// Builds the split boundary markers and attaches them to a layout.
pub fn mark_boundaries(layout: &mut tgeval_viz::PlotLayout, split: &SplitHistory) {
    layout.mark_split(split);
}
