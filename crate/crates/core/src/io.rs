//! File ingestion and export.
//!
//! Event files are UTF-8 CSV with a header row and columns
//! `source,destination,timestamp[,attr...]`; timestamps parse as decimal
//! reals. Node attribute files are CSV `node_id,label`.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::event::{History, NodeId};

/// Ingestion options for [`load_events`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoadOptions {
    /// Treat the first row as a header (the documented file format has
    /// one). Set to false for raw exports without it.
    pub has_header: bool,
    /// Retain extra columns as one opaque attribute string per event.
    pub keep_attrs: bool,
    /// Canonicalize each pair so the smaller dense id is the source, for
    /// undirected interaction logs.
    pub symmetrize: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            has_header: true,
            keep_attrs: false,
            symmetrize: false,
        }
    }
}

/// Loads an event stream from CSV, remapping raw node ids to dense
/// indices and sorting stably by timestamp.
pub fn load_events(path: impl AsRef<Path>, options: LoadOptions) -> Result<History> {
    let path = path.as_ref();
    let display = path.display().to_string();
    let file = File::open(path).map_err(|e| Error::io(&display, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(options.has_header)
        .flexible(true)
        .from_reader(BufReader::new(file));

    let mut records = Vec::new();
    let mut attrs = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| match e.position() {
            Some(pos) => Error::Parse {
                path: display.clone(),
                line: pos.line(),
                message: e.to_string(),
            },
            None => Error::Data(e.to_string()),
        })?;
        let line = row.position().map(|p| p.line()).unwrap_or(0);
        let parse_err = |message: String| Error::Parse {
            path: display.clone(),
            line,
            message,
        };
        if row.len() < 3 {
            return Err(parse_err(format!(
                "expected at least 3 columns (source,destination,timestamp), found {}",
                row.len()
            )));
        }
        let source = row[0].to_string();
        let destination = row[1].to_string();
        let timestamp: f64 = row[2]
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("timestamp {:?} is not a number", &row[2])))?;
        if !timestamp.is_finite() || timestamp < 0.0 {
            return Err(parse_err(format!(
                "timestamp {timestamp} must be finite and non-negative"
            )));
        }
        if options.keep_attrs {
            let extra: Vec<&str> = row.iter().skip(3).collect();
            attrs.push(extra.join(","));
        }
        records.push((source, destination, timestamp));
    }
    if records.is_empty() {
        return Err(Error::Data(format!("{display}: no event rows")));
    }

    let mut history = History::from_records(records, options.keep_attrs.then_some(attrs))?;
    if options.symmetrize {
        history = symmetrize(history);
    }
    Ok(history)
}

/// Reorients every event so source <= destination by dense id. Dense id
/// assignment is unaffected: whenever both endpoints first appear in the
/// same event, the source slot got the smaller id, so that pair is
/// already canonical.
fn symmetrize(history: History) -> History {
    let node_count = history.node_count();
    let canonical: Vec<(NodeId, NodeId, f64)> = history
        .events()
        .iter()
        .map(|e| {
            let (u, v) = (e.source.min(e.destination), e.source.max(e.destination));
            (u, v, e.timestamp)
        })
        .collect();
    let raw_ids: Vec<String> = (0..node_count as NodeId)
        .map(|i| history.raw_id(i).to_string())
        .collect();
    let mut out = History::from_dense(canonical, node_count).expect("events already validated");
    out.replace_raw_ids(raw_ids);
    out
}

/// Writes a history back to the documented CSV format using raw ids.
/// Loading the output reproduces the history exactly.
pub fn write_events(history: &History, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let display = path.display().to_string();
    let file = File::create(path).map_err(|e| Error::io(&display, e))?;
    let mut out = BufWriter::new(file);
    let header = if history.has_event_attrs() {
        "source,destination,timestamp,attr"
    } else {
        "source,destination,timestamp"
    };
    writeln!(out, "{header}").map_err(|e| Error::io(&display, e))?;
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    for event in history.events() {
        let src = history.raw_id(event.source);
        let dst = history.raw_id(event.destination);
        let ts = event.timestamp.to_string();
        let result = match history.event_attr(event.ordinal) {
            Some(attr) => writer.write_record([src, dst, &ts, attr]),
            None => writer.write_record([src, dst, &ts]),
        };
        result.map_err(|e| Error::Data(format!("{display}: {e}")))?;
    }
    writer
        .flush()
        .map_err(|e| Error::io(&display, e))?;
    Ok(())
}

/// Loads `node_id,label` attribute rows and attaches them to the
/// history. Rows naming nodes absent from the event stream are ignored;
/// the count of attached labels is returned.
pub fn load_node_attrs(history: &mut History, path: impl AsRef<Path>) -> Result<usize> {
    let path = path.as_ref();
    let display = path.display().to_string();
    let file = File::open(path).map_err(|e| Error::io(&display, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(BufReader::new(file));
    let mut attrs: Vec<Option<String>> = vec![None; history.node_count()];
    let mut attached = 0;
    for row in reader.records() {
        let row = row.map_err(|e| Error::Data(format!("{display}: {e}")))?;
        if row.len() < 2 {
            continue;
        }
        if let Some(id) = history.dense_id(&row[0]) {
            attrs[id as usize] = Some(row[1].to_string());
            attached += 1;
        }
    }
    history.set_node_attrs(attrs);
    Ok(attached)
}

/// Hex SHA-256 of a byte slice, used for content hashes in manifests and
/// score-file sidecars.
pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Hex SHA-256 of a file's contents.
pub fn sha256_file(path: impl AsRef<Path>) -> Result<String> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    Ok(sha256_hex(&bytes))
}
