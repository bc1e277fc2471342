//! Style configuration: canvas geometry, palettes, and the resolved
//! key -> color map. Defaults are pinned so identical inputs render to
//! byte-identical SVGs.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use tgeval_core::error::{Error, Result};

/// Categorical palette cycled over style keys in sorted order.
pub const DEFAULT_PALETTE: [&str; 10] = [
    "#4269d0", "#efb118", "#ff725c", "#6cc5b0", "#3ca951", "#ff8ab7", "#a463f2", "#97bbf5",
    "#9c6b4e", "#9498a0",
];

/// Sequential palette for rank buckets, light to dark.
pub const DEFAULT_RANK_PALETTE: [&str; 5] =
    ["#fcbba1", "#fc9272", "#fb6a4a", "#de2d26", "#a50f15"];

fn default_width() -> u32 {
    1000
}
fn default_height() -> u32 {
    600
}
fn default_point_radius() -> f64 {
    1.5
}
fn default_palette() -> Vec<String> {
    DEFAULT_PALETTE.iter().map(|s| s.to_string()).collect()
}
fn default_rank_palette() -> Vec<String> {
    DEFAULT_RANK_PALETTE.iter().map(|s| s.to_string()).collect()
}
fn default_rank_buckets() -> usize {
    5
}
fn default_background() -> String {
    "#ffffff".to_string()
}

/// Uniform seeded downsampling, off unless explicitly configured: the
/// plots are lossless by default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Downsample {
    pub cap: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StyleConfig {
    #[serde(default = "default_width")]
    pub width: u32,
    #[serde(default = "default_height")]
    pub height: u32,
    #[serde(default = "default_point_radius")]
    pub point_radius: f64,
    /// Explicit key -> color overrides; unlisted keys cycle the palette.
    #[serde(default)]
    pub colors: BTreeMap<String, String>,
    #[serde(default = "default_palette")]
    pub palette: Vec<String>,
    #[serde(default = "default_rank_palette")]
    pub rank_palette: Vec<String>,
    #[serde(default = "default_rank_buckets")]
    pub rank_buckets: usize,
    #[serde(default = "default_background")]
    pub background: String,
    #[serde(default)]
    pub downsample: Option<Downsample>,
}

impl Default for StyleConfig {
    fn default() -> Self {
        StyleConfig {
            width: default_width(),
            height: default_height(),
            point_radius: default_point_radius(),
            colors: BTreeMap::new(),
            palette: default_palette(),
            rank_palette: default_rank_palette(),
            rank_buckets: default_rank_buckets(),
            background: default_background(),
            downsample: None,
        }
    }
}

impl StyleConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let bytes = std::fs::read(path)
            .map_err(|e| Error::Io {
                path: path.display().to_string(),
                source: e,
            })?;
        serde_json::from_slice(&bytes)
            .map_err(|e| Error::Data(format!("{}: {e}", path.display())))
    }

    /// Resolves a color for every style key; deterministic in the sorted
    /// key order.
    pub fn resolve(&self, keys: impl Iterator<Item = String>) -> StyleMap {
        let mut sorted: Vec<String> = keys.collect();
        sorted.sort();
        sorted.dedup();
        let mut resolved = BTreeMap::new();
        let mut next = 0usize;
        for key in sorted {
            let color = match self.colors.get(&key) {
                Some(color) => color.clone(),
                None => {
                    let color = self.palette[next % self.palette.len()].clone();
                    next += 1;
                    color
                }
            };
            resolved.insert(key, color);
        }
        StyleMap { resolved }
    }
}

/// Total key -> color mapping for one render.
#[derive(Debug, Clone)]
pub struct StyleMap {
    resolved: BTreeMap<String, String>,
}

impl StyleMap {
    pub fn color(&self, key: &str) -> &str {
        self.resolved
            .get(key)
            .map(String::as_str)
            .unwrap_or("#000000")
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &str)> {
        self.resolved.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn len(&self) -> usize {
        self.resolved.len()
    }

    pub fn is_empty(&self) -> bool {
        self.resolved.is_empty()
    }
}
