use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use serde::Serialize;

use adft_core::complexity::ComplexMultScheme;
use adft_core::Variant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Settings shared by every command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub variant: Variant,
    pub out_dir: PathBuf,
    pub grid_size: usize,
    pub replicates: usize,
    pub seed: u64,
    pub cost_model: ComplexMultScheme,
    pub format: Format,
}

pub const DEFAULT_OUT_DIR: &str = "adft-out";

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            variant: Variant::Alg1,
            out_dir: PathBuf::from(DEFAULT_OUT_DIR),
            grid_size: 8192,
            replicates: 10_000,
            seed: 7,
            cost_model: ComplexMultScheme::Paper3M3A,
            format: Format::Csv,
        }
    }
}

impl RunConfig {
    pub const KEYS: [&'static str; 7] = [
        "variant",
        "out_dir",
        "grid_size",
        "replicates",
        "seed",
        "cost_model",
        "format",
    ];

    /// Published settings: 8192-point grid, 10^5 replicates, 3M3A costing.
    pub fn apply_paper_mode(&mut self) {
        self.grid_size = 8192;
        self.replicates = 100_000;
        self.cost_model = ComplexMultScheme::Paper3M3A;
    }

    /// Overrides fields from `key = value` lines. Blank lines and lines
    /// starting with `#` are skipped.
    pub fn apply_file(&mut self, path: &Path) -> anyhow::Result<()> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        self.apply_str(&text)
            .with_context(|| format!("in config {}", path.display()))
    }

    pub fn apply_str(&mut self, text: &str) -> anyhow::Result<()> {
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("line {}: expected key = value", lineno + 1);
            };
            let (key, value) = (key.trim(), value.trim());
            let bad =
                |e: &dyn std::fmt::Display| anyhow::anyhow!("line {}: {key}: {e}", lineno + 1);
            match key {
                "variant" => self.variant = value.parse().map_err(|e| bad(&e))?,
                "out_dir" => self.out_dir = PathBuf::from(value),
                "grid_size" => self.grid_size = value.parse().map_err(|e| bad(&e))?,
                "replicates" => self.replicates = value.parse().map_err(|e| bad(&e))?,
                "seed" => self.seed = value.parse().map_err(|e| bad(&e))?,
                "cost_model" => self.cost_model = value.parse().map_err(|e| bad(&e))?,
                "format" => {
                    self.format = match value {
                        "csv" => Format::Csv,
                        "json" => Format::Json,
                        other => return Err(bad(&format!("unknown format `{other}`"))),
                    }
                }
                other => bail!(
                    "line {}: unknown key `{other}` (expected one of {})",
                    lineno + 1,
                    Self::KEYS.join(", ")
                ),
            }
        }
        Ok(())
    }
}
