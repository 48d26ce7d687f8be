//! On-disk census cache: one pretty-printed JSON file per maximal crossing
//! count, `census-N.json`, holding every record for `0..=N`.
//!
//! Writing is deterministic, so reading a file and writing it back gives
//! the same bytes.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::census::{CensusTable, Group, StringRecord};
use crate::error::{Error, Result};
use crate::moves::Limits;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub limits: Limits,
    /// Seconds since the Unix epoch at generation time.
    pub timestamp: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusFile {
    pub version: u32,
    /// Largest crossing count enumerated.
    pub crossings: usize,
    pub records: Vec<StringRecord>,
    #[serde(default)]
    pub unresolved: Vec<Group>,
    #[serde(default)]
    pub covering_separated: Vec<Group>,
    #[serde(default)]
    pub candidate_counts: BTreeMap<usize, usize>,
    pub meta: Meta,
}

impl CensusFile {
    pub fn new(table: &CensusTable, crossings: usize, limits: Limits) -> Self {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Self {
            version: FORMAT_VERSION,
            crossings,
            records: table.records.clone(),
            unresolved: table.unresolved.clone(),
            covering_separated: table.covering_separated.clone(),
            candidate_counts: table.candidate_counts.clone(),
            meta: Meta { limits, timestamp },
        }
    }

    pub fn table(&self) -> CensusTable {
        CensusTable {
            records: self.records.clone(),
            unresolved: self.unresolved.clone(),
            covering_separated: self.covering_separated.clone(),
            candidate_counts: self.candidate_counts.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("census file serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CensusFile =
            serde_json::from_str(text).map_err(|e| Error::Cache(e.to_string()))?;
        if file.version != FORMAT_VERSION {
            return Err(Error::Cache(format!(
                "unsupported format version {} (expected {FORMAT_VERSION})",
                file.version
            )));
        }
        Ok(file)
    }

    pub fn path_in(dir: &Path, crossings: usize) -> PathBuf {
        dir.join(format!("census-{crossings}.json"))
    }

    /// Writes `census-N.json` into `dir`, creating the directory if needed.
    pub fn save(&self, dir: &Path) -> Result<PathBuf> {
        fs::create_dir_all(dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
        let path = Self::path_in(dir, self.crossings);
        fs::write(&path, self.to_json())
            .map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        Ok(path)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// The smallest cached census covering at least `crossings`, if any.
    pub fn find(dir: &Path, crossings: usize) -> Result<Option<Self>> {
        let Ok(entries) = fs::read_dir(dir) else {
            return Ok(None);
        };
        let mut best: Option<(usize, PathBuf)> = None;
        for entry in entries.flatten() {
            let name = entry.file_name();
            let Some(n) = name
                .to_str()
                .and_then(|s| s.strip_prefix("census-"))
                .and_then(|s| s.strip_suffix(".json"))
                .and_then(|s| s.parse::<usize>().ok())
            else {
                continue;
            };
            if n >= crossings && best.as_ref().is_none_or(|(b, _)| n < *b) {
                best = Some((n, entry.path()));
            }
        }
        best.map(|(_, p)| Self::load(&p)).transpose()
    }
}
