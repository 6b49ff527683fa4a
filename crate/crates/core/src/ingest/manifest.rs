//! Sample manifests: a plain text file with one directive per line.
//!
//! ```text
//! # comment
//! seed 42
//! correspondence shared 300      # or: correspondence union 300
//! contour leaf01 leaves/leaf01.csv
//! contour leaf02 leaves/leaf02.pgm 250
//! ```
//!
//! Paths are relative to the manifest's directory. `.pgm` files are read as
//! masks, anything else as CSV. The optional trailing number on a `contour`
//! line overrides the per-curve `k` under the union strategy.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Result, ShapeError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// One set of `k` times for every curve.
    Shared,
    /// Union of per-curve draws.
    Union,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ManifestEntry {
    pub id: String,
    pub path: PathBuf,
    pub k: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleManifest {
    pub entries: Vec<ManifestEntry>,
    pub strategy: Strategy,
    /// Shared `k`, or the default per-curve `k` under the union strategy.
    pub k: usize,
    pub seed: u64,
}

pub const DEFAULT_K: usize = 300;

impl SampleManifest {
    pub fn new(entries: Vec<ManifestEntry>, strategy: Strategy, k: usize, seed: u64) -> Result<Self> {
        let m = Self {
            entries,
            strategy,
            k,
            seed,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if self.entries.is_empty() {
            return Err(ShapeError::InvalidArgument("manifest has no contours".into()));
        }
        let mut ids = HashSet::new();
        for e in &self.entries {
            if !ids.insert(e.id.as_str()) {
                return Err(ShapeError::InvalidArgument(format!("duplicate contour id '{}'", e.id)));
            }
            if e.k.is_some_and(|k| k < 3) {
                return Err(ShapeError::InvalidArgument(format!("contour '{}': k must be >= 3", e.id)));
            }
        }
        if self.k < 3 {
            return Err(ShapeError::InvalidArgument(format!("k must be >= 3, got {}", self.k)));
        }
        Ok(())
    }

    /// Per-curve `k` values for the union strategy.
    pub fn entry_ks(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.k.unwrap_or(self.k)).collect()
    }

    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let base = path.parent().unwrap_or(Path::new(""));
        let mut entries = Vec::new();
        let mut seed = None;
        let mut correspondence = None;
        for (idx, raw) in text.lines().enumerate() {
            let err = |message: String| ShapeError::Parse {
                path: path.to_path_buf(),
                line: idx + 1,
                message,
            };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let number = |s: &str, what: &str| -> Result<u64> {
                s.parse().map_err(|_| err(format!("invalid {what} '{s}'")))
            };
            match fields.as_slice() {
                ["seed", s] => {
                    if seed.replace(number(s, "seed")?).is_some() {
                        return Err(err("seed given twice".into()));
                    }
                }
                ["correspondence", kind, k] => {
                    let strategy = match *kind {
                        "shared" => Strategy::Shared,
                        "union" => Strategy::Union,
                        other => return Err(err(format!("unknown correspondence '{other}'"))),
                    };
                    let k = number(k, "k")? as usize;
                    if correspondence.replace((strategy, k)).is_some() {
                        return Err(err("correspondence given twice".into()));
                    }
                }
                ["contour", id, file, rest @ ..] if rest.len() <= 1 => {
                    let k = rest.first().map(|s| number(s, "k")).transpose()?;
                    entries.push(ManifestEntry {
                        id: id.to_string(),
                        path: base.join(file),
                        k: k.map(|k| k as usize),
                    });
                }
                _ => return Err(err(format!("unrecognized directive '{line}'"))),
            }
        }
        let (strategy, k) = correspondence.unwrap_or((Strategy::Shared, DEFAULT_K));
        let manifest = Self {
            entries,
            strategy,
            k,
            seed: seed.unwrap_or(0),
        };
        manifest.validate().map_err(|e| ShapeError::Parse {
            path: path.to_path_buf(),
            line: 0,
            message: e.to_string(),
        })?;
        Ok(manifest)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?, path)
    }
}
