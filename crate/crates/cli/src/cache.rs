//! Optional content-addressed cache for computed tables.
//!
//! The cache is a single JSON object mapping a SHA-256 key to a
//! [`TableRecord`]. A corrupt or unreadable file is treated as empty. Only
//! `compute` uses it.

use std::collections::BTreeMap;
use std::io;
use std::path::{Path, PathBuf};

use nsbetti::{Component, GenusPair};
use sha2::{Digest, Sha256};

use crate::output::TableRecord;

pub const CACHE_ENV: &str = "NSBETTI_CACHE";

/// Changes whenever the assembly could produce different numbers.
pub const FORMULA_VERSION: &str = concat!("closed-form-v1/", env!("CARGO_PKG_VERSION"));

pub fn key(gp: GenusPair, component: Component) -> String {
    let mut h = Sha256::new();
    h.update(format!(
        "{}|{}|{}|{}",
        gp.g1,
        gp.g2,
        component.as_str(),
        FORMULA_VERSION
    ));
    hex::encode(h.finalize())
}

/// Explicit path first, then the environment variable.
pub fn resolve_path(explicit: Option<&Path>) -> Option<PathBuf> {
    explicit
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
}

#[derive(Debug, Default)]
pub struct Cache {
    path: PathBuf,
    entries: BTreeMap<String, TableRecord>,
    dirty: bool,
}

impl Cache {
    pub fn open(path: PathBuf) -> Self {
        let entries = std::fs::read_to_string(&path)
            .ok()
            .and_then(|s| serde_json::from_str(&s).ok())
            .unwrap_or_default();
        Cache {
            path,
            entries,
            dirty: false,
        }
    }

    pub fn get(&self, gp: GenusPair, component: Component) -> Option<&TableRecord> {
        self.entries
            .get(&key(gp, component))
            .filter(|r| r.g1 == gp.g1 && r.g2 == gp.g2 && r.component == component.as_str())
    }

    pub fn insert(&mut self, gp: GenusPair, component: Component, record: TableRecord) {
        self.entries.insert(key(gp, component), record);
        self.dirty = true;
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Write through a sibling temporary file so readers never see a partial cache.
    pub fn save(&self) -> io::Result<()> {
        if !self.dirty {
            return Ok(());
        }
        if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        let tmp = self.path.with_extension("tmp");
        std::fs::write(&tmp, serde_json::to_string(&self.entries)?)?;
        std::fs::rename(tmp, &self.path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_separate_inputs() {
        let a = GenusPair::new(3, 4).unwrap();
        assert_ne!(key(a, Component::M12), key(a.swapped(), Component::M12));
        assert_ne!(key(a, Component::M12), key(a, Component::M21));
        assert_eq!(key(a, Component::M12).len(), 64);
    }
}
