//! Classification cache keyed by (n, configuration hash).
//!
//! Entries from other configurations share the file but are never reused;
//! stale keys are simply left alone.

use std::collections::BTreeMap;
use std::path::Path;

use crate::document::CertificateDocument;
use crate::error::{Error, Result};

/// On-disk JSON map "n:configHash" -> certificate document.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct Cache {
    entries: BTreeMap<String, CertificateDocument>,
}

fn key(n: &str, config_hash: &str) -> String {
    format!("{n}:{config_hash}")
}

impl Cache {
    /// Load a cache file; a missing file is an empty cache.
    pub fn load(path: &Path) -> Result<Cache> {
        let text = match std::fs::read_to_string(path) {
            Ok(text) => text,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
                return Ok(Cache::default());
            }
            Err(e) => return Err(Error::Document(format!("cache {}: {e}", path.display()))),
        };
        let entries = serde_json::from_str(&text)
            .map_err(|e| Error::Document(format!("cache {}: {e}", path.display())))?;
        Ok(Cache { entries })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut text =
            serde_json::to_string_pretty(&self.entries).expect("cache entries serialize");
        text.push('\n');
        std::fs::write(path, text)
            .map_err(|e| Error::Document(format!("cache {}: {e}", path.display())))
    }

    /// Look up a document written under the same configuration.
    pub fn get(&self, n: &str, config_hash: &str) -> Option<&CertificateDocument> {
        self.entries.get(&key(n, config_hash))
    }

    pub fn put(&mut self, doc: CertificateDocument) {
        self.entries.insert(key(&doc.n, &doc.config_hash), doc);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
