//! Persistent result cache: a human-readable JSON map from
//! `spec:quantity:method` to a stored result.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// Results from another version are ignored on lookup.
pub const VERSION_TAG: &str = concat!("ebs-", env!("CARGO_PKG_VERSION"), "-1");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct Entry {
    version: String,
    result: Value,
}

#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    entries: BTreeMap<String, Entry>,
}

impl Cache {
    /// Open the cache at `path`. A missing file is an empty cache.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let entries = match fs::read_to_string(&path) {
            Ok(text) if text.trim().is_empty() => BTreeMap::new(),
            Ok(text) => serde_json::from_str(&text)
                .map_err(|e| Error::InvalidSpec(format!("cache file {}: {e}", path.display())))?,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => BTreeMap::new(),
            Err(e) => return Err(Error::InvalidSpec(format!("cache file {}: {e}", path.display()))),
        };
        Ok(Cache { path, entries })
    }

    pub fn key(spec: &str, quantity: &str, method: &str) -> String {
        format!("{spec}:{quantity}:{method}")
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.get(key).filter(|e| e.version == VERSION_TAG).map(|e| &e.result)
    }

    pub fn put(&mut self, key: String, result: Value) {
        self.entries.insert(key, Entry { version: VERSION_TAG.to_string(), result });
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn save(&self) -> Result<()> {
        let text = serde_json::to_string_pretty(&self.entries).map_err(|e| Error::Internal(e.to_string()))?;
        fs::write(&self.path, text + "\n")
            .map_err(|e| Error::InvalidSpec(format!("cache file {}: {e}", self.path.display())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_version_check() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.json");
        let mut c = Cache::open(&path).unwrap();
        assert!(c.is_empty());
        let key = Cache::key("C(3;2)", "erdos_burgess", "brute");
        c.put(key.clone(), serde_json::json!({"value": 4}));
        c.save().unwrap();
        let c2 = Cache::open(&path).unwrap();
        assert_eq!(c2.get(&key), Some(&serde_json::json!({"value": 4})));

        let stale = format!(r#"{{"{key}": {{"version": "old", "result": {{"value": 5}}}}}}"#);
        fs::write(&path, stale).unwrap();
        assert_eq!(Cache::open(&path).unwrap().get(&key), None);
    }
}
