use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Read-through store of command results, one JSON file per key. Failures
/// of any kind degrade to a miss (reads) or a warning (writes).
#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
    tool_version: String,
}

/// A cached result together with the method that produced it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub method: Option<String>,
    pub result: Value,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>, tool_version: impl Into<String>) -> Self {
        Cache {
            dir: dir.into(),
            tool_version: tool_version.into(),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Content address: group fingerprints, command, method and tool
    /// version, NUL-separated.
    pub fn key(&self, command: &str, method: &str, fingerprints: &[&str]) -> String {
        let mut h = Sha256::new();
        for part in [self.tool_version.as_str(), command, method]
            .into_iter()
            .chain(fingerprints.iter().copied())
        {
            h.update(part.as_bytes());
            h.update([0]);
        }
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Option<CacheEntry> {
        let path = self.path(key);
        let text = fs::read_to_string(&path).ok()?;
        match serde_json::from_str::<CacheEntry>(&text) {
            Ok(entry) if entry.key == key => Some(entry),
            Ok(_) => {
                log::warn!("ignoring cache entry {} with mismatched key", path.display());
                None
            }
            Err(e) => {
                log::warn!("ignoring corrupted cache entry {}: {e}", path.display());
                None
            }
        }
    }

    pub fn put(&self, entry: &CacheEntry) {
        let path = self.path(&entry.key);
        let write = || -> std::io::Result<()> {
            fs::create_dir_all(&self.dir)?;
            let text = serde_json::to_string(entry).map_err(std::io::Error::other)?;
            // write then rename, so concurrent readers never see half a file
            let tmp = path.with_extension(format!("tmp{}", std::process::id()));
            fs::write(&tmp, text)?;
            fs::rename(&tmp, &path)
        };
        if let Err(e) = write() {
            log::warn!("could not write cache entry {}: {e}", path.display());
        }
    }
}
