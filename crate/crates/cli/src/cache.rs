//! Count cache: one JSON file mapping canonical spec strings to
//! `{n: decimal count}`, guarded by a SHA-256 of the entries.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

type Entries = BTreeMap<String, BTreeMap<usize, String>>;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    checksum: String,
    entries: Entries,
}

fn checksum(entries: &Entries) -> String {
    let body = serde_json::to_vec(entries).expect("maps of strings serialize");
    hex::encode(Sha256::digest(body))
}

#[derive(Debug)]
pub struct CountCache {
    path: PathBuf,
    entries: Entries,
    /// Set when the file existed but was unreadable or failed its checksum.
    pub rebuilt: bool,
    dirty: bool,
}

impl CountCache {
    /// Loads the cache at `path`. A missing file is an empty cache; a
    /// corrupt one is discarded and marked `rebuilt`.
    pub fn open(path: &Path) -> CountCache {
        let mut cache = CountCache {
            path: path.to_path_buf(),
            entries: Entries::new(),
            rebuilt: false,
            dirty: false,
        };
        let Ok(text) = fs::read_to_string(path) else {
            return cache;
        };
        match serde_json::from_str::<CacheFile>(&text) {
            Ok(file) if file.checksum == checksum(&file.entries) && valid(&file.entries) => {
                cache.entries = file.entries;
            }
            _ => {
                cache.rebuilt = true;
                cache.dirty = true;
            }
        }
        cache
    }

    pub fn get(&self, spec: &str, n: usize) -> Option<BigUint> {
        self.entries.get(spec)?.get(&n)?.parse().ok()
    }

    pub fn insert(&mut self, spec: &str, n: usize, count: &BigUint) {
        let slot = self.entries.entry(spec.to_string()).or_default();
        let text = count.to_string();
        if slot.get(&n) != Some(&text) {
            slot.insert(n, text);
            self.dirty = true;
        }
    }

    /// Writes the file if anything changed since it was opened.
    pub fn save(&mut self) -> io::Result<()> {
        if !self.dirty {
            return Ok(());
        }
        let file = CacheFile {
            checksum: checksum(&self.entries),
            entries: self.entries.clone(),
        };
        let text = serde_json::to_string_pretty(&file).map_err(io::Error::other)?;
        fs::write(&self.path, text + "\n")?;
        self.dirty = false;
        Ok(())
    }
}

fn valid(entries: &Entries) -> bool {
    entries
        .values()
        .flat_map(BTreeMap::values)
        .all(|c| c.parse::<BigUint>().is_ok())
}
