//! Persistent result cache: one JSON document on disk.
//!
//! Only exact values are stored — an interval reflects the budget of the
//! run that produced it, not the complex. The file location is resolved as
//! `--cache` flag, then the `BUCHSTABER_CACHE` environment variable, then
//! a per-user default under the XDG data directory. A corrupt or
//! unreadable cache is ignored with a warning (and healed by the next
//! save); writes go to a temporary file in the same directory followed by
//! an atomic rename, so readers never observe a half-written document.

use std::env;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use buchstaber::complexes::ComplexDescriptor;
use buchstaber::fplinalg::Prime;
use buchstaber::invariants::{InvariantResult, Method};
use serde::{Deserialize, Serialize};

/// Environment variable overriding the default cache location.
pub const CACHE_ENV: &str = "BUCHSTABER_CACHE";

/// One cached result.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CacheEntry {
    /// (canonical complex descriptor JSON, prime modulus of the invariant).
    pub key: (String, u32),
    /// The result as originally computed, method included.
    pub value: InvariantResult,
    /// Seconds since the Unix epoch at store time.
    pub created: u64,
    /// Version of the tool that stored the entry.
    pub tool_version: String,
}

#[derive(Debug, Default, Deserialize)]
struct CacheDocument {
    entries: Vec<CacheEntry>,
}

#[derive(Serialize)]
struct CacheDocumentRef<'a> {
    entries: &'a [CacheEntry],
}

/// An in-memory view of the cache file, written back on [`Cache::save`].
#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    entries: Vec<CacheEntry>,
    dirty: bool,
}

/// Resolves the cache path: explicit flag, then [`CACHE_ENV`], then the
/// XDG default (`$XDG_DATA_HOME/buchstaber/cache.json`, falling back to
/// `~/.local/share/buchstaber/cache.json`).
pub fn resolve_path(flag: Option<PathBuf>) -> PathBuf {
    if let Some(path) = flag {
        return path;
    }
    if let Some(from_env) = env::var_os(CACHE_ENV) {
        if !from_env.is_empty() {
            return PathBuf::from(from_env);
        }
    }
    let base = env::var_os("XDG_DATA_HOME")
        .map(PathBuf::from)
        .filter(|p| p.is_absolute())
        .unwrap_or_else(|| {
            let home = env::var_os("HOME")
                .map(PathBuf::from)
                .unwrap_or_else(|| PathBuf::from("."));
            home.join(".local").join("share")
        });
    base.join("buchstaber").join("cache.json")
}

impl Cache {
    /// Loads the cache at `path`. A missing file is an empty cache; an
    /// unreadable or unparsable one is reported to stderr and ignored.
    pub fn open(path: PathBuf) -> Cache {
        let entries = match fs::read_to_string(&path) {
            Ok(text) => match serde_json::from_str::<CacheDocument>(&text) {
                Ok(document) => document.entries,
                Err(err) => {
                    eprintln!(
                        "warning: ignoring corrupt cache at {}: {err}",
                        path.display()
                    );
                    Vec::new()
                }
            },
            Err(err) if err.kind() == std::io::ErrorKind::NotFound => Vec::new(),
            Err(err) => {
                eprintln!(
                    "warning: ignoring unreadable cache at {}: {err}",
                    path.display()
                );
                Vec::new()
            }
        };
        Cache {
            path,
            entries,
            dirty: false,
        }
    }

    fn key_of(descriptor: &ComplexDescriptor, p: Prime) -> (String, u32) {
        (descriptor.to_json(), p.get())
    }

    /// An exact cached result for this complex and modulus, relabeled
    /// [`Method::Cached`]; `None` on a miss.
    pub fn lookup(&self, descriptor: &ComplexDescriptor, p: Prime) -> Option<InvariantResult> {
        let key = Cache::key_of(descriptor, p);
        let entry = self.entries.iter().find(|entry| entry.key == key)?;
        // Intervals never belong in the cache; skip them defensively in
        // case the file was edited by hand.
        entry.value.value.exact()?;
        let mut result = entry.value.clone();
        result.method = Method::Cached;
        Some(result)
    }

    /// Queues an exact result for persistence, replacing any previous
    /// entry under the same key. Interval results are never cached.
    /// Returns whether anything was stored.
    pub fn store(&mut self, result: &InvariantResult) -> bool {
        if result.value.exact().is_none() {
            return false;
        }
        let key = Cache::key_of(&result.complex, result.p);
        let entry = CacheEntry {
            key: key.clone(),
            value: result.clone(),
            created: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .unwrap_or_default()
                .as_secs(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        };
        match self.entries.iter_mut().find(|existing| existing.key == key) {
            Some(existing) => *existing = entry,
            None => self.entries.push(entry),
        }
        self.dirty = true;
        true
    }

    /// Writes the cache back when it changed. Failures degrade to a
    /// warning: a broken cache must never fail the computation that ran.
    pub fn save(mut self) {
        if !self.dirty {
            return;
        }
        self.entries.sort_by(|a, b| a.key.cmp(&b.key));
        if let Err(err) = self.write_atomically() {
            eprintln!(
                "warning: could not write cache at {}: {err}",
                self.path.display()
            );
        }
    }

    fn write_atomically(&self) -> std::io::Result<()> {
        let parent = match self.path.parent() {
            Some(dir) if !dir.as_os_str().is_empty() => dir.to_path_buf(),
            _ => PathBuf::from("."),
        };
        fs::create_dir_all(&parent)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&parent)?;
        serde_json::to_writer_pretty(
            &mut tmp,
            &CacheDocumentRef {
                entries: &self.entries,
            },
        )?;
        tmp.write_all(b"\n")?;
        tmp.persist(&self.path).map_err(|persist| persist.error)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use buchstaber::invariants::sp_skeleton;
    use buchstaber::search::SearchBudget;

    fn sample_result() -> InvariantResult {
        sp_skeleton(4, 1, Prime::new(5).unwrap(), SearchBudget::unlimited()).unwrap()
    }

    #[test]
    fn roundtrip_relabels_hits_as_cached() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.json");
        let result = sample_result();

        let mut cache = Cache::open(path.clone());
        assert!(cache.lookup(&result.complex, result.p).is_none());
        assert!(cache.store(&result));
        cache.save();

        let reopened = Cache::open(path);
        let hit = reopened.lookup(&result.complex, result.p).unwrap();
        assert_eq!(hit.value, result.value);
        assert_eq!(hit.method, Method::Cached);
        assert_eq!(hit.certificate, result.certificate);
    }

    #[test]
    fn corrupt_cache_is_ignored_and_healed() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.json");
        fs::write(&path, "not json").unwrap();

        let mut cache = Cache::open(path.clone());
        let result = sample_result();
        assert!(cache.lookup(&result.complex, result.p).is_none());
        assert!(cache.store(&result));
        cache.save();

        let healed = fs::read_to_string(&path).unwrap();
        serde_json::from_str::<serde_json::Value>(&healed).expect("cache is valid JSON again");
    }

    #[test]
    fn flag_beats_environment_for_path_resolution() {
        let flagged = resolve_path(Some(PathBuf::from("/tmp/explicit.json")));
        assert_eq!(flagged, PathBuf::from("/tmp/explicit.json"));
    }
}
