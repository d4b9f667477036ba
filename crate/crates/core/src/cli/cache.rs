//! Optional on-disk cache for series coefficients.
//!
//! The cache is one JSON document with an explicit `schema_version`. Files
//! with an unknown version (or unparseable content) are left untouched: the
//! run proceeds without a cache and says so on stderr. Writers replace the
//! file atomically (temp file + rename) while holding a sibling lock file,
//! so concurrent invocations can never interleave partial writes.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use num::bigint::BigUint;
use serde::{Deserialize, Serialize};

/// Version this build reads and writes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CacheDoc {
    schema_version: u32,
    /// Keyed by "n,d"; BTreeMap keeps serialization byte-stable.
    entries: BTreeMap<String, CacheEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CacheEntry {
    max_degree: u32,
    /// Decimal strings, index = degree; length is max_degree + 1.
    coefficients: Vec<String>,
}

/// An in-memory view of one cache file.
#[derive(Debug)]
pub struct CacheFile {
    /// `None` means the on-disk file is unusable; reads miss and writes are
    /// no-ops, so the file survives byte-for-byte.
    doc: Option<CacheDoc>,
    note: Option<String>,
}

impl CacheFile {
    /// Never fails: a missing file is an empty cache, an unusable one
    /// disables caching for this run (see [`CacheFile::note`]).
    pub fn load(path: &Path) -> CacheFile {
        let text = match fs::read_to_string(path) {
            Ok(text) => text,
            Err(e) if e.kind() == io::ErrorKind::NotFound => {
                return CacheFile {
                    doc: Some(CacheDoc {
                        schema_version: SCHEMA_VERSION,
                        entries: BTreeMap::new(),
                    }),
                    note: None,
                };
            }
            Err(e) => {
                return CacheFile {
                    doc: None,
                    note: Some(format!(
                        "cache {} unreadable ({e}); proceeding without cache",
                        path.display()
                    )),
                };
            }
        };
        match serde_json::from_str::<CacheDoc>(&text) {
            Ok(doc) if doc.schema_version == SCHEMA_VERSION => CacheFile {
                doc: Some(doc),
                note: None,
            },
            Ok(doc) => CacheFile {
                doc: None,
                note: Some(format!(
                    "cache {} has unknown schema version {}; proceeding without cache",
                    path.display(),
                    doc.schema_version
                )),
            },
            Err(e) => CacheFile {
                doc: None,
                note: Some(format!(
                    "cache {} is not valid JSON ({e}); proceeding without cache",
                    path.display()
                )),
            },
        }
    }

    /// Warning to surface on stderr, if the file had to be ignored.
    pub fn note(&self) -> Option<&str> {
        self.note.as_deref()
    }

    fn key(n: usize, d: u32) -> String {
        format!("{n},{d}")
    }

    /// Coefficients 0..=max_degree, if an entry covers that prefix.
    pub fn series_prefix(&self, n: usize, d: u32, max_degree: u32) -> Option<Vec<BigUint>> {
        let entry = self.doc.as_ref()?.entries.get(&Self::key(n, d))?;
        if entry.max_degree < max_degree {
            return None;
        }
        entry
            .coefficients
            .get(..=max_degree as usize)?
            .iter()
            .map(|s| s.parse::<BigUint>().ok())
            .collect()
    }

    /// A single cached coefficient, if an entry reaches degree k.
    pub fn coefficient(&self, n: usize, d: u32, k: u32) -> Option<BigUint> {
        let entry = self.doc.as_ref()?.entries.get(&Self::key(n, d))?;
        if entry.max_degree < k {
            return None;
        }
        entry.coefficients.get(k as usize)?.parse().ok()
    }

    /// Record coefficients 0..=K for (n, d), replacing any shorter entry.
    /// No-op when the cache is disabled or `coefficients` is empty.
    pub fn store_series(&mut self, n: usize, d: u32, coefficients: &[BigUint]) {
        let Some(doc) = self.doc.as_mut() else {
            return;
        };
        if coefficients.is_empty() {
            return;
        }
        doc.entries.insert(
            Self::key(n, d),
            CacheEntry {
                max_degree: (coefficients.len() - 1) as u32,
                coefficients: coefficients.iter().map(|c| c.to_string()).collect(),
            },
        );
    }

    /// Atomic write; a disabled cache writes nothing.
    pub fn save(&self, path: &Path) -> io::Result<()> {
        let Some(doc) = &self.doc else {
            return Ok(());
        };
        let text = serde_json::to_string(doc).expect("serializable");
        let mut tmp = path.as_os_str().to_os_string();
        tmp.push(".tmp");
        let tmp = PathBuf::from(tmp);
        fs::write(&tmp, text + "\n")?;
        fs::rename(&tmp, path)
    }
}

/// Exclusive advisory lock: a sibling `<cache>.lock` file created with
/// create-new semantics, removed on drop. A held lock makes concurrent
/// invocations fail fast instead of racing.
#[derive(Debug)]
pub struct CacheLock {
    path: PathBuf,
}

impl CacheLock {
    pub fn acquire(cache_path: &Path) -> Result<CacheLock, String> {
        let mut os = cache_path.as_os_str().to_os_string();
        os.push(".lock");
        let path = PathBuf::from(os);
        match fs::OpenOptions::new()
            .write(true)
            .create_new(true)
            .open(&path)
        {
            Ok(_) => Ok(CacheLock { path }),
            Err(e) if e.kind() == io::ErrorKind::AlreadyExists => Err(format!(
                "cache {} is locked by another invocation ({} exists); \
                 retry later or remove a stale lock",
                cache_path.display(),
                path.display()
            )),
            Err(e) => Err(format!(
                "cannot create cache lock {}: {e}",
                path.display()
            )),
        }
    }
}

impl Drop for CacheLock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.path);
    }
}
