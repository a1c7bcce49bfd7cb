//! On-disk cache for coset enumerations and fetched reference data.
//!
//! Location: `--cache-dir`, else `$EMSURF_CACHE`, else the per-user cache
//! directory (`~/.cache/emsurf` on Linux). Entries live at
//! `<root>/<namespace>/<sha256(key)>.json`.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "EMSURF_CACHE";

#[derive(Debug, Clone)]
pub struct Cache {
    root: Option<PathBuf>,
}

impl Cache {
    pub fn disabled() -> Self {
        Cache { root: None }
    }

    pub fn at(root: impl Into<PathBuf>) -> Self {
        Cache {
            root: Some(root.into()),
        }
    }

    /// Flag, then environment, then the platform cache directory.
    pub fn resolve(flag: Option<PathBuf>) -> Self {
        let root = flag
            .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
            .or_else(|| dirs::cache_dir().map(|d| d.join("emsurf")));
        Cache { root }
    }

    pub fn root(&self) -> Option<&Path> {
        self.root.as_deref()
    }

    pub fn entry_path(&self, namespace: &str, key: &str) -> Option<PathBuf> {
        let digest = Sha256::digest(key.as_bytes());
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        self.root
            .as_ref()
            .map(|r| r.join(namespace).join(format!("{hex}.json")))
    }

    pub fn get(&self, namespace: &str, key: &str) -> Option<String> {
        let path = self.entry_path(namespace, key)?;
        fs::read_to_string(path).ok()
    }

    /// Best effort: a cache that cannot be written only costs time.
    pub fn put(&self, namespace: &str, key: &str, contents: &str) {
        let Some(path) = self.entry_path(namespace, key) else {
            return;
        };
        let write = || -> std::io::Result<()> {
            if let Some(dir) = path.parent() {
                fs::create_dir_all(dir)?;
            }
            let tmp = path.with_extension("tmp");
            fs::write(&tmp, contents)?;
            fs::rename(&tmp, &path)
        };
        if let Err(e) = write() {
            eprintln!(
                "warning: could not write cache entry {}: {e}",
                path.display()
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::at(dir.path());
        assert_eq!(cache.get("perm", "k"), None);
        cache.put("perm", "k", "hello");
        assert_eq!(cache.get("perm", "k").as_deref(), Some("hello"));
        assert_eq!(cache.get("perm", "other"), None);
    }

    #[test]
    fn disabled_cache_is_inert() {
        let cache = Cache::disabled();
        cache.put("perm", "k", "x");
        assert_eq!(cache.get("perm", "k"), None);
        assert_eq!(cache.entry_path("perm", "k"), None);
    }
}
