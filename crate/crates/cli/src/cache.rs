//! Content-addressed result cache. Entries are JSON files named by the
//! SHA-256 of `kind`, a zero byte and the key bytes; writes go through a
//! temporary file renamed into place.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)?;
        Ok(Cache { dir: Some(dir) })
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn key(kind: &str, bytes: &[u8]) -> String {
        let mut h = Sha256::new();
        h.update(kind.as_bytes());
        h.update([0]);
        h.update(bytes);
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    /// Unreadable or undecodable entries count as misses.
    pub fn get<T: DeserializeOwned>(&self, key: &str) -> Option<T> {
        let text = std::fs::read_to_string(self.path(key)?).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn put<T: Serialize>(&self, key: &str, value: &T) -> std::io::Result<()> {
        let (Some(dir), Some(path)) = (self.dir.as_ref(), self.path(key)) else {
            return Ok(());
        };
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        serde_json::to_writer(&mut tmp, value)?;
        tmp.flush()?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }

    /// Cached value for `key`, computing and storing it on a miss. Write
    /// failures leave the computed value usable.
    pub fn get_or_compute<T: Serialize + DeserializeOwned>(&self, key: &str, compute: impl FnOnce() -> T) -> (T, bool) {
        if let Some(v) = self.get(key) {
            return (v, true);
        }
        let v = compute();
        let _ = self.put(key, &v);
        (v, false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hit_after_miss() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::at(dir.path()).unwrap();
        let key = Cache::key("test", b"abc");
        assert_eq!(key.len(), 64);
        let (v, hit) = cache.get_or_compute(&key, || vec![1u32, 2]);
        assert!(!hit);
        let (w, hit) = cache.get_or_compute(&key, || vec![9u32]);
        assert!(hit);
        assert_eq!(v, w);
        assert_ne!(key, Cache::key("other", b"abc"));
    }

    #[test]
    fn disabled_never_hits() {
        let cache = Cache::disabled();
        let (_, hit) = cache.get_or_compute("k", || 1u8);
        let (_, hit2) = cache.get_or_compute("k", || 1u8);
        assert!(!hit && !hit2);
    }
}
