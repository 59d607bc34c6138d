//! On-disk store for base traces.
//!
//! Entries live at `<dir>/<name>-<fingerprint>.json`, where the fingerprint
//! is the SHA-256 of the artifact key material. The entry records the key
//! material, so a stale or colliding file is never served, and a checksum of
//! the payload text, verified before the payload is parsed.

use level2coh::modspaces::{ArtifactKey, ArtifactStore, ModSpaceError, Traces};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

/// Version of the entry layout below.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    schema: u32,
    name: String,
    fingerprint: String,
    material: String,
    /// SHA-256 of `payload`.
    checksum: String,
    /// JSON array of degrees, each an array of decimal traces per class.
    payload: String,
}

pub struct FileStore {
    dir: PathBuf,
}

fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn cache_err(path: &Path, what: impl std::fmt::Display) -> ModSpaceError {
    ModSpaceError::Cache(format!("{}: {what}", path.display()))
}

impl FileStore {
    pub fn new(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)?;
        Ok(FileStore { dir })
    }

    pub fn path_of(&self, key: &ArtifactKey) -> PathBuf {
        self.dir.join(format!("{}-{}.json", key.name, &sha256_hex(&key.material)[..16]))
    }
}

impl ArtifactStore for FileStore {
    fn load(&self, key: &ArtifactKey) -> Result<Option<Traces>, ModSpaceError> {
        let path = self.path_of(key);
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(cache_err(&path, e)),
        };
        let entry: CacheEntry = serde_json::from_str(&text).map_err(|e| cache_err(&path, format!("unreadable entry: {e}")))?;
        if entry.schema != SCHEMA_VERSION || entry.material != key.material {
            log::info!("{}: stale entry, recomputing", path.display());
            return Ok(None);
        }
        if sha256_hex(&entry.payload) != entry.checksum {
            return Err(cache_err(&path, "payload checksum mismatch"));
        }
        let rows: Vec<Vec<String>> =
            serde_json::from_str(&entry.payload).map_err(|e| cache_err(&path, format!("payload: {e}")))?;
        let traces = rows
            .iter()
            .map(|row| row.iter().map(|v| v.parse::<BigInt>()).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Traces, _>>()
            .map_err(|e| cache_err(&path, format!("payload: {e}")))?;
        log::info!("{}: cache hit", key.name);
        Ok(Some(traces))
    }

    fn save(&self, key: &ArtifactKey, traces: &Traces) -> Result<(), ModSpaceError> {
        let path = self.path_of(key);
        let rows: Vec<Vec<String>> = traces.iter().map(|r| r.iter().map(BigInt::to_string).collect()).collect();
        let payload = serde_json::to_string(&rows).map_err(|e| cache_err(&path, e))?;
        let entry = CacheEntry {
            schema: SCHEMA_VERSION,
            name: key.name.into(),
            fingerprint: sha256_hex(&key.material),
            material: key.material.clone(),
            checksum: sha256_hex(&payload),
            payload,
        };
        let text = serde_json::to_string_pretty(&entry).map_err(|e| cache_err(&path, e))?;
        // Write then rename, so readers never see a partial entry.
        let tmp = path.with_extension("json.tmp");
        std::fs::write(&tmp, text).and_then(|_| std::fs::rename(&tmp, &path)).map_err(|e| cache_err(&path, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(material: &str) -> ArtifactKey {
        ArtifactKey { name: "toy", material: material.into() }
    }

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let store = FileStore::new(dir.path()).unwrap();
        let k = key("v1;toy");
        assert!(store.load(&k).unwrap().is_none());
        let traces: Traces = vec![vec![BigInt::from(1), BigInt::from(-7)], vec![BigInt::from(10).pow(30), BigInt::from(0)]];
        store.save(&k, &traces).unwrap();
        assert_eq!(store.load(&k).unwrap(), Some(traces));
        // Another key never reads this entry.
        assert!(store.load(&key("v1;other")).unwrap().is_none());

        let path = store.path_of(&k);
        let text = std::fs::read_to_string(&path).unwrap().replace("\\\"-7\\\"", "\\\"-8\\\"");
        std::fs::write(&path, text).unwrap();
        assert!(matches!(store.load(&k), Err(ModSpaceError::Cache(_))));
        std::fs::write(&path, "{not json").unwrap();
        assert!(matches!(store.load(&k), Err(ModSpaceError::Cache(_))));
    }
}
