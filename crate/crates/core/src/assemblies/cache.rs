use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Mutex, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One persisted constant together with the interference bound it was
/// derived from, both as decimal strings rounded upward.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub c: String,
    #[serde(rename = "T_bound")]
    pub t_bound: String,
}

/// JSON file of selected constants keyed by `"<family>/<n>/<bits>"`.
///
/// Readers share a lock; writers are serialized and replace the file
/// atomically (write to a sibling temp file, then rename).
#[derive(Debug)]
pub struct ConstantCache {
    path: PathBuf,
    map: RwLock<BTreeMap<String, CacheEntry>>,
    writer: Mutex<()>,
}

impl ConstantCache {
    /// Open `path`; a missing file is an empty cache.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let map = match fs::read_to_string(&path) {
            Ok(text) if text.trim().is_empty() => BTreeMap::new(),
            Ok(text) => serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("cache {}: {e}", path.display())))?,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => BTreeMap::new(),
            Err(e) => return Err(e.into()),
        };
        Ok(ConstantCache {
            path,
            map: RwLock::new(map),
            writer: Mutex::new(()),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn key(family: &str, n: usize, bits: u32) -> String {
        format!("{family}/{n}/{bits}")
    }

    /// Split a key into its parts; the family may itself contain `/`.
    pub fn parse_key(key: &str) -> Option<(String, usize, u32)> {
        let mut it = key.rsplitn(3, '/');
        let bits = it.next()?.parse().ok()?;
        let n = it.next()?.parse().ok()?;
        let family = it.next()?.to_string();
        Some((family, n, bits))
    }

    pub fn get(&self, family: &str, n: usize, bits: u32) -> Option<CacheEntry> {
        self.map.read().unwrap().get(&Self::key(family, n, bits)).cloned()
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn entries(&self) -> BTreeMap<String, CacheEntry> {
        self.map.read().unwrap().clone()
    }

    /// Insert and persist.
    pub fn insert(&self, family: &str, n: usize, bits: u32, entry: CacheEntry) -> Result<()> {
        let _guard = self.writer.lock().unwrap();
        let snapshot = {
            let mut m = self.map.write().unwrap();
            m.insert(Self::key(family, n, bits), entry);
            m.clone()
        };
        write_atomic(&self.path, serde_json::to_string_pretty(&snapshot)?.as_bytes())
    }
}

/// Write `bytes` to `path` through a temp file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".into());
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        Error::from(e)
    })
}
