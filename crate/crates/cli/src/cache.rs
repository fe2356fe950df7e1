//! On-disk catalog cache.
//!
//! A cache file is the magic line, the key line, and the catalog as JSON.
//! Files are named after the key, written through a temporary file and
//! renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use qrep::rep::catalog::CatalogData;
use qrep::{Algebra, IndecCatalog};
use sha2::{Digest, Sha256};

use crate::CliError;

pub const MAGIC: &str = "QREPCAT v1";

pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Key over the algebra text (which includes the prime), the dimension bound,
/// the seed and the labelling scheme.
pub fn key(alg: &Algebra, dim_bound: usize, seed: u64, flavor: &str) -> String {
    sha256_hex(&format!(
        "{}|dim_bound={dim_bound}|seed={seed}|labels={flavor}",
        alg.canonical_json()
    ))
}

pub struct Cache {
    dir: PathBuf,
}

pub enum Lookup {
    Hit(IndecCatalog),
    Miss,
}

impl Cache {
    pub fn new(dir: &Path) -> Cache {
        Cache {
            dir: dir.to_path_buf(),
        }
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{}.qcat", &key[..32]))
    }

    pub fn read(&self, alg: &Arc<Algebra>, key: &str) -> Result<Lookup, CliError> {
        let path = self.path(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Lookup::Miss),
            Err(e) => return Err(CliError::Io(path.display().to_string(), e)),
        };
        let corrupt = |why: &str| CliError::Cache(format!("{}: {why}", path.display()));
        let mut lines = text.splitn(3, '\n');
        if lines.next() != Some(MAGIC) {
            return Err(corrupt("missing magic header"));
        }
        let stored = lines.next().ok_or_else(|| corrupt("missing key"))?;
        if stored != key {
            return Ok(Lookup::Miss);
        }
        let data: CatalogData = serde_json::from_str(lines.next().unwrap_or(""))
            .map_err(|e| corrupt(&e.to_string()))?;
        let cat = IndecCatalog::from_data(alg, &data).map_err(|e| corrupt(&e.to_string()))?;
        Ok(Lookup::Hit(cat))
    }

    pub fn write(&self, key: &str, cat: &IndecCatalog) -> Result<(), CliError> {
        let io = |e: std::io::Error| CliError::Io(self.dir.display().to_string(), e);
        fs::create_dir_all(&self.dir).map_err(io)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(io)?;
        let body = serde_json::to_string(&cat.to_data()).expect("catalog serializes");
        write!(tmp, "{MAGIC}\n{key}\n{body}").map_err(io)?;
        tmp.persist(self.path(key)).map_err(|e| io(e.error))?;
        Ok(())
    }
}
