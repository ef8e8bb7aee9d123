use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::ospan::SparseRow;
use super::{OSpan, TwistedZhu};
use crate::error::Result;
use crate::scalar::CycloScalar;
use crate::tensor::TensorMonomial;
use crate::vosa::{VertexAlgebra, Weight};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct CacheKey {
    algebra: String,
    twist: String,
    w_gen: Weight,
    w_store: Weight,
    columns: usize,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    key: CacheKey,
    rows: Vec<Vec<(usize, CycloScalar)>>,
    checksum: String,
}

/// What happened when looking up a relation span on disk.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CacheOutcome {
    pub hit: bool,
    pub warnings: Vec<String>,
}

fn checksum(key: &CacheKey, rows: &[Vec<(usize, CycloScalar)>]) -> Result<String> {
    let mut h = Sha256::new();
    h.update(serde_json::to_vec(key)?);
    h.update(serde_json::to_vec(rows)?);
    Ok(hex::encode(h.finalize()))
}

fn file_name(key: &CacheKey) -> String {
    let clean = |s: &str| s.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect::<String>();
    format!(
        "ospan-{}-{}-{}-{}.json",
        clean(&key.algebra),
        clean(&key.twist),
        key.w_gen.half_units(),
        key.w_store.half_units()
    )
}

fn try_load<C>(path: &Path, key: &CacheKey, span: &mut OSpan<C>) -> std::result::Result<(), String>
where
    C: Clone + Ord + std::hash::Hash + std::fmt::Debug,
{
    let text = fs::read_to_string(path).map_err(|e| e.to_string())?;
    let file: CacheFile = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    if &file.key != key {
        return Err("cache key mismatch".into());
    }
    if checksum(&file.key, &file.rows).map_err(|e| e.to_string())? != file.checksum {
        return Err("checksum mismatch".into());
    }
    let rows: Vec<SparseRow> = file.rows.into_iter().map(|r| r.into_iter().collect()).collect();
    span.restore_rows(rows).map_err(|e| e.to_string())
}

fn store(dir: &Path, path: &Path, key: CacheKey, rows: &[SparseRow]) -> Result<()> {
    let rows: Vec<Vec<(usize, CycloScalar)>> =
        rows.iter().map(|r| r.iter().map(|(j, c)| (*j, c.clone())).collect()).collect();
    let checksum = checksum(&key, &rows)?;
    let body = serde_json::to_vec(&CacheFile { key, rows, checksum })?;
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(&body)?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Builds the relation span, reusing a checksummed file in `cache_dir` when
/// one matches. Cache problems only produce warnings.
pub fn load_or_build<A: VertexAlgebra>(
    zhu: &TwistedZhu<A>,
    w_gen: Weight,
    w_store: Weight,
    cache_dir: Option<&Path>,
) -> Result<(OSpan<TensorMonomial<A::Basis>>, CacheOutcome)> {
    let mut outcome = CacheOutcome::default();
    let Some(dir) = cache_dir else {
        return Ok((zhu.build_ospan(w_gen, w_store)?, outcome));
    };
    let mut span = zhu.empty_ospan(w_gen, w_store);
    let key = CacheKey {
        algebra: span.algebra.clone(),
        twist: span.twist.clone(),
        w_gen,
        w_store,
        columns: span.columns().len(),
    };
    let path: PathBuf = dir.join(file_name(&key));
    if path.exists() {
        match try_load(&path, &key, &mut span) {
            Ok(()) => {
                outcome.hit = true;
                return Ok((span, outcome));
            }
            Err(e) => outcome.warnings.push(format!("ignoring cache file {}: {e}; recomputing", path.display())),
        }
    }
    let span = zhu.build_ospan(w_gen, w_store)?;
    if let Err(e) = store(dir, &path, key, span.rows()) {
        outcome.warnings.push(format!("could not write cache file {}: {e}", path.display()));
    }
    Ok((span, outcome))
}
