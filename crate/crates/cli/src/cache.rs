//! Term-vector cache keyed by the SHA-256 of a treebank file.
//!
//! A changed file gets a new digest, so stale entries are never read. Entries
//! that fail to parse or disagree with the file's sentence ids are ignored
//! and rewritten.

use std::fs;
use std::path::{Path, PathBuf};

use log::{debug, warn};
use rayon::prelude::*;
use sha2::{Digest, Sha256};
use syntaxpoly::distance::TermVectorSet;
use syntaxpoly::polynomial::TermVector;

use crate::termfile;

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone)]
pub struct PolyCache {
    dir: PathBuf,
}

impl PolyCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        PolyCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, digest: &str) -> PathBuf {
        self.dir.join(format!("{digest}.tv"))
    }

    /// Sets for `sent_ids` in that order, or `None` on a miss.
    pub fn load(&self, digest: &str, sent_ids: &[&str]) -> Option<Vec<TermVectorSet>> {
        let path = self.path(digest);
        let text = fs::read_to_string(&path).ok()?;
        let entries = match termfile::parse(&text) {
            Ok(e) => e,
            Err(e) => {
                warn!("ignoring unreadable cache entry {}: {e}", path.display());
                return None;
            }
        };
        if entries.len() != sent_ids.len()
            || entries.iter().zip(sent_ids).any(|((a, _), b)| a != b)
        {
            warn!("ignoring cache entry {} with mismatched sentences", path.display());
            return None;
        }
        let mut sets = Vec::with_capacity(entries.len());
        for (sid, vectors) in entries {
            match TermVectorSet::new(vectors) {
                Ok(s) => sets.push(s),
                Err(_) => {
                    warn!("ignoring cache entry {}: empty set for {sid}", path.display());
                    return None;
                }
            }
        }
        debug!("cache hit {}", path.display());
        Some(sets)
    }

    /// Writes atomically; failures only produce a warning.
    pub fn store(&self, digest: &str, entries: &[(&str, &[TermVector])]) {
        let path = self.path(digest);
        let tmp = self.dir.join(format!("{digest}.tv.tmp{}", std::process::id()));
        let result = fs::create_dir_all(&self.dir)
            .and_then(|_| fs::write(&tmp, termfile::write(entries.iter().copied())))
            .and_then(|_| fs::rename(&tmp, &path));
        if let Err(e) = result {
            let _ = fs::remove_file(&tmp);
            warn!("could not write cache entry {}: {e}", path.display());
        }
    }
}

/// Sets for the sentences `ids` of one treebank, from the cache or from `compute(i)`.
pub fn sets_for_file(
    cache: Option<&PolyCache>,
    digest: &str,
    ids: &[&str],
    compute: impl Fn(usize) -> TermVectorSet + Sync + Send,
) -> Vec<TermVectorSet> {
    if let Some(hit) = cache.and_then(|c| c.load(digest, ids)) {
        return hit;
    }
    let sets: Vec<TermVectorSet> = (0..ids.len()).into_par_iter().map(compute).collect();
    if let Some(c) = cache {
        let entries: Vec<(&str, &[TermVector])> = ids
            .iter()
            .zip(&sets)
            .map(|(s, set)| (*s, set.vectors()))
            .collect();
        c.store(digest, &entries);
    }
    sets
}

/// Environment variable naming the default cache directory.
pub const CACHE_ENV: &str = "SYNTAXPOLY_CACHE_DIR";
