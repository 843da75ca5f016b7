//! Treebank discovery and loading for the dataset commands.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::{Path, PathBuf};

use log::warn;
use rayon::prelude::*;
use syntaxpoly::deptree::DepTree;
use syntaxpoly::distance::TermVectorSet;
use syntaxpoly::ingest::{
    detect_ud_version, language_from_path, normalize_language, order_languages, parse_conllu,
    Dataset, DatasetName, IngestError, SentenceRecord, SplitMap, LANGUAGE_ORDER,
};
use syntaxpoly::matrices::PolynomialGrid;

use crate::cache::{sets_for_file, sha256_hex, PolyCache};
use crate::error::{CliError, Result};

/// One loaded treebank file.
#[derive(Debug, Clone)]
pub struct TreebankInfo {
    pub language: String,
    pub file_name: String,
    pub sha256: String,
    pub sentences: usize,
    pub ud_version: Option<String>,
}

#[derive(Debug, Clone)]
pub struct CorpusOptions {
    pub dataset_dir: PathBuf,
    /// Restrict to these languages; all twenty are required when absent.
    pub langs: Option<Vec<String>>,
    pub split_file: Option<PathBuf>,
    pub ud_version: Option<String>,
}

#[derive(Debug)]
pub struct Corpus {
    /// Ordered as [`LANGUAGE_ORDER`].
    pub treebanks: Vec<TreebankInfo>,
    records: BTreeMap<String, Vec<SentenceRecord>>,
    pub split: SplitMap,
    pub split_source: String,
    pub split_warnings: Vec<String>,
    pub ud_version: String,
    pub ud_version_source: &'static str,
}

/// `*.conllu` files in `dir` keyed by normalized language code.
pub fn discover(dir: &Path) -> Result<BTreeMap<String, PathBuf>> {
    let entries = fs::read_dir(dir).map_err(|e| CliError::io(dir, e))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "conllu"))
        .collect();
    paths.sort();
    let mut found: BTreeMap<String, PathBuf> = BTreeMap::new();
    for p in paths {
        let Some(lang) = language_from_path(&p) else {
            warn!("skipping {}: no language code in file name", p.display());
            continue;
        };
        if let Some(prev) = found.insert(lang.to_string(), p.clone()) {
            return Err(CliError::Input(format!(
                "two treebanks for language {lang}: {} and {}",
                prev.display(),
                p.display()
            )));
        }
    }
    Ok(found)
}

/// Finds a `v2.N`-style release tag in the path, e.g. `ud-treebanks-v2.1/`.
fn version_from_path(path: &Path) -> Option<String> {
    let s = path.to_string_lossy();
    let b = s.as_bytes();
    (0..b.len()).find_map(|i| {
        if b[i] != b'v' || (i > 0 && b[i - 1].is_ascii_alphanumeric()) {
            return None;
        }
        let rest = &s[i + 1..];
        let end = rest
            .find(|c: char| !(c.is_ascii_digit() || c == '.'))
            .unwrap_or(rest.len());
        let v = rest[..end].trim_end_matches('.');
        let mut parts = v.split('.');
        let ok = v.contains('.') && parts.all(|p| !p.is_empty());
        ok.then(|| v.to_string())
    })
}

impl Corpus {
    pub fn load(opts: &CorpusOptions) -> Result<Corpus> {
        let available = discover(&opts.dataset_dir)?;
        let wanted: Vec<String> = match &opts.langs {
            Some(list) => list
                .iter()
                .map(|c| {
                    normalize_language(c.trim())
                        .map(str::to_string)
                        .ok_or_else(|| CliError::Input(format!("unknown language code `{c}`")))
                })
                .collect::<Result<_>>()?,
            None => LANGUAGE_ORDER.iter().map(|s| s.to_string()).collect(),
        };
        let missing: Vec<String> = wanted
            .iter()
            .filter(|l| !available.contains_key(*l))
            .cloned()
            .collect();
        if !missing.is_empty() {
            let hint = if opts.langs.is_none() {
                " (pass --langs to analyse a subset)"
            } else {
                ""
            };
            return Err(CliError::Input(format!(
                "{}: {}{hint}",
                opts.dataset_dir.display(),
                IngestError::MissingLanguage(missing)
            )));
        }
        let languages = order_languages(wanted.iter().map(String::as_str));

        let loaded: Vec<(TreebankInfo, Vec<SentenceRecord>)> = languages
            .par_iter()
            .map(|lang| {
                let path = &available[lang];
                let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
                let text = std::str::from_utf8(&bytes).map_err(|e| {
                    CliError::Input(format!("{}: not valid UTF-8: {e}", path.display()))
                })?;
                let records = parse_conllu(text, lang)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                let info = TreebankInfo {
                    language: lang.clone(),
                    file_name: path
                        .file_name()
                        .map(|n| n.to_string_lossy().into_owned())
                        .unwrap_or_default(),
                    sha256: sha256_hex(&bytes),
                    sentences: records.len(),
                    ud_version: detect_ud_version(text),
                };
                Ok((info, records))
            })
            .collect::<Result<_>>()?;

        let mut treebanks = Vec::with_capacity(loaded.len());
        let mut records = BTreeMap::new();
        for (info, recs) in loaded {
            records.insert(info.language.clone(), recs);
            treebanks.push(info);
        }

        let (split, split_source) = match &opts.split_file {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
                let split = SplitMap::parse(&text)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                (split, format!("file {}", path.display()))
            }
            None => {
                let ids = records.values().flatten().map(|r| r.sent_id());
                (
                    SplitMap::from_sent_id_prefixes(ids),
                    "derived from sentence id prefixes".to_string(),
                )
            }
        };
        let counts = split.counts();
        let split_warnings = DatasetName::ALL
            .iter()
            .filter_map(|name| {
                let n = counts.get(name).copied().unwrap_or(0);
                (n != name.expected_size()).then(|| {
                    format!(
                        "{name} split has {n} sentences, expected {}",
                        name.expected_size()
                    )
                })
            })
            .collect();

        let (ud_version, ud_version_source) = Self::resolve_version(opts, &treebanks);

        Ok(Corpus {
            treebanks,
            records,
            split,
            split_source,
            split_warnings,
            ud_version,
            ud_version_source,
        })
    }

    fn resolve_version(opts: &CorpusOptions, treebanks: &[TreebankInfo]) -> (String, &'static str) {
        if let Some(v) = &opts.ud_version {
            return (v.clone(), "flag");
        }
        let mut seen: Vec<&str> = treebanks
            .iter()
            .filter_map(|t| t.ud_version.as_deref())
            .collect();
        seen.sort();
        seen.dedup();
        match seen.as_slice() {
            [one] => return (one.to_string(), "file comments"),
            [] => {}
            many => {
                warn!("treebanks declare different releases: {}", many.join(", "));
                return (many.join("+"), "file comments (mixed)");
            }
        }
        let dir = fs::canonicalize(&opts.dataset_dir).unwrap_or_else(|_| opts.dataset_dir.clone());
        match version_from_path(&dir) {
            Some(v) => (v, "dataset path"),
            None => ("unknown".to_string(), "none"),
        }
    }

    pub fn languages(&self) -> Vec<String> {
        self.treebanks.iter().map(|t| t.language.clone()).collect()
    }

    pub fn dataset(&self, name: DatasetName) -> Result<Dataset> {
        Ok(Dataset::assemble(name, &self.records, &self.split)?)
    }

    /// Sentence text of `sent_id` in `language`, when the treebank records it.
    pub fn text(&self, language: &str, sent_id: &str) -> Option<&str> {
        self.records
            .get(language)?
            .iter()
            .find(|r| r.sent_id() == sent_id)?
            .text()
    }

    /// Term-vector sets of the dataset, read from or written to `cache`.
    ///
    /// The cache holds every sentence of a treebank file, so one entry serves
    /// all five splits.
    pub fn grid(&self, dataset: &Dataset, cache: Option<&PolyCache>) -> Result<PolynomialGrid> {
        let per_language: Vec<Vec<TermVectorSet>> = self
            .treebanks
            .par_iter()
            .filter(|t| dataset.language_index(&t.language).is_some())
            .map(|t| {
                let recs = &self.records[&t.language];
                let ids: Vec<&str> = recs.iter().map(|r| r.sent_id()).collect();
                sets_for_file(cache, &t.sha256, &ids, |i| {
                    let tree = DepTree::from_sentence(&recs[i])
                        .expect("relations were validated while parsing");
                    TermVectorSet::from_tree(&tree)
                })
            })
            .collect();
        crate::error::ensure(per_language.len() == dataset.languages().len(), || {
            "dataset languages differ from the loaded treebanks".into()
        })?;

        let mut columns: Vec<HashMap<&str, TermVectorSet>> = per_language
            .into_iter()
            .zip(dataset.languages())
            .map(|(sets, lang)| {
                self.records[lang]
                    .iter()
                    .map(|r| r.sent_id())
                    .zip(sets)
                    .collect()
            })
            .collect();
        let mut rows = Vec::with_capacity(dataset.len());
        for sid in dataset.sent_ids() {
            let row = columns
                .iter_mut()
                .map(|col| {
                    col.remove(sid.as_str()).ok_or_else(|| {
                        CliError::Internal(format!("no term vectors for sentence {sid}"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Ok(PolynomialGrid::from_sets(
            dataset.languages().to_vec(),
            dataset.sent_ids().to_vec(),
            rows,
        ))
    }
}
