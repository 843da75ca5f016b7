//! CoNLL-U reading and assembly of parallel multi-language datasets.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::deptree::{base_relation, relation_to_index, DepTree, UnknownRelation};

/// Row order of every language matrix: Germanic, Italic, Balto-Slavic and
/// Indo-Iranian languages grouped first, then the rest alphabetically.
pub const LANGUAGE_ORDER: [&str; 20] = [
    "eng", "ger", "swe", "ice", "fre", "ita", "por", "spa", "cze", "pol", "rus", "hin", "ara",
    "chi", "fin", "ind", "jpn", "kor", "tha", "tur",
];

/// ISO 639-1 codes used in treebank file names, paired with the ISO 639-2/B codes used here.
pub const ISO_639_1_TO_2B: [(&str, &str); 20] = [
    ("en", "eng"),
    ("de", "ger"),
    ("sv", "swe"),
    ("is", "ice"),
    ("fr", "fre"),
    ("it", "ita"),
    ("pt", "por"),
    ("es", "spa"),
    ("cs", "cze"),
    ("pl", "pol"),
    ("ru", "rus"),
    ("hi", "hin"),
    ("ar", "ara"),
    ("zh", "chi"),
    ("fi", "fin"),
    ("id", "ind"),
    ("ja", "jpn"),
    ("ko", "kor"),
    ("th", "tha"),
    ("tr", "tur"),
];

/// Maps a 2- or 3-letter language code to the ISO 639-2/B code, if known.
pub fn normalize_language(code: &str) -> Option<&'static str> {
    let code = code.to_ascii_lowercase();
    ISO_639_1_TO_2B
        .iter()
        .find(|(two, three)| *two == code || *three == code)
        .map(|(_, three)| *three)
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("line {line}: malformed token line: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("line {line}: sentence has no `# sent_id` comment")]
    MissingSentId { line: usize },
    #[error("sentence {sent_id}: not a tree: {reason}")]
    NonTreeStructure { sent_id: String, reason: String },
    #[error("line {line}: unknown dependency relation `{deprel}`")]
    UnknownRelation { line: usize, deprel: String },
    #[error("input is not valid UTF-8: {0}")]
    InvalidUtf8(#[from] std::str::Utf8Error),
    #[error("sentences missing translations: {}", format_missing(.0))]
    MissingTranslation(Vec<(String, String)>),
    #[error("sentences not covered by the split mapping: {}", .0.join(", "))]
    SplitMismatch(Vec<String>),
    #[error("no treebank for languages: {}", .0.join(", "))]
    MissingLanguage(Vec<String>),
    #[error("duplicate sentence id `{sent_id}` in language {language}")]
    DuplicateSentId { sent_id: String, language: String },
    #[error("split file line {line}: {reason}")]
    BadSplitLine { line: usize, reason: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    InFile {
        path: PathBuf,
        #[source]
        source: Box<IngestError>,
    },
}

fn format_missing(missing: &[(String, String)]) -> String {
    const SHOWN: usize = 20;
    let mut s = missing
        .iter()
        .take(SHOWN)
        .map(|(sid, lang)| format!("{sid} ({lang})"))
        .collect::<Vec<_>>()
        .join(", ");
    if missing.len() > SHOWN {
        s.push_str(&format!(" and {} more", missing.len() - SHOWN));
    }
    s
}

/// One basic-dependency word line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenRow {
    pub id: u32,
    pub head: u32,
    pub deprel: String,
    pub form: String,
}

/// A validated sentence: exactly one root and head links forming a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceRecord {
    sent_id: String,
    language: String,
    text: Option<String>,
    tokens: Vec<TokenRow>,
}

impl SentenceRecord {
    pub fn new(
        sent_id: impl Into<String>,
        language: impl Into<String>,
        tokens: Vec<TokenRow>,
    ) -> Result<Self, IngestError> {
        let sent_id = sent_id.into();
        check_tree(&sent_id, &tokens)?;
        Ok(SentenceRecord {
            sent_id,
            language: language.into(),
            text: None,
            tokens,
        })
    }

    pub fn with_text(mut self, text: impl Into<String>) -> Self {
        self.text = Some(text.into());
        self
    }

    pub fn sent_id(&self) -> &str {
        &self.sent_id
    }

    pub fn language(&self) -> &str {
        &self.language
    }

    pub fn text(&self) -> Option<&str> {
        self.text.as_deref()
    }

    pub fn tokens(&self) -> &[TokenRow] {
        &self.tokens
    }

    /// Writes the sentence back as CoNLL-U, filling unused columns with `_`.
    pub fn to_conllu(&self) -> String {
        let mut out = format!("# sent_id = {}\n", self.sent_id);
        if let Some(text) = &self.text {
            out.push_str(&format!("# text = {text}\n"));
        }
        for t in &self.tokens {
            let form = if t.form.is_empty() { "_" } else { &t.form };
            out.push_str(&format!(
                "{}\t{}\t_\t_\t_\t_\t{}\t{}\t_\t_\n",
                t.id, form, t.head, t.deprel
            ));
        }
        out.push('\n');
        out
    }
}

fn check_tree(sent_id: &str, tokens: &[TokenRow]) -> Result<(), IngestError> {
    let fail = |reason: String| IngestError::NonTreeStructure {
        sent_id: sent_id.to_string(),
        reason,
    };
    if tokens.is_empty() {
        return Err(fail("no tokens".into()));
    }
    let mut head_of = HashMap::with_capacity(tokens.len());
    for t in tokens {
        if t.id == 0 {
            return Err(fail("token id 0".into()));
        }
        if t.head == t.id {
            return Err(fail(format!("token {} is its own head", t.id)));
        }
        if head_of.insert(t.id, t.head).is_some() {
            return Err(fail(format!("duplicate token id {}", t.id)));
        }
    }
    let roots = tokens.iter().filter(|t| t.head == 0).count();
    if roots != 1 {
        return Err(fail(format!("{roots} root tokens (head = 0)")));
    }
    for t in tokens {
        if t.head != 0 && !head_of.contains_key(&t.head) {
            return Err(fail(format!(
                "token {} points to missing head {}",
                t.id, t.head
            )));
        }
    }
    // With one root, the links form a tree iff every chain of heads reaches it.
    let mut resolved: HashSet<u32> = HashSet::with_capacity(tokens.len());
    for t in tokens {
        let mut path = Vec::new();
        let mut cur = t.id;
        while cur != 0 && !resolved.contains(&cur) {
            if path.contains(&cur) {
                return Err(fail(format!("cycle through token {cur}")));
            }
            path.push(cur);
            cur = head_of[&cur];
        }
        resolved.extend(path);
    }
    Ok(())
}

/// Parses CoNLL-U bytes; see [`parse_conllu`].
pub fn parse_conllu_bytes(bytes: &[u8], language: &str) -> Result<Vec<SentenceRecord>, IngestError> {
    parse_conllu(std::str::from_utf8(bytes)?, language)
}

/// Parses CoNLL-U text into validated sentence records.
///
/// Multiword-token lines (`3-4`) and empty nodes (`5.1`) are skipped.
/// Only `# sent_id` and `# text` comments are read. Relations are checked
/// after subtype stripping; the root token's relation is not checked since
/// it is relabelled anyway.
pub fn parse_conllu(text: &str, language: &str) -> Result<Vec<SentenceRecord>, IngestError> {
    let mut out = Vec::new();
    let mut block = Block::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() {
            if let Some(rec) = block.finish(language)? {
                out.push(rec);
            }
            continue;
        }
        if block.start_line == 0 {
            block.start_line = line_no;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some((key, value)) = comment.split_once('=') {
                match key.trim() {
                    "sent_id" => block.sent_id = Some(value.trim().to_string()),
                    "text" => block.text = Some(value.trim().to_string()),
                    _ => {}
                }
            }
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 10 {
            return Err(IngestError::MalformedLine {
                line: line_no,
                reason: format!("expected 10 tab-separated columns, found {}", cols.len()),
            });
        }
        if cols[0].contains('-') || cols[0].contains('.') {
            continue;
        }
        let id: u32 = cols[0].parse().map_err(|_| IngestError::MalformedLine {
            line: line_no,
            reason: format!("bad ID `{}`", cols[0]),
        })?;
        let head: u32 = cols[6].parse().map_err(|_| IngestError::MalformedLine {
            line: line_no,
            reason: format!("bad HEAD `{}`", cols[6]),
        })?;
        let deprel = cols[7];
        if deprel.is_empty() || deprel == "_" {
            return Err(IngestError::MalformedLine {
                line: line_no,
                reason: "empty DEPREL".into(),
            });
        }
        if head != 0 {
            relation_to_index(&base_relation(deprel)).map_err(|UnknownRelation(_)| {
                IngestError::UnknownRelation {
                    line: line_no,
                    deprel: deprel.to_string(),
                }
            })?;
        }
        block.tokens.push(TokenRow {
            id,
            head,
            deprel: deprel.to_string(),
            form: cols[1].to_string(),
        });
    }
    if let Some(rec) = block.finish(language)? {
        out.push(rec);
    }
    Ok(out)
}

#[derive(Default)]
struct Block {
    start_line: usize,
    sent_id: Option<String>,
    text: Option<String>,
    tokens: Vec<TokenRow>,
}

impl Block {
    fn finish(&mut self, language: &str) -> Result<Option<SentenceRecord>, IngestError> {
        let block = std::mem::take(self);
        if block.tokens.is_empty() {
            return Ok(None);
        }
        let sent_id = block.sent_id.ok_or(IngestError::MissingSentId {
            line: block.start_line,
        })?;
        let mut rec = SentenceRecord::new(sent_id, language, block.tokens)?;
        rec.text = block.text;
        Ok(Some(rec))
    }
}

/// Looks for a UD release string in `# ud_version = X` style comments.
pub fn detect_ud_version(text: &str) -> Option<String> {
    text.lines()
        .filter_map(|l| l.strip_prefix('#'))
        .filter_map(|c| c.split_once('='))
        .find(|(k, _)| {
            matches!(
                k.trim().to_ascii_lowercase().as_str(),
                "ud_version" | "ud_release" | "global.ud_version"
            )
        })
        .map(|(_, v)| v.trim().to_string())
}

/// The five parallel datasets, named by the sentences' original language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum DatasetName {
    Eng,
    Ger,
    Fre,
    Ita,
    Spa,
}

impl DatasetName {
    pub const ALL: [DatasetName; 5] = [
        DatasetName::Eng,
        DatasetName::Ger,
        DatasetName::Fre,
        DatasetName::Ita,
        DatasetName::Spa,
    ];

    /// Sentence count of the dataset in the full parallel corpus.
    pub fn expected_size(self) -> usize {
        match self {
            DatasetName::Eng => 750,
            DatasetName::Ger => 100,
            DatasetName::Fre | DatasetName::Ita | DatasetName::Spa => 50,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            DatasetName::Eng => "ENG",
            DatasetName::Ger => "GER",
            DatasetName::Fre => "FRE",
            DatasetName::Ita => "ITA",
            DatasetName::Spa => "SPA",
        }
    }

    /// Language code of the original sentences.
    pub fn language(self) -> &'static str {
        match self {
            DatasetName::Eng => "eng",
            DatasetName::Ger => "ger",
            DatasetName::Fre => "fre",
            DatasetName::Ita => "ita",
            DatasetName::Spa => "spa",
        }
    }
}

impl fmt::Display for DatasetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DatasetName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "ENG" => Ok(DatasetName::Eng),
            "GER" => Ok(DatasetName::Ger),
            "FRE" => Ok(DatasetName::Fre),
            "ITA" => Ok(DatasetName::Ita),
            "SPA" => Ok(DatasetName::Spa),
            other => Err(format!("unknown dataset `{other}` (expected ENG, GER, FRE, ITA or SPA)")),
        }
    }
}

/// Assignment of every sentence id to the dataset of its original language.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SplitMap {
    assignment: BTreeMap<String, DatasetName>,
}

impl SplitMap {
    pub fn new(assignment: BTreeMap<String, DatasetName>) -> Self {
        SplitMap { assignment }
    }

    /// Parses `sent_id<TAB>SPLIT` lines; blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self, IngestError> {
        let mut assignment = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |reason: String| IngestError::BadSplitLine {
                line: idx + 1,
                reason,
            };
            let (sid, split) = line
                .split_once('\t')
                .ok_or_else(|| bad("expected `sent_id<TAB>SPLIT`".into()))?;
            let name: DatasetName = split.parse().map_err(bad)?;
            assignment.insert(sid.trim().to_string(), name);
        }
        Ok(SplitMap { assignment })
    }

    pub fn to_text(&self) -> String {
        self.assignment
            .iter()
            .map(|(sid, name)| format!("{sid}\t{name}\n"))
            .collect()
    }

    /// Derives the split from parallel-corpus sentence ids of the form
    /// `n01003011` / `w05001012`, whose two digits after the source letter
    /// give the original language (01 English, 02 German, 03 French,
    /// 04 Italian, 05 Spanish). Ids that do not follow the pattern are left out.
    pub fn from_sent_id_prefixes<'a>(ids: impl IntoIterator<Item = &'a str>) -> Self {
        let assignment = ids
            .into_iter()
            .filter_map(|sid| {
                let name = match sid.get(1..3)? {
                    "01" => DatasetName::Eng,
                    "02" => DatasetName::Ger,
                    "03" => DatasetName::Fre,
                    "04" => DatasetName::Ita,
                    "05" => DatasetName::Spa,
                    _ => return None,
                };
                Some((sid.to_string(), name))
            })
            .collect();
        SplitMap { assignment }
    }

    pub fn get(&self, sent_id: &str) -> Option<DatasetName> {
        self.assignment.get(sent_id).copied()
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn counts(&self) -> BTreeMap<DatasetName, usize> {
        let mut counts = BTreeMap::new();
        for name in self.assignment.values() {
            *counts.entry(*name).or_default() += 1;
        }
        counts
    }
}

/// A grid of dependency trees indexed by (sentence, language).
#[derive(Debug, Clone)]
pub struct Dataset {
    name: DatasetName,
    languages: Vec<String>,
    sent_ids: Vec<String>,
    /// `trees[sentence][language]`
    trees: Vec<Vec<DepTree>>,
}

impl Dataset {
    /// Aligns parsed treebanks by sentence id and keeps the sentences of `name`.
    ///
    /// Languages are ordered by [`LANGUAGE_ORDER`], unknown codes after it in
    /// lexical order; sentence ids are sorted.
    pub fn assemble(
        name: DatasetName,
        treebanks: &BTreeMap<String, Vec<SentenceRecord>>,
        split: &SplitMap,
    ) -> Result<Self, IngestError> {
        let languages = order_languages(treebanks.keys().map(String::as_str));
        let mut by_lang: Vec<HashMap<&str, &SentenceRecord>> = Vec::with_capacity(languages.len());
        for lang in &languages {
            let mut map = HashMap::new();
            for rec in &treebanks[lang] {
                if map.insert(rec.sent_id(), rec).is_some() {
                    return Err(IngestError::DuplicateSentId {
                        sent_id: rec.sent_id().to_string(),
                        language: lang.clone(),
                    });
                }
            }
            by_lang.push(map);
        }

        let all_ids: BTreeSet<&str> = by_lang.iter().flat_map(|m| m.keys().copied()).collect();
        let uncovered: Vec<String> = all_ids
            .iter()
            .filter(|sid| split.get(sid).is_none())
            .map(|s| s.to_string())
            .collect();
        if !uncovered.is_empty() {
            return Err(IngestError::SplitMismatch(uncovered));
        }

        let sent_ids: Vec<&str> = all_ids
            .into_iter()
            .filter(|sid| split.get(sid) == Some(name))
            .collect();
        let mut missing = Vec::new();
        for sid in &sent_ids {
            for (li, lang) in languages.iter().enumerate() {
                if !by_lang[li].contains_key(sid) {
                    missing.push((sid.to_string(), lang.clone()));
                }
            }
        }
        if !missing.is_empty() {
            return Err(IngestError::MissingTranslation(missing));
        }

        let trees = sent_ids
            .par_iter()
            .map(|sid| {
                by_lang
                    .iter()
                    .map(|m| {
                        let rec = m[sid];
                        DepTree::from_sentence(rec).map_err(|UnknownRelation(deprel)| {
                            IngestError::UnknownRelation { line: 0, deprel }
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;

        Ok(Dataset {
            name,
            languages,
            sent_ids: sent_ids.into_iter().map(str::to_string).collect(),
            trees,
        })
    }

    /// Builds a dataset directly from trees; `trees[s][l]` belongs to `sent_ids[s]`, `languages[l]`.
    pub fn from_trees(
        name: DatasetName,
        languages: Vec<String>,
        sent_ids: Vec<String>,
        trees: Vec<Vec<DepTree>>,
    ) -> Self {
        assert_eq!(sent_ids.len(), trees.len(), "one row of trees per sentence");
        assert!(
            trees.iter().all(|row| row.len() == languages.len()),
            "one tree per language in every row"
        );
        Dataset {
            name,
            languages,
            sent_ids,
            trees,
        }
    }

    pub fn name(&self) -> DatasetName {
        self.name
    }

    pub fn languages(&self) -> &[String] {
        &self.languages
    }

    pub fn sent_ids(&self) -> &[String] {
        &self.sent_ids
    }

    pub fn len(&self) -> usize {
        self.sent_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sent_ids.is_empty()
    }

    pub fn language_index(&self, language: &str) -> Option<usize> {
        self.languages.iter().position(|l| l == language)
    }

    pub fn sentence_index(&self, sent_id: &str) -> Option<usize> {
        self.sent_ids.binary_search_by(|s| s.as_str().cmp(sent_id)).ok()
    }

    pub fn tree(&self, sent_id: &str, language: &str) -> Option<&DepTree> {
        let s = self.sentence_index(sent_id)?;
        let l = self.language_index(language)?;
        Some(&self.trees[s][l])
    }

    pub fn tree_at(&self, sentence: usize, language: usize) -> &DepTree {
        &self.trees[sentence][language]
    }

    pub fn row(&self, sentence: usize) -> &[DepTree] {
        &self.trees[sentence]
    }
}

/// Orders language codes by [`LANGUAGE_ORDER`], unknown codes last in lexical order.
pub fn order_languages<'a>(codes: impl IntoIterator<Item = &'a str>) -> Vec<String> {
    let mut codes: Vec<&str> = codes.into_iter().collect();
    codes.sort_by_key(|c| {
        (
            LANGUAGE_ORDER
                .iter()
                .position(|k| k == c)
                .unwrap_or(LANGUAGE_ORDER.len()),
            c.to_string(),
        )
    });
    codes.dedup();
    codes.into_iter().map(str::to_string).collect()
}

/// Reads and parses treebank files in parallel.
pub fn read_treebanks(
    files: &BTreeMap<String, PathBuf>,
) -> Result<BTreeMap<String, Vec<SentenceRecord>>, IngestError> {
    files
        .par_iter()
        .map(|(lang, path)| {
            let bytes = fs::read(path).map_err(|source| IngestError::Io {
                path: path.clone(),
                source,
            })?;
            let records = parse_conllu_bytes(&bytes, lang).map_err(|e| IngestError::InFile {
                path: path.clone(),
                source: Box::new(e),
            })?;
            Ok((lang.clone(), records))
        })
        .collect()
}

/// Reads the treebanks and assembles one dataset per requested name.
pub fn build_datasets(
    files: &BTreeMap<String, PathBuf>,
    split: &SplitMap,
    names: &[DatasetName],
) -> Result<Vec<Dataset>, IngestError> {
    let treebanks = read_treebanks(files)?;
    names
        .iter()
        .map(|&name| Dataset::assemble(name, &treebanks, split))
        .collect()
}

/// Reads the treebanks and assembles the dataset `name`.
pub fn build_dataset(
    files: &BTreeMap<String, PathBuf>,
    split: &SplitMap,
    name: DatasetName,
) -> Result<Dataset, IngestError> {
    Ok(build_datasets(files, split, &[name])?.remove(0))
}

/// Language code of a treebank file named like `en_pud-ud-test.conllu` or `eng.conllu`.
pub fn language_from_path(path: &Path) -> Option<&'static str> {
    let stem = path.file_name()?.to_str()?;
    let code = stem.split(['_', '.', '-']).next()?;
    normalize_language(code)
}
