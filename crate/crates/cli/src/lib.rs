//! Command implementations behind the `syntaxpoly` binary.

pub mod args;
pub mod cache;
pub mod corpus;
pub mod error;
pub mod output;
pub mod report;
pub mod termfile;

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use log::warn;
use serde_json::{json, Value};
use syntaxpoly::deptree::DepTree;
use syntaxpoly::distance::{polynomial_distance, TermVectorSet};
use syntaxpoly::diversity::{corpus_stats, CorpusStats};
use syntaxpoly::exact::Exact;
use syntaxpoly::ingest::{language_from_path, parse_conllu, Dataset, SentenceRecord};
use syntaxpoly::matrices::{
    extreme_sentences, language_matrix, summarize, translation_matrix, DistanceMatrix,
    PolynomialGrid,
};
use syntaxpoly::polynomial::{compute_labeled, compute_unlabeled, Polynomial, TermVector};
use syntaxpoly::typology::svg::{dendrogram_svg, embedding_svg};
use syntaxpoly::typology::{classical_mds, cluster_matrix, embedding_csv, to_newick};

use args::{Cli, Command, DataArgs, OutArgs};
use cache::PolyCache;
use corpus::{Corpus, CorpusOptions};
use error::{ensure, CliError, Result};
use output::{emit, parse_positive_rational, to_json, Format, ROUNDING_POLICY};

/// Runs one command on a pool of `cli.workers` threads.
pub fn run(cli: Cli) -> Result<()> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.workers)
        .build()
        .map_err(|e| CliError::Internal(format!("thread pool: {e}")))?;
    pool.install(|| dispatch(cli.command))
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Poly {
            input,
            output,
            unlabeled,
        } => {
            let records = read_conllu(&input)?;
            let text = poly_file(&records, unlabeled)?;
            emit(output.as_deref(), &text)
        }
        Command::Dist {
            a,
            b,
            sent_id,
            unlabeled,
            out,
        } => cmd_dist(&a, &b, sent_id.as_deref(), unlabeled, &out),
        Command::Matrix { data, sent_id, out } => {
            let (_, _, grid) = prepare(&data)?;
            let m = match &sent_id {
                Some(sid) => translation_matrix(&grid, sid)?,
                None => checked_language_matrix(&grid)?,
            };
            let text = match out.format.unwrap_or(Format::Csv) {
                Format::Csv => report::matrix_csv(&m, out.exact),
                Format::Json => report::matrix_json(&m, out.exact)?,
            };
            emit(out.output.as_deref(), &text)
        }
        Command::Summary { data, out } => {
            let (_, dataset, grid) = prepare(&data)?;
            let m = checked_language_matrix(&grid)?;
            let s = summarize(&m);
            let text = match out.format.unwrap_or(Format::Json) {
                Format::Csv => report::summary_csv(data.split, &s, out.exact),
                Format::Json => to_json(&report::summary_value(
                    data.split,
                    dataset.len(),
                    &s,
                    out.exact,
                ))?,
            };
            emit(out.output.as_deref(), &text)
        }
        Command::Cluster { data, out, svg } => {
            let (_, _, grid) = prepare(&data)?;
            let d = cluster_matrix(&checked_language_matrix(&grid)?)?;
            let newick = to_newick(&d);
            let text = match out.format {
                None => format!("{newick}\n"),
                Some(Format::Json) => report::dendrogram_json(&d, &newick)?,
                Some(Format::Csv) => report::dendrogram_csv(&d),
            };
            if let Some(p) = svg {
                emit(Some(&p), &dendrogram_svg(&d))?;
            }
            emit(out.output.as_deref(), &text)
        }
        Command::Mds {
            data,
            out,
            dims,
            svg,
        } => {
            let (_, _, grid) = prepare(&data)?;
            let m = checked_language_matrix(&grid)?;
            let e = classical_mds(m.labels(), &m.to_f64(), dims)?;
            for w in &e.warnings {
                warn!("{w}");
            }
            let text = match out.format.unwrap_or(Format::Csv) {
                Format::Csv => embedding_csv(&e),
                Format::Json => report::embedding_json(&e)?,
            };
            if let Some(p) = svg {
                emit(Some(&p), &embedding_svg(&e))?;
            }
            emit(out.output.as_deref(), &text)
        }
        Command::Diversity {
            data,
            out,
            bin_width,
        } => {
            let w = parse_positive_rational(&bin_width)?;
            let (_, _, grid) = prepare(&data)?;
            let stats = all_corpus_stats(&grid, &w)?;
            let text = match out.format.unwrap_or(Format::Json) {
                Format::Csv => report::diversity_csv(&stats, out.exact),
                Format::Json => diversity_json(&data, &stats, out.exact)?,
            };
            emit(out.output.as_deref(), &text)
        }
        Command::Extremes {
            data,
            lang_a,
            lang_b,
            out,
        } => {
            let (corpus, dataset, grid) = prepare(&data)?;
            let norm = |c: &str| {
                syntaxpoly::ingest::normalize_language(c)
                    .map(str::to_string)
                    .unwrap_or_else(|| c.to_string())
            };
            let (a, b) = (norm(&lang_a), norm(&lang_b));
            let e = extreme_sentences(&grid, &a, &b)?;
            let rep = report::ExtremesReport {
                split: data.split,
                lang_a: &a,
                lang_b: &b,
                n_sentences: dataset.len(),
                extremes: &e,
                texts: [
                    [corpus.text(&a, &e.min_sent_id), corpus.text(&b, &e.min_sent_id)],
                    [corpus.text(&a, &e.max_sent_id), corpus.text(&b, &e.max_sent_id)],
                ],
            };
            let text = match out.format.unwrap_or(Format::Json) {
                Format::Csv => rep.csv(out.exact),
                Format::Json => rep.json(out.exact)?,
            };
            emit(out.output.as_deref(), &text)
        }
        Command::Pipeline {
            data,
            out_dir,
            bin_width,
            exact,
            svg,
            no_diversity,
        } => {
            let w = parse_positive_rational(&bin_width)?;
            cmd_pipeline(&data, &out_dir, &w, exact, svg, !no_diversity)
        }
    }
}

fn read_conllu(path: &Path) -> Result<Vec<SentenceRecord>> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    let text = std::str::from_utf8(&bytes)
        .map_err(|e| CliError::Input(format!("{}: not valid UTF-8: {e}", path.display())))?;
    let lang = language_from_path(path).unwrap_or("und");
    parse_conllu(text, lang).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn tree_of(rec: &SentenceRecord) -> Result<DepTree> {
    DepTree::from_sentence(rec).map_err(|e| CliError::Input(format!("{}: {e}", rec.sent_id())))
}

fn polynomial_of(rec: &SentenceRecord, unlabeled: bool) -> Result<Polynomial> {
    let t = tree_of(rec)?;
    Ok(if unlabeled {
        compute_unlabeled(&t)
    } else {
        compute_labeled(&t)
    })
}

/// Term-vector file for all sentences, in file order.
pub fn poly_file(records: &[SentenceRecord], unlabeled: bool) -> Result<String> {
    use rayon::prelude::*;
    let vectors: Vec<Vec<TermVector>> = records
        .par_iter()
        .map(|r| Ok(polynomial_of(r, unlabeled)?.to_term_vectors()))
        .collect::<Result<_>>()?;
    Ok(termfile::write(
        records
            .iter()
            .zip(&vectors)
            .map(|(r, v)| (r.sent_id(), v.as_slice())),
    ))
}

fn cmd_dist(a: &Path, b: &Path, only: Option<&str>, unlabeled: bool, out: &OutArgs) -> Result<()> {
    let ra = read_conllu(a)?;
    let rb = read_conllu(b)?;
    let by_id: HashMap<&str, &SentenceRecord> = rb.iter().map(|r| (r.sent_id(), r)).collect();
    let mut pairs: Vec<(&SentenceRecord, &SentenceRecord)> = ra
        .iter()
        .filter(|r| only.is_none_or(|s| s == r.sent_id()))
        .filter_map(|r| by_id.get(r.sent_id()).map(|q| (r, *q)))
        .collect();
    if pairs.is_empty() && only.is_none() && ra.len() == 1 && rb.len() == 1 {
        pairs.push((&ra[0], &rb[0]));
    }
    if pairs.is_empty() {
        return Err(CliError::Input(match only {
            Some(s) => format!("sentence `{s}` is not in both files"),
            None => "the two files share no sentence ids".into(),
        }));
    }
    let set = |r: &SentenceRecord| -> Result<TermVectorSet> {
        TermVectorSet::from_polynomial(&polynomial_of(r, unlabeled)?)
            .map_err(|e| CliError::Internal(e.to_string()))
    };
    let rows: Vec<(String, Exact)> = pairs
        .iter()
        .map(|(p, q)| {
            let id = if p.sent_id() == q.sent_id() {
                p.sent_id().to_string()
            } else {
                format!("{}|{}", p.sent_id(), q.sent_id())
            };
            Ok((id, polynomial_distance(&set(p)?, &set(q)?)))
        })
        .collect::<Result<_>>()?;
    let text = match out.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut s = String::from("sent_id,distance\n");
            for (id, d) in &rows {
                s.push_str(&format!("{id},{}\n", output::cell(d, out.exact)));
            }
            s
        }
        Format::Json => {
            let v: Vec<Value> = rows
                .iter()
                .map(|(id, d)| {
                    let mut o = serde_json::Map::new();
                    o.insert("sent_id".into(), id.clone().into());
                    output::put(&mut o, "distance", d, out.exact);
                    Value::Object(o)
                })
                .collect();
            to_json(&Value::from(v))?
        }
    };
    emit(out.output.as_deref(), &text)
}

fn corpus_options(data: &DataArgs) -> CorpusOptions {
    CorpusOptions {
        dataset_dir: data.dataset_dir.clone(),
        langs: data.langs.clone(),
        split_file: data.split_file.clone(),
        ud_version: data.ud_version.clone(),
    }
}

fn prepare(data: &DataArgs) -> Result<(Corpus, Dataset, PolynomialGrid)> {
    let corpus = Corpus::load(&corpus_options(data))?;
    for w in &corpus.split_warnings {
        warn!("{w}");
    }
    let dataset = corpus.dataset(data.split)?;
    if dataset.is_empty() {
        return Err(CliError::Input(format!("the {} split has no sentences", data.split)));
    }
    let cache = data.cache_dir.as_ref().map(PolyCache::new);
    let grid = corpus.grid(&dataset, cache.as_ref())?;
    Ok((corpus, dataset, grid))
}

fn checked_language_matrix(grid: &PolynomialGrid) -> Result<DistanceMatrix> {
    if grid.languages().len() < 2 {
        return Err(CliError::Input("at least two languages are needed".into()));
    }
    let m = language_matrix(grid)?;
    let n = m.len();
    ensure(
        (0..n).all(|i| (0..n).all(|j| m.get(i, j) == m.get(j, i)) && m.get(i, i) == &Exact::from_integer(0u8.into())),
        || "language matrix is not symmetric with zero diagonal".into(),
    )?;
    Ok(m)
}

fn all_corpus_stats(grid: &PolynomialGrid, w: &Exact) -> Result<Vec<CorpusStats>> {
    grid.languages()
        .iter()
        .map(|lang| {
            let s = corpus_stats(grid, lang, w)?;
            let n = s.n_sentences as u64;
            ensure(s.n_pairs == n * n.saturating_sub(1) / 2, || {
                format!("{lang}: {} pairs for {n} sentences", s.n_pairs)
            })?;
            ensure(s.counts.iter().sum::<u64>() == s.n_pairs, || {
                format!("{lang}: histogram counts do not sum to the pair count")
            })?;
            ensure(s.diameter >= s.mean, || format!("{lang}: diameter below mean"))?;
            Ok(s)
        })
        .collect()
}

fn diversity_json(data: &DataArgs, stats: &[CorpusStats], exact: bool) -> Result<String> {
    let langs: Vec<Value> = stats
        .iter()
        .map(|s| report::diversity_value(s, exact))
        .collect();
    to_json(&json!({
        "split": data.split.as_str(),
        "languages": langs,
    }))
}

/// Wall-clock time of the run, or `SOURCE_DATE_EPOCH` when set.
fn timestamp() -> String {
    let now = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.trim().parse::<i64>().ok())
        .and_then(|secs| chrono::DateTime::from_timestamp(secs, 0))
        .unwrap_or_else(chrono::Utc::now);
    now.to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

/// Tolerance for comparing against reference values: tight when the
/// release is known to match, loose when it is known to differ.
fn reference_tolerance(data: &DataArgs) -> f64 {
    if data.release_differs {
        0.5
    } else {
        0.05
    }
}

fn cmd_pipeline(
    data: &DataArgs,
    out_dir: &Path,
    bin_width: &Exact,
    exact: bool,
    svg: bool,
    diversity: bool,
) -> Result<()> {
    let (corpus, dataset, grid) = prepare(data)?;
    fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;
    let write = |name: &str, text: &str| emit(Some(&out_dir.join(name)), text);

    let m = checked_language_matrix(&grid)?;
    write("language_matrix.csv", &report::matrix_csv(&m, false))?;
    if exact {
        write("language_matrix_exact.csv", &report::matrix_csv(&m, true))?;
    }

    let summary = summarize(&m);
    ensure(summary.n_pairs == m.len() * (m.len() - 1) / 2, || {
        "summary pair count does not match the matrix size".into()
    })?;
    write(
        "summary.json",
        &to_json(&report::summary_value(data.split, dataset.len(), &summary, exact))?,
    )?;

    let dendrogram = cluster_matrix(&m)?;
    write("dendrogram.nwk", &format!("{}\n", to_newick(&dendrogram)))?;

    let embedding = classical_mds(m.labels(), &m.to_f64(), 2.min(m.len()))?;
    for w in &embedding.warnings {
        warn!("{w}");
    }
    write("mds.csv", &embedding_csv(&embedding))?;
    if svg {
        write("mds.svg", &embedding_svg(&embedding))?;
    }
    if svg {
        write("dendrogram.svg", &dendrogram_svg(&dendrogram))?;
    }

    if diversity {
        let stats = all_corpus_stats(&grid, bin_width)?;
        write("diversity.json", &diversity_json(data, &stats, exact)?)?;
    }

    let treebanks: Vec<Value> = corpus
        .treebanks
        .iter()
        .map(|t| {
            json!({
                "language": t.language,
                "file": t.file_name,
                "sha256": t.sha256,
                "sentences": t.sentences,
                "ud_version": t.ud_version,
            })
        })
        .collect();
    let metadata = json!({
        "tool": format!("syntaxpoly {}", env!("CARGO_PKG_VERSION")),
        "timestamp": timestamp(),
        "split": data.split.as_str(),
        "languages": dataset.languages(),
        "n_sentences": dataset.len(),
        "ud_version": corpus.ud_version,
        "ud_version_source": corpus.ud_version_source,
        "release_differs_from_reference": data.release_differs,
        "reference_tolerance": reference_tolerance(data),
        "rounding": ROUNDING_POLICY,
        "relation_subtypes_stripped": true,
        "root_relation_index": syntaxpoly::RelationIndex::ROOT.get(),
        "split_source": corpus.split_source,
        "split_warnings": corpus.split_warnings,
        "bin_width": syntaxpoly::exact::to_fraction_string(bin_width),
        "diversity_computed": diversity,
        "max_term_count": grid.max_term_count(),
        "mds_warnings": embedding.warnings,
        "treebanks": treebanks,
    });
    write("metadata.json", &to_json(&metadata)?)
}
