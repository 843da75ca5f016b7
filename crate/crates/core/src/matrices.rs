//! Translation and language distance matrices and their summaries.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::distance::{polynomial_distance, polynomial_distance_parts, TermVectorSet};
use crate::exact::{exact_from_u64, rounded_f64, to_fraction_string, Exact, ExactSum};
use crate::ingest::Dataset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("sentence `{0}` is not in the dataset")]
    MissingTranslation(String),
    #[error("language `{0}` is not in the dataset")]
    UnknownLanguage(String),
    #[error("no sentences to average over")]
    NoSentences,
}

/// Term-vector sets for every tree of a dataset, `sets[sentence][language]`.
#[derive(Debug, Clone)]
pub struct PolynomialGrid {
    languages: Vec<String>,
    sent_ids: Vec<String>,
    sets: Vec<Vec<TermVectorSet>>,
}

impl PolynomialGrid {
    /// Computes every tree polynomial of the dataset in parallel.
    pub fn compute(dataset: &Dataset) -> Self {
        let sets = (0..dataset.len())
            .into_par_iter()
            .map(|s| dataset.row(s).iter().map(TermVectorSet::from_tree).collect())
            .collect();
        PolynomialGrid {
            languages: dataset.languages().to_vec(),
            sent_ids: dataset.sent_ids().to_vec(),
            sets,
        }
    }

    /// Assembles a grid from precomputed sets, `sets[sentence][language]`.
    pub fn from_sets(
        languages: Vec<String>,
        sent_ids: Vec<String>,
        sets: Vec<Vec<TermVectorSet>>,
    ) -> Self {
        assert_eq!(sent_ids.len(), sets.len(), "one row per sentence");
        assert!(
            sets.iter().all(|r| r.len() == languages.len()),
            "one set per language"
        );
        PolynomialGrid {
            languages,
            sent_ids,
            sets,
        }
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

    pub fn set(&self, sentence: usize, language: usize) -> &TermVectorSet {
        &self.sets[sentence][language]
    }

    pub fn language_index(&self, language: &str) -> Result<usize, MatrixError> {
        self.languages
            .iter()
            .position(|l| l == language)
            .ok_or_else(|| MatrixError::UnknownLanguage(language.to_string()))
    }

    pub fn sentence_index(&self, sent_id: &str) -> Result<usize, MatrixError> {
        self.sent_ids
            .iter()
            .position(|s| s == sent_id)
            .ok_or_else(|| MatrixError::MissingTranslation(sent_id.to_string()))
    }

    /// Largest number of terms in any polynomial of the grid.
    pub fn max_term_count(&self) -> usize {
        self.sets
            .iter()
            .flatten()
            .map(TermVectorSet::len)
            .max()
            .unwrap_or(0)
    }
}

/// Symmetric matrix of exact distances with zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    labels: Vec<String>,
    values: Vec<Exact>,
}

impl DistanceMatrix {
    pub fn zeros(labels: Vec<String>) -> Self {
        let n = labels.len();
        DistanceMatrix {
            labels,
            values: vec![Exact::zero(); n * n],
        }
    }

    /// Builds the matrix from `f(i, j)` evaluated on `i < j`.
    pub fn from_upper(labels: Vec<String>, mut f: impl FnMut(usize, usize) -> Exact) -> Self {
        let mut m = DistanceMatrix::zeros(labels);
        let n = m.len();
        for i in 0..n {
            for j in i + 1..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> &Exact {
        &self.values[i * self.len() + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, v: Exact) {
        assert_ne!(i, j, "diagonal stays zero");
        let n = self.len();
        self.values[j * n + i] = v.clone();
        self.values[i * n + j] = v;
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn get_by_label(&self, a: &str, b: &str) -> Option<&Exact> {
        Some(self.get(self.index_of(a)?, self.index_of(b)?))
    }

    /// Entries `(i, j, value)` with `i < j`, row-major.
    pub fn upper_triangle(&self) -> impl Iterator<Item = (usize, usize, &Exact)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j, self.get(i, j))))
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        let n = self.len();
        (0..n)
            .map(|i| (0..n).map(|j| crate::exact::to_f64(self.get(i, j))).collect())
            .collect()
    }

    /// Rows and columns reordered so that row `k` is old row `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> DistanceMatrix {
        let labels = order.iter().map(|&i| self.labels[i].clone()).collect();
        let mut m = DistanceMatrix::zeros(labels);
        let n = order.len();
        for a in 0..n {
            for b in a + 1..n {
                m.set(a, b, self.get(order[a], order[b]).clone());
            }
        }
        m
    }

    /// CSV with a header row of labels; values rounded half-up to `places`.
    pub fn to_csv(&self, places: u32) -> String {
        let mut s = String::from("language");
        for l in &self.labels {
            s.push(',');
            s.push_str(l);
        }
        s.push('\n');
        for i in 0..self.len() {
            s.push_str(&self.labels[i]);
            for j in 0..self.len() {
                s.push(',');
                s.push_str(&crate::exact::round_half_up(self.get(i, j), places));
            }
            s.push('\n');
        }
        s
    }

    /// Serializable form; `exact` adds `numerator/denominator` strings.
    pub fn to_report(&self, places: u32, exact: bool) -> MatrixReport {
        let n = self.len();
        MatrixReport {
            labels: self.labels.clone(),
            values: (0..n)
                .map(|i| (0..n).map(|j| rounded_f64(self.get(i, j), places)).collect())
                .collect(),
            exact: exact.then(|| {
                (0..n)
                    .map(|i| (0..n).map(|j| to_fraction_string(self.get(i, j))).collect())
                    .collect()
            }),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MatrixReport {
    pub labels: Vec<String>,
    pub values: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<Vec<Vec<String>>>,
}

/// Distances between the translations of one sentence.
pub fn translation_matrix_at(grid: &PolynomialGrid, sentence: usize) -> DistanceMatrix {
    let row = &grid.sets[sentence];
    DistanceMatrix::from_upper(grid.languages.clone(), |i, j| {
        polynomial_distance(&row[i], &row[j])
    })
}

pub fn translation_matrix(grid: &PolynomialGrid, sent_id: &str) -> Result<DistanceMatrix, MatrixError> {
    Ok(translation_matrix_at(grid, grid.sentence_index(sent_id)?))
}

/// Translation matrices of every sentence, in sentence order.
pub fn translation_matrices(grid: &PolynomialGrid) -> Vec<DistanceMatrix> {
    (0..grid.len())
        .into_par_iter()
        .map(|s| translation_matrix_at(grid, s))
        .collect()
}

/// Entry-wise mean of equally-labelled matrices.
pub fn mean_matrix(matrices: &[DistanceMatrix]) -> Result<DistanceMatrix, MatrixError> {
    let first = matrices.first().ok_or(MatrixError::NoSentences)?;
    let labels = first.labels.clone();
    let n = labels.len();
    let sums: Vec<ExactSum> = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / n, k % n);
            let mut acc = ExactSum::new();
            if i < j {
                for m in matrices {
                    acc.add(m.get(i, j));
                }
            }
            acc
        })
        .collect();
    Ok(DistanceMatrix::from_upper(labels, |i, j| sums[i * n + j].mean()))
}

/// Mean of the translation matrices over all sentences of the grid.
pub fn language_matrix(grid: &PolynomialGrid) -> Result<DistanceMatrix, MatrixError> {
    mean_matrix(&translation_matrices(grid))
}

/// One labelled matrix entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairEntry {
    pub a: String,
    pub b: String,
    pub value: Exact,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelValue {
    pub label: String,
    pub value: Exact,
}

/// Summary statistics of a distance matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageSummary {
    /// Number of strictly-upper-triangle entries.
    pub n_pairs: usize,
    pub mean: Exact,
    pub median: Exact,
    /// Up to three smallest pairs, ascending.
    pub smallest: Vec<PairEntry>,
    /// Up to three largest pairs, descending.
    pub largest: Vec<PairEntry>,
    /// Average distance of each label to all others, in matrix order.
    pub average: Vec<LabelValue>,
    pub smallest_average: Vec<LabelValue>,
    pub largest_average: Vec<LabelValue>,
}

const EXTREME_COUNT: usize = 3;

/// Mean, median and extremes over the upper triangle, plus average distance per label.
///
/// Ties are ordered by row-major entry position (label position for averages).
pub fn summarize(m: &DistanceMatrix) -> LanguageSummary {
    let n = m.len();
    let mut entries: Vec<(usize, usize, &Exact)> = m.upper_triangle().collect();
    let mut sum = ExactSum::new();
    for (_, _, v) in &entries {
        sum.add(v);
    }
    entries.sort_by(|a, b| a.2.cmp(b.2).then((a.0, a.1).cmp(&(b.0, b.1))));
    let median = if entries.is_empty() {
        Exact::zero()
    } else if entries.len() % 2 == 1 {
        entries[entries.len() / 2].2.clone()
    } else {
        let h = entries.len() / 2;
        (entries[h - 1].2 + entries[h].2) / exact_from_u64(2)
    };
    let pair = |&(i, j, v): &(usize, usize, &Exact)| PairEntry {
        a: m.labels()[i].clone(),
        b: m.labels()[j].clone(),
        value: v.clone(),
    };
    let smallest = entries.iter().take(EXTREME_COUNT).map(pair).collect();
    let mut by_desc = entries.clone();
    by_desc.sort_by(|a, b| b.2.cmp(a.2).then((a.0, a.1).cmp(&(b.0, b.1))));
    let largest = by_desc.iter().take(EXTREME_COUNT).map(pair).collect();

    let average: Vec<LabelValue> = (0..n)
        .map(|i| {
            let mut acc = ExactSum::new();
            for j in (0..n).filter(|&j| j != i) {
                acc.add(m.get(i, j));
            }
            LabelValue {
                label: m.labels()[i].clone(),
                value: acc.mean(),
            }
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| average[a].value.cmp(&average[b].value).then(a.cmp(&b)));
    let smallest_average = order
        .iter()
        .take(EXTREME_COUNT)
        .map(|&i| average[i].clone())
        .collect();
    order.sort_by(|&a, &b| average[b].value.cmp(&average[a].value).then(a.cmp(&b)));
    let largest_average = order
        .iter()
        .take(EXTREME_COUNT)
        .map(|&i| average[i].clone())
        .collect();

    LanguageSummary {
        n_pairs: entries.len(),
        mean: sum.mean(),
        median,
        smallest,
        largest,
        average,
        smallest_average,
        largest_average,
    }
}

/// Sentences with the smallest and largest distance between two languages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extremes {
    pub min_sent_id: String,
    pub min: Exact,
    /// Every sentence attaining the minimum, sorted.
    pub min_ties: Vec<String>,
    pub max_sent_id: String,
    pub max: Exact,
    pub max_ties: Vec<String>,
}

/// Per-sentence distances between two languages, in sentence order.
pub fn pair_distances(
    grid: &PolynomialGrid,
    lang_a: &str,
    lang_b: &str,
) -> Result<Vec<Exact>, MatrixError> {
    let a = grid.language_index(lang_a)?;
    let b = grid.language_index(lang_b)?;
    Ok((0..grid.len())
        .into_par_iter()
        .map(|s| {
            let (num, den) = polynomial_distance_parts(grid.set(s, a), grid.set(s, b));
            if num.is_zero() {
                Exact::zero()
            } else {
                Exact::new(num, den.into())
            }
        })
        .collect())
}

/// Argmin and argmax over sentences; ties go to the lexicographically smallest id.
pub fn extreme_sentences(
    grid: &PolynomialGrid,
    lang_a: &str,
    lang_b: &str,
) -> Result<Extremes, MatrixError> {
    let d = pair_distances(grid, lang_a, lang_b)?;
    if d.is_empty() {
        return Err(MatrixError::NoSentences);
    }
    let min = d.iter().min().expect("non-empty").clone();
    let max = d.iter().max().expect("non-empty").clone();
    let ties = |target: &Exact| {
        let mut ids: Vec<String> = d
            .iter()
            .zip(grid.sent_ids())
            .filter(|(v, _)| *v == target)
            .map(|(_, s)| s.clone())
            .collect();
        ids.sort();
        ids
    };
    let min_ties = ties(&min);
    let max_ties = ties(&max);
    Ok(Extremes {
        min_sent_id: min_ties[0].clone(),
        min,
        min_ties,
        max_sent_id: max_ties[0].clone(),
        max,
        max_ties,
    })
}
