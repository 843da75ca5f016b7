//! Syntax diversity of a single-language corpus from all pairwise sentence distances.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::distance::polynomial_distance_parts;
use crate::exact::{exact_from_u64, Exact, ExactSum};
use crate::matrices::{MatrixError, PolynomialGrid};

/// Pair distances of one corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusStats {
    pub language: String,
    pub n_sentences: usize,
    pub n_pairs: u64,
    /// Largest pairwise distance (zero for fewer than two sentences).
    pub diameter: Exact,
    /// Sentence ids of the first pair (in sentence order) attaining the diameter.
    pub diameter_pair: Option<(String, String)>,
    pub mean: Exact,
    /// Extra statistics beyond diameter and mean.
    pub min: Exact,
    pub variance: Exact,
    pub bin_width: Exact,
    /// `counts[k]` pairs with distance in `[k·w, (k+1)·w)`, from bin 0 to the top occupied bin.
    pub counts: Vec<u64>,
}

impl CorpusStats {
    pub fn bins(&self) -> impl Iterator<Item = (Exact, Exact, u64)> + '_ {
        self.counts.iter().enumerate().map(|(k, &c)| {
            let lo = &self.bin_width * exact_from_u64(k as u64);
            let hi = &self.bin_width * exact_from_u64(k as u64 + 1);
            (lo, hi, c)
        })
    }
}

#[derive(Debug, Clone)]
struct Partial {
    sum: ExactSum,
    sum_sq: ExactSum,
    /// (numerator, denominator, i, j) of the current maximum / minimum.
    max: Option<(BigUint, u64, usize, usize)>,
    min: Option<(BigUint, u64)>,
    bins: BTreeMap<u64, u64>,
}

impl Partial {
    fn new() -> Self {
        Partial {
            sum: ExactSum::new(),
            sum_sq: ExactSum::new(),
            max: None,
            min: None,
            bins: BTreeMap::new(),
        }
    }

    fn push(&mut self, num: BigUint, den: u64, i: usize, j: usize, width: &Exact) {
        let bin = bin_index(&num, den, width);
        *self.bins.entry(bin).or_default() += 1;
        let den_big = BigUint::from(den);
        self.sum_sq
            .add_parts(&num * &num, &den_big * &den_big);
        let greater = match &self.max {
            None => true,
            Some((mn, md, mi, mj)) => {
                let ord = (&num * BigUint::from(*md)).cmp(&(mn * &den_big));
                ord.is_gt() || (ord.is_eq() && (i, j) < (*mi, *mj))
            }
        };
        if greater {
            self.max = Some((num.clone(), den, i, j));
        }
        let smaller = match &self.min {
            None => true,
            Some((mn, md)) => (&num * BigUint::from(*md)) < (mn * &den_big),
        };
        if smaller {
            self.min = Some((num.clone(), den));
        }
        self.sum.add_parts(num, den_big);
    }

    fn merge(mut self, other: Partial) -> Partial {
        self.sum = self.sum.merge(other.sum);
        self.sum_sq = self.sum_sq.merge(other.sum_sq);
        for (k, c) in other.bins {
            *self.bins.entry(k).or_default() += c;
        }
        if let Some((on, od, oi, oj)) = other.max {
            let take = match &self.max {
                None => true,
                Some((mn, md, mi, mj)) => {
                    let ord = (&on * BigUint::from(*md)).cmp(&(mn * BigUint::from(od)));
                    ord.is_gt() || (ord.is_eq() && (oi, oj) < (*mi, *mj))
                }
            };
            if take {
                self.max = Some((on, od, oi, oj));
            }
        }
        if let Some((on, od)) = other.min {
            let take = match &self.min {
                None => true,
                Some((mn, md)) => (&on * BigUint::from(*md)) < (mn * BigUint::from(od)),
            };
            if take {
                self.min = Some((on, od));
            }
        }
        self
    }
}

/// `floor((num / den) / width)`.
fn bin_index(num: &BigUint, den: u64, width: &Exact) -> u64 {
    let top = num * width.denom();
    let bottom = BigUint::from(den) * width.numer();
    top.div_floor(&bottom)
        .to_u64()
        .expect("bin index fits in u64")
}

/// All pairwise distances between the trees of one language.
///
/// Pairs are streamed: only the running sums, extremes and bin counts are kept.
pub fn corpus_stats(
    grid: &PolynomialGrid,
    language: &str,
    bin_width: &Exact,
) -> Result<CorpusStats, MatrixError> {
    assert!(!bin_width.is_zero(), "bin width must be positive");
    let l = grid.language_index(language)?;
    let n = grid.len();
    let partial = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut p = Partial::new();
            for j in i + 1..n {
                let (num, den) = polynomial_distance_parts(grid.set(i, l), grid.set(j, l));
                p.push(num, den, i, j, bin_width);
            }
            p
        })
        .reduce(Partial::new, Partial::merge);

    let n_pairs = partial.sum.count();
    let mean = partial.sum.mean();
    let variance = if n_pairs == 0 {
        Exact::zero()
    } else {
        partial.sum_sq.mean() - &mean * &mean
    };
    let counts = match partial.bins.keys().next_back() {
        None => Vec::new(),
        Some(&top) => (0..=top)
            .map(|k| partial.bins.get(&k).copied().unwrap_or(0))
            .collect(),
    };
    let as_exact = |num: BigUint, den: u64| {
        if num.is_zero() {
            Exact::zero()
        } else {
            Exact::new(num, BigUint::from(den))
        }
    };
    let (diameter, diameter_pair) = match partial.max {
        None => (Exact::zero(), None),
        Some((num, den, i, j)) => (
            as_exact(num, den),
            Some((grid.sent_ids()[i].clone(), grid.sent_ids()[j].clone())),
        ),
    };
    let min = partial
        .min
        .map_or_else(Exact::zero, |(num, den)| as_exact(num, den));

    Ok(CorpusStats {
        language: language.to_string(),
        n_sentences: n,
        n_pairs,
        diameter,
        diameter_pair,
        mean,
        min,
        variance,
        bin_width: bin_width.clone(),
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deptree::{DepTree, RelationIndex};
    use crate::distance::tree_distance;
    use crate::exact::exact_ratio;
    use crate::ingest::{Dataset, DatasetName};

    fn r(v: u8) -> RelationIndex {
        RelationIndex::new(v).unwrap()
    }

    fn grid(trees: Vec<DepTree>) -> PolynomialGrid {
        let ids = (0..trees.len()).map(|i| format!("s{i:02}")).collect();
        PolynomialGrid::compute(&Dataset::from_trees(
            DatasetName::Ger,
            vec!["eng".into()],
            ids,
            trees.into_iter().map(|t| vec![t]).collect(),
        ))
    }

    #[test]
    fn identical_pair() {
        let t = DepTree::node(r(35), vec![DepTree::leaf(r(27))]);
        let s = corpus_stats(&grid(vec![t.clone(), t]), "eng", &exact_ratio(1u8, 2u8)).unwrap();
        assert_eq!(s.n_pairs, 1);
        assert!(s.diameter.is_zero());
        assert!(s.mean.is_zero());
        assert_eq!(s.counts, vec![1]);
    }

    #[test]
    fn three_trees_against_direct_computation() {
        let trees = vec![
            DepTree::leaf(r(35)),
            DepTree::node(r(35), vec![DepTree::leaf(r(27))]),
            DepTree::node(r(35), vec![DepTree::leaf(r(27)), DepTree::leaf(r(33))]),
        ];
        let w = exact_ratio(1u8, 2u8);
        let s = corpus_stats(&grid(trees.clone()), "eng", &w).unwrap();
        let d: Vec<Exact> = [(0, 1), (0, 2), (1, 2)]
            .iter()
            .map(|&(i, j)| tree_distance(&trees[i], &trees[j]))
            .collect();
        assert_eq!(s.n_pairs, 3);
        assert_eq!(s.diameter, d.iter().max().unwrap().clone());
        assert_eq!(s.min, d.iter().min().unwrap().clone());
        let mean = (&d[0] + &d[1] + &d[2]) / exact_from_u64(3);
        assert_eq!(s.mean, mean);
        assert_eq!(s.counts.iter().sum::<u64>(), 3);
        let top = s.bins().last().unwrap();
        assert!(top.0 <= s.diameter && s.diameter < top.1);
        assert!(s.variance >= Exact::zero());
    }

    #[test]
    fn single_sentence() {
        let s = corpus_stats(&grid(vec![DepTree::leaf(r(35))]), "eng", &exact_from_u64(1)).unwrap();
        assert_eq!(s.n_pairs, 0);
        assert!(s.counts.is_empty());
        assert!(s.diameter_pair.is_none());
        assert!(corpus_stats(&grid(vec![DepTree::leaf(r(35))]), "fre", &exact_from_u64(1)).is_err());
    }
}
