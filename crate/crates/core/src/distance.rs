//! Polynomial distance between two sets of term vectors.
//!
//! For term-vector sets `P` and `Q`, every term is matched to its nearest
//! term (Manhattan distance over all 75 entries, coefficient included) in
//! the other set; the distance is the sum of those minima in both directions
//! divided by `|P| + |Q|`.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::deptree::DepTree;
use crate::exact::Exact;
use crate::polynomial::{compute_labeled, Polynomial, TermVector, SLOT_COUNT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistanceError {
    #[error("term vector set is empty")]
    EmptySet,
}

/// Manhattan distance between two term vectors.
pub fn manhattan(s: &TermVector, t: &TermVector) -> BigUint {
    let exp = exponent_l1(&s.exponents, &t.exponents);
    let coef = if s.coefficient >= t.coefficient {
        &s.coefficient - &t.coefficient
    } else {
        &t.coefficient - &s.coefficient
    };
    coef + BigUint::from(exp)
}

#[inline]
fn exponent_l1(a: &[u32; SLOT_COUNT], b: &[u32; SLOT_COUNT]) -> u64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| u64::from(x.abs_diff(*y)))
        .sum()
}

/// The term vectors of one polynomial.
///
/// Coefficients that fit in a `u64` are mirrored into a flat array so the
/// nearest-term search can run on machine integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermVectorSet {
    vectors: Vec<TermVector>,
    small_coefficients: Option<Vec<u64>>,
}

impl TermVectorSet {
    pub fn new(mut vectors: Vec<TermVector>) -> Result<Self, DistanceError> {
        if vectors.is_empty() {
            return Err(DistanceError::EmptySet);
        }
        vectors.sort_unstable();
        vectors.dedup();
        let small_coefficients = vectors
            .iter()
            .map(|v| v.coefficient.to_u64())
            .collect::<Option<Vec<u64>>>();
        Ok(TermVectorSet {
            vectors,
            small_coefficients,
        })
    }

    pub fn from_polynomial(p: &Polynomial) -> Result<Self, DistanceError> {
        TermVectorSet::new(p.to_term_vectors())
    }

    pub fn from_tree(t: &DepTree) -> Self {
        TermVectorSet::from_polynomial(&compute_labeled(t)).expect("tree polynomials have terms")
    }

    pub fn vectors(&self) -> &[TermVector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Sum over `from` of the distance to the nearest term of `to`.
fn directed_sum(from: &TermVectorSet, to: &TermVectorSet) -> BigUint {
    match (&from.small_coefficients, &to.small_coefficients) {
        (Some(fc), Some(tc)) => {
            let mut total: u128 = 0;
            for (s, &sc) in from.vectors.iter().zip(fc) {
                let mut best = u128::MAX;
                for (t, &tc) in to.vectors.iter().zip(tc) {
                    let d = u128::from(exponent_l1(&s.exponents, &t.exponents))
                        + u128::from(sc.abs_diff(tc));
                    if d < best {
                        best = d;
                        if best == 0 {
                            break;
                        }
                    }
                }
                total += best;
            }
            BigUint::from(total)
        }
        _ => from
            .vectors
            .iter()
            .map(|s| {
                to.vectors
                    .iter()
                    .map(|t| manhattan(s, t))
                    .min()
                    .expect("non-empty set")
            })
            .sum(),
    }
}

/// Numerator and denominator of the distance before reduction.
pub fn polynomial_distance_parts(p: &TermVectorSet, q: &TermVectorSet) -> (BigUint, u64) {
    let num = directed_sum(p, q) + directed_sum(q, p);
    (num, (p.len() + q.len()) as u64)
}

/// Exact polynomial distance.
pub fn polynomial_distance(p: &TermVectorSet, q: &TermVectorSet) -> Exact {
    let (num, den) = polynomial_distance_parts(p, q);
    if num.is_zero() {
        return Exact::zero();
    }
    Exact::new(num, BigUint::from(den))
}

/// Distance between the labelled polynomials of two trees.
pub fn tree_distance(a: &DepTree, b: &DepTree) -> Exact {
    polynomial_distance(&TermVectorSet::from_tree(a), &TermVectorSet::from_tree(b))
}
