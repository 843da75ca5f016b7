//! Label-indexed tree polynomials for dependency trees.
//!
//! A dependency tree is turned into a polynomial in 74 variables (`x_ℓ` for
//! leaves, `y_ℓ` for internal nodes, one pair per relation label). Isomorphic
//! labelled trees get the same polynomial. The converse holds up to the order
//! of the internal labels on a chain of single-child nodes (together with the
//! internal node ending the chain), which the polynomial cannot see:
//! `y_a + (y_b + P) = y_b + (y_a + P)`.
//! Polynomials are compared through their term vectors, and those
//! distances feed language distance matrices, clustering, embeddings and
//! corpus diversity statistics.
//!
//! ```
//! use syntaxpoly::deptree::{DepTree, RelationIndex};
//! use syntaxpoly::polynomial::compute_labeled;
//! use syntaxpoly::distance::tree_distance;
//!
//! let root = RelationIndex::ROOT;
//! let nsubj = RelationIndex::new(27).unwrap();
//! let one = DepTree::leaf(root);
//! let two = DepTree::node(root, vec![DepTree::leaf(nsubj)]);
//! assert_eq!(compute_labeled(&two).to_string(), "y35 + x27");
//! assert_eq!(syntaxpoly::exact::round_half_up(&tree_distance(&one, &two), 2), "2.00");
//! ```

pub mod deptree;
pub mod distance;
pub mod diversity;
pub mod exact;
pub mod ingest;
pub mod matrices;
pub mod polynomial;
pub mod typology;

pub use deptree::{DepTree, RelationIndex};
pub use distance::{polynomial_distance, TermVectorSet};
pub use exact::Exact;
pub use ingest::{Dataset, DatasetName, SentenceRecord, SplitMap};
pub use matrices::{DistanceMatrix, PolynomialGrid};
pub use polynomial::{compute_labeled, compute_unlabeled, Polynomial, TermVector};
