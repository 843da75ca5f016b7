//! Average-linkage dendrograms and classical multidimensional scaling of
//! language distance matrices, plus Newick and minimal SVG output.

pub mod eigen;
pub mod mds;
pub mod newick;
pub mod svg;
pub mod upgma;

use thiserror::Error;

pub use eigen::{jacobi_eigen, SymmetricEigen};
pub use mds::{classical_mds, double_center, Embedding};
pub use newick::{parse_newick, to_newick, NewickNode};
pub use upgma::{upgma, Dendrogram, Merge};

use crate::matrices::DistanceMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypologyError {
    #[error("degenerate matrix: {0}")]
    DegenerateMatrix(String),
}

fn check_square(d: &[Vec<f64>], n: usize) -> Result<(), TypologyError> {
    if d.len() != n || d.iter().any(|r| r.len() != n) {
        return Err(TypologyError::DegenerateMatrix(format!(
            "expected a {n}x{n} matrix"
        )));
    }
    Ok(())
}

/// UPGMA dendrogram of a distance matrix.
pub fn cluster_matrix(m: &DistanceMatrix) -> Result<Dendrogram, TypologyError> {
    upgma(m.labels(), &m.to_f64())
}

/// Two-dimensional classical scaling of a distance matrix.
pub fn embed_matrix(m: &DistanceMatrix) -> Result<Embedding, TypologyError> {
    classical_mds(m.labels(), &m.to_f64(), 2)
}

/// CSV rows `label,x,y,eigenvalue_share` (the share of the axis, repeated per row).
pub fn embedding_csv(e: &Embedding) -> String {
    let shares = e.eigenvalue_shares();
    let mut s = String::from("label");
    for k in 0..e.dims() {
        s.push_str(&format!(",dim{}", k + 1));
    }
    for k in 0..e.dims() {
        s.push_str(&format!(",share{}", k + 1));
    }
    s.push('\n');
    for (label, p) in e.labels.iter().zip(&e.coordinates) {
        s.push_str(label);
        for x in p {
            let cell = format!("{x:.6}");
            // A value that rounds to zero prints without a sign.
            s.push(',');
            s.push_str(if cell == "-0.000000" { "0.000000" } else { &cell });
        }
        for sh in &shares {
            s.push_str(&format!(",{sh:.6}"));
        }
        s.push('\n');
    }
    s
}
