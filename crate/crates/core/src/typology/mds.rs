use super::eigen::jacobi_eigen;
use super::TypologyError;

/// Coordinates of each label in the embedding space.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub labels: Vec<String>,
    /// `coordinates[i][k]`: coordinate `k` of label `i`.
    pub coordinates: Vec<Vec<f64>>,
    /// All eigenvalues of the double-centred matrix, descending.
    pub eigenvalues: Vec<f64>,
    /// Eigenvectors matching the leading `dims` eigenvalues.
    pub eigenvectors: Vec<Vec<f64>>,
    /// The double-centred Gram matrix that was decomposed.
    pub gram: Vec<Vec<f64>>,
    /// Notes about clamped negative eigenvalues or non-convergence.
    pub warnings: Vec<String>,
}

impl Embedding {
    pub fn dims(&self) -> usize {
        self.eigenvectors.len()
    }

    /// Share of each leading eigenvalue in the sum of positive eigenvalues.
    pub fn eigenvalue_shares(&self) -> Vec<f64> {
        let total: f64 = self.eigenvalues.iter().filter(|v| **v > 0.0).sum();
        self.eigenvalues
            .iter()
            .take(self.dims())
            .map(|v| if total > 0.0 { v.max(0.0) / total } else { 0.0 })
            .collect()
    }

    /// Euclidean distance of each point from the centroid.
    pub fn centroid_distances(&self) -> Vec<f64> {
        let n = self.coordinates.len();
        let k = self.dims();
        let centroid: Vec<f64> = (0..k)
            .map(|c| self.coordinates.iter().map(|p| p[c]).sum::<f64>() / n as f64)
            .collect();
        self.coordinates
            .iter()
            .map(|p| {
                p.iter()
                    .zip(&centroid)
                    .map(|(a, b)| (a - b).powi(2))
                    .sum::<f64>()
                    .sqrt()
            })
            .collect()
    }
}

/// `B = -1/2 J D² J` with `J = I - 11ᵀ/n`.
pub fn double_center(distances: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = distances.len();
    let sq: Vec<Vec<f64>> = distances
        .iter()
        .map(|r| r.iter().map(|d| d * d).collect())
        .collect();
    let row_mean: Vec<f64> = sq.iter().map(|r| r.iter().sum::<f64>() / n as f64).collect();
    let col_mean: Vec<f64> = (0..n)
        .map(|j| sq.iter().map(|r| r[j]).sum::<f64>() / n as f64)
        .collect();
    let grand = row_mean.iter().sum::<f64>() / n as f64;
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| -0.5 * (sq[i][j] - row_mean[i] - col_mean[j] + grand))
                .collect()
        })
        .collect()
}

/// Entries this close to zero do not decide the sign of an axis.
const SIGN_EPS: f64 = 1e-12;

/// Classical (Torgerson) scaling into `dims` dimensions.
///
/// Coordinates are eigenvectors scaled by the square root of their
/// eigenvalue (negative eigenvalues clamped to zero). Each axis is flipped so
/// that its first clearly non-zero coordinate is positive.
pub fn classical_mds(
    labels: &[String],
    distances: &[Vec<f64>],
    dims: usize,
) -> Result<Embedding, TypologyError> {
    let n = labels.len();
    if n < 2 {
        return Err(TypologyError::DegenerateMatrix(format!(
            "scaling needs at least 2 items, got {n}"
        )));
    }
    if dims == 0 || dims > n {
        return Err(TypologyError::DegenerateMatrix(format!(
            "cannot embed {n} items in {dims} dimensions"
        )));
    }
    super::check_square(distances, n)?;

    let gram = double_center(distances);
    let eig = jacobi_eigen(&gram);
    let mut warnings = Vec::new();
    if !eig.converged {
        warnings.push(format!(
            "eigensolver stopped after {} sweeps without reaching the threshold",
            eig.sweeps
        ));
    }
    let scale = eig.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let negatives: Vec<f64> = eig
        .values
        .iter()
        .copied()
        .filter(|v| *v < -1e-9 * scale.max(1.0))
        .collect();
    if !negatives.is_empty() {
        warnings.push(format!(
            "{} negative eigenvalue(s) clamped to zero (most negative {:.6}); distances are not Euclidean",
            negatives.len(),
            negatives.iter().copied().fold(0.0, f64::min)
        ));
    }

    let mut eigenvectors: Vec<Vec<f64>> = eig.vectors.iter().take(dims).cloned().collect();
    for v in eigenvectors.iter_mut() {
        if let Some(first) = v.iter().copied().find(|x| x.abs() > SIGN_EPS) {
            if first < 0.0 {
                v.iter_mut().for_each(|x| *x = -*x);
            }
        }
    }
    let coordinates = (0..n)
        .map(|i| {
            (0..dims)
                .map(|k| eigenvectors[k][i] * eig.values[k].max(0.0).sqrt())
                .collect()
        })
        .collect();

    Ok(Embedding {
        labels: labels.to_vec(),
        coordinates,
        eigenvalues: eig.values,
        eigenvectors,
        gram,
        warnings,
    })
}
