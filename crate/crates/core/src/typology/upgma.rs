use std::collections::BTreeSet;

use super::TypologyError;

/// A node of a [`Dendrogram`]: ids below the leaf count are leaves,
/// id `n + k` is the cluster formed by merge `k`.
pub type ClusterId = usize;

#[derive(Debug, Clone, PartialEq)]
pub struct Merge {
    pub left: ClusterId,
    pub right: ClusterId,
    /// Half the distance at which the two clusters were joined.
    pub height: f64,
    pub size: usize,
}

/// Binary merge tree over labelled leaves.
#[derive(Debug, Clone, PartialEq)]
pub struct Dendrogram {
    labels: Vec<String>,
    merges: Vec<Merge>,
}

impl Dendrogram {
    pub fn new(labels: Vec<String>, merges: Vec<Merge>) -> Self {
        Dendrogram { labels, merges }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn merges(&self) -> &[Merge] {
        &self.merges
    }

    pub fn leaf_count(&self) -> usize {
        self.labels.len()
    }

    pub fn root(&self) -> ClusterId {
        self.labels.len() + self.merges.len() - 1
    }

    pub fn is_leaf(&self, id: ClusterId) -> bool {
        id < self.labels.len()
    }

    pub fn height(&self, id: ClusterId) -> f64 {
        if self.is_leaf(id) {
            0.0
        } else {
            self.merges[id - self.labels.len()].height
        }
    }

    pub fn children(&self, id: ClusterId) -> Option<(ClusterId, ClusterId)> {
        (!self.is_leaf(id)).then(|| {
            let m = &self.merges[id - self.labels.len()];
            (m.left, m.right)
        })
    }

    /// Leaf indices under `id`.
    pub fn leaves(&self, id: ClusterId) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![id];
        while let Some(c) = stack.pop() {
            match self.children(c) {
                None => out.push(c),
                Some((l, r)) => {
                    stack.push(r);
                    stack.push(l);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Leaf-label sets of every internal node, root last.
    pub fn clades(&self) -> Vec<BTreeSet<String>> {
        let n = self.labels.len();
        (n..n + self.merges.len())
            .map(|id| {
                self.leaves(id)
                    .into_iter()
                    .map(|i| self.labels[i].clone())
                    .collect()
            })
            .collect()
    }

    /// Whether some internal node has exactly these leaves.
    pub fn has_clade<S: AsRef<str>>(&self, members: &[S]) -> bool {
        let want: BTreeSet<String> = members.iter().map(|s| s.as_ref().to_string()).collect();
        self.clades().contains(&want)
    }

    /// Twice the height of the lowest common ancestor of two leaves.
    pub fn cophenetic(&self, a: usize, b: usize) -> f64 {
        if a == b {
            return 0.0;
        }
        let n = self.labels.len();
        for (k, _) in self.merges.iter().enumerate() {
            let leaves = self.leaves(n + k);
            if leaves.binary_search(&a).is_ok() && leaves.binary_search(&b).is_ok() {
                return 2.0 * self.merges[k].height;
            }
        }
        f64::INFINITY
    }
}

/// Average-linkage agglomerative clustering.
///
/// The closest pair of active clusters is merged at each step; ties go to
/// the smallest `(row, col)` pair in the current active ordering. The merged
/// cluster takes the place of the lower index and the other row is removed.
pub fn upgma(labels: &[String], distances: &[Vec<f64>]) -> Result<Dendrogram, TypologyError> {
    let n = labels.len();
    if n < 2 {
        return Err(TypologyError::DegenerateMatrix(format!(
            "clustering needs at least 2 items, got {n}"
        )));
    }
    super::check_square(distances, n)?;

    let mut active: Vec<(ClusterId, usize)> = (0..n).map(|i| (i, 1)).collect();
    let mut d: Vec<Vec<f64>> = distances.to_vec();
    let mut merges = Vec::with_capacity(n - 1);

    while active.len() > 1 {
        let m = active.len();
        let (mut bi, mut bj, mut best) = (0, 1, f64::INFINITY);
        for i in 0..m {
            for j in i + 1..m {
                if d[i][j] < best {
                    best = d[i][j];
                    bi = i;
                    bj = j;
                }
            }
        }
        let (ci, si) = active[bi];
        let (cj, sj) = active[bj];
        let size = si + sj;
        for k in 0..m {
            if k != bi && k != bj {
                let v = (si as f64 * d[bi][k] + sj as f64 * d[bj][k]) / size as f64;
                d[bi][k] = v;
                d[k][bi] = v;
            }
        }
        d.remove(bj);
        for row in d.iter_mut() {
            row.remove(bj);
        }
        let id = n + merges.len();
        merges.push(Merge {
            left: ci,
            right: cj,
            height: best / 2.0,
            size,
        });
        active[bi] = (id, size);
        active.remove(bj);
    }
    Ok(Dendrogram::new(labels.to_vec(), merges))
}
