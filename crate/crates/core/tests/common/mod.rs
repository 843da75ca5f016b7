#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use syntaxpoly::deptree::{DepTree, RelationIndex};

pub fn r(v: u8) -> RelationIndex {
    RelationIndex::new(v).unwrap()
}

/// Random recursive tree: node `i` hangs under a uniform earlier node.
///
/// The root gets `root_label` (or a random label when `None`); the rest are
/// uniform in `1..=max_label`. Node numbering is shuffled.
pub fn random_tree(
    rng: &mut impl Rng,
    max_nodes: usize,
    max_label: u8,
    root_label: Option<u8>,
) -> DepTree {
    let n = rng.gen_range(1..=max_nodes);
    let mut parent: Vec<Option<usize>> = vec![None];
    for i in 1..n {
        parent.push(Some(rng.gen_range(0..i)));
    }
    let labels: Vec<u8> = (0..n)
        .map(|i| match (i, root_label) {
            (0, Some(l)) => l,
            _ => rng.gen_range(1..=max_label),
        })
        .collect();
    renumbered(rng, &labels, &parent)
}

/// The same tree with node ids permuted uniformly at random.
pub fn renumbered(rng: &mut impl Rng, labels: &[u8], parent: &[Option<usize>]) -> DepTree {
    let n = labels.len();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut new_labels = vec![r(1); n];
    let mut new_parent = vec![None; n];
    for old in 0..n {
        new_labels[perm[old]] = r(labels[old]);
        new_parent[perm[old]] = parent[old].map(|p| perm[p]);
    }
    DepTree::from_parents(&new_labels, &new_parent).unwrap()
}

/// Labels and parent pointers of a tree, root first.
pub fn parent_array(t: &DepTree) -> (Vec<u8>, Vec<Option<usize>>) {
    let mut labels = vec![0; t.len()];
    let mut parent = vec![None; t.len()];
    for node in 0..t.len() {
        labels[node] = t.label(node).get();
        for &c in t.children(node) {
            parent[c] = Some(node);
        }
    }
    (labels, parent)
}

pub fn shuffle_children(rng: &mut impl Rng, t: &DepTree) -> DepTree {
    let mut t = t.clone();
    t.permute_children(|c| c.shuffle(rng));
    t
}
