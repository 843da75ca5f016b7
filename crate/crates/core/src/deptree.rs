//! Rooted, node-labelled dependency trees.
//!
//! Every node carries a [`RelationIndex`] naming the grammatical relation to
//! its head. Trees built from sentences always carry [`RelationIndex::ROOT`]
//! on the root node; the generic constructors accept any label so that
//! small label alphabets can be used for exhaustive checks.

use std::fmt;

use thiserror::Error;

use crate::ingest::SentenceRecord;

/// Universal relation names, in index order (index = position + 1).
pub const RELATIONS: [&str; 37] = [
    "acl",
    "advcl",
    "advmod",
    "amod",
    "appos",
    "aux",
    "case",
    "cc",
    "ccomp",
    "clf",
    "compound",
    "conj",
    "cop",
    "csubj",
    "dep",
    "det",
    "discourse",
    "dislocated",
    "expl",
    "fixed",
    "flat",
    "goeswith",
    "iobj",
    "list",
    "mark",
    "nmod",
    "nsubj",
    "nummod",
    "obj",
    "obl",
    "orphan",
    "parataxis",
    "punct",
    "reparandum",
    "root",
    "vocative",
    "xcomp",
];

/// Number of distinct relation labels.
pub const RELATION_COUNT: usize = RELATIONS.len();

/// A relation label in `1..=37`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelationIndex(u8);

impl RelationIndex {
    pub const ROOT: RelationIndex = RelationIndex(35);

    pub fn new(value: u8) -> Option<Self> {
        (1..=RELATION_COUNT as u8)
            .contains(&value)
            .then_some(RelationIndex(value))
    }

    pub fn get(self) -> u8 {
        self.0
    }

    pub fn name(self) -> &'static str {
        RELATIONS[self.0 as usize - 1]
    }
}

impl fmt::Display for RelationIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown dependency relation `{0}`")]
pub struct UnknownRelation(pub String);

/// Maps a subtype-stripped, lower-case relation name to its index.
pub fn relation_to_index(deprel: &str) -> Result<RelationIndex, UnknownRelation> {
    RELATIONS
        .iter()
        .position(|r| *r == deprel)
        .map(|p| RelationIndex(p as u8 + 1))
        .ok_or_else(|| UnknownRelation(deprel.to_string()))
}

/// Strips a relation subtype (`obl:tmod` -> `obl`) and lower-cases the rest.
pub fn base_relation(deprel: &str) -> String {
    deprel
        .split(':')
        .next()
        .unwrap_or_default()
        .trim()
        .to_ascii_lowercase()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("tree has no nodes")]
    Empty,
    #[error("expected exactly one root, found {0}")]
    RootCount(usize),
    #[error("node {node} has parent {parent} out of range")]
    ParentOutOfRange { node: usize, parent: usize },
    #[error("parent links contain a cycle through node {0}")]
    Cycle(usize),
    #[error("labels and parents differ in length ({labels} vs {parents})")]
    LengthMismatch { labels: usize, parents: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub label: RelationIndex,
    pub children: Vec<usize>,
}

/// A rooted tree stored as an arena of nodes.
///
/// Children lists are kept in insertion order (token order for parsed
/// sentences); nothing computed from a tree depends on that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepTree {
    nodes: Vec<Node>,
    root: usize,
}

impl DepTree {
    pub fn leaf(label: RelationIndex) -> Self {
        DepTree {
            nodes: vec![Node {
                label,
                children: Vec::new(),
            }],
            root: 0,
        }
    }

    /// Builds a tree whose root has `label` and the given subtrees as children.
    pub fn node(label: RelationIndex, subtrees: Vec<DepTree>) -> Self {
        let mut nodes = vec![Node {
            label,
            children: Vec::with_capacity(subtrees.len()),
        }];
        for sub in subtrees {
            let offset = nodes.len();
            nodes[0].children.push(offset + sub.root);
            nodes.extend(sub.nodes.into_iter().map(|mut n| {
                for c in &mut n.children {
                    *c += offset;
                }
                n
            }));
        }
        DepTree { nodes, root: 0 }
    }

    /// Builds a tree from a parent array; `None` marks the root.
    pub fn from_parents(
        labels: &[RelationIndex],
        parents: &[Option<usize>],
    ) -> Result<Self, TreeError> {
        if labels.len() != parents.len() {
            return Err(TreeError::LengthMismatch {
                labels: labels.len(),
                parents: parents.len(),
            });
        }
        if labels.is_empty() {
            return Err(TreeError::Empty);
        }
        let n = labels.len();
        let roots: Vec<usize> = (0..n).filter(|&i| parents[i].is_none()).collect();
        if roots.len() != 1 {
            return Err(TreeError::RootCount(roots.len()));
        }
        let mut nodes: Vec<Node> = labels
            .iter()
            .map(|&label| Node {
                label,
                children: Vec::new(),
            })
            .collect();
        for (i, p) in parents.iter().enumerate() {
            if let Some(p) = *p {
                if p >= n {
                    return Err(TreeError::ParentOutOfRange { node: i, parent: p });
                }
                nodes[p].children.push(i);
            }
        }
        let tree = DepTree {
            nodes,
            root: roots[0],
        };
        // A single root plus n-1 parent links is a tree iff every node is reachable.
        let reached = tree.post_order().len();
        if reached != n {
            let unreached = (0..n)
                .find(|&i| {
                    let mut seen = vec![false; n];
                    let mut cur = i;
                    while let Some(p) = parents[cur] {
                        if seen[cur] {
                            return true;
                        }
                        seen[cur] = true;
                        cur = p;
                    }
                    false
                })
                .unwrap_or(0);
            return Err(TreeError::Cycle(unreached));
        }
        Ok(tree)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn label(&self, node: usize) -> RelationIndex {
        self.nodes[node].label
    }

    pub fn children(&self, node: usize) -> &[usize] {
        &self.nodes[node].children
    }

    pub fn is_leaf(&self, node: usize) -> bool {
        self.nodes[node].children.is_empty()
    }

    /// Node indices with every child listed before its parent.
    pub fn post_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(self.root, false)];
        let mut visited = vec![false; self.nodes.len()];
        while let Some((node, expanded)) = stack.pop() {
            if expanded {
                order.push(node);
                continue;
            }
            if std::mem::replace(&mut visited[node], true) {
                continue;
            }
            stack.push((node, true));
            for &c in self.nodes[node].children.iter().rev() {
                stack.push((c, false));
            }
        }
        order
    }

    /// Reorders every children list with `f`; useful for order-invariance checks.
    pub fn permute_children(&mut self, mut f: impl FnMut(&mut Vec<usize>)) {
        for node in &mut self.nodes {
            f(&mut node.children);
        }
    }

    /// Canonical string `(label child...)` with child encodings sorted.
    ///
    /// Two trees share an encoding iff they are isomorphic as rooted labelled trees.
    pub fn canonical_encoding(&self) -> String {
        let mut enc: Vec<Option<String>> = vec![None; self.nodes.len()];
        for node in self.post_order() {
            let mut parts: Vec<String> = self.nodes[node]
                .children
                .iter()
                .map(|&c| enc[c].take().expect("child encoded before parent"))
                .collect();
            parts.sort_unstable();
            let mut s = String::with_capacity(4 + parts.iter().map(String::len).sum::<usize>());
            s.push('(');
            s.push_str(&self.nodes[node].label.to_string());
            for p in parts {
                s.push_str(&p);
            }
            s.push(')');
            enc[node] = Some(s);
        }
        enc[self.root].take().expect("root encoded")
    }

    /// Builds the dependency tree of a validated sentence.
    ///
    /// One node per token, in token order. The root is relabelled to
    /// [`RelationIndex::ROOT`] whatever its written relation.
    pub fn from_sentence(rec: &SentenceRecord) -> Result<Self, UnknownRelation> {
        let tokens = rec.tokens();
        let mut position = std::collections::HashMap::with_capacity(tokens.len());
        for (i, t) in tokens.iter().enumerate() {
            position.insert(t.id, i);
        }
        let mut labels = Vec::with_capacity(tokens.len());
        let mut parents = Vec::with_capacity(tokens.len());
        for t in tokens {
            if t.head == 0 {
                labels.push(RelationIndex::ROOT);
                parents.push(None);
            } else {
                labels.push(relation_to_index(&base_relation(&t.deprel))?);
                parents.push(Some(position[&t.head]));
            }
        }
        Ok(DepTree::from_parents(&labels, &parents)
            .expect("sentence records are validated as trees on construction"))
    }
}
