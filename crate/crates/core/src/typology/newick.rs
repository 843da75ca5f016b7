use thiserror::Error;

use super::upgma::{ClusterId, Dendrogram};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NewickError {
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected character `{0}` at offset {1}")]
    Unexpected(char, usize),
    #[error("bad branch length `{0}`")]
    BadLength(String),
}

/// Formats a length without a trailing `.0` for integral values.
pub fn format_length(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

/// Newick text with branch length = parent height - child height.
///
/// At every internal node the child holding the lexicographically smallest
/// leaf label is written first.
pub fn to_newick(d: &Dendrogram) -> String {
    fn min_label(d: &Dendrogram, id: ClusterId) -> &str {
        d.leaves(id)
            .into_iter()
            .map(|i| d.labels()[i].as_str())
            .min()
            .expect("clusters have leaves")
    }
    fn write(d: &Dendrogram, id: ClusterId, out: &mut String) {
        match d.children(id) {
            None => out.push_str(&d.labels()[id]),
            Some((l, r)) => {
                let (a, b) = if min_label(d, l) <= min_label(d, r) {
                    (l, r)
                } else {
                    (r, l)
                };
                out.push('(');
                for (k, c) in [a, b].into_iter().enumerate() {
                    if k > 0 {
                        out.push(',');
                    }
                    write(d, c, out);
                    out.push(':');
                    out.push_str(&format_length(d.height(id) - d.height(c)));
                }
                out.push(')');
            }
        }
    }
    let mut s = String::new();
    write(d, d.root(), &mut s);
    s.push(';');
    s
}

/// A parsed Newick node.
#[derive(Debug, Clone, PartialEq)]
pub struct NewickNode {
    pub name: String,
    pub length: Option<f64>,
    pub children: Vec<NewickNode>,
}

impl NewickNode {
    /// Heights of every leaf measured from the deepest point, i.e. the node
    /// height of an ultrametric tree. Returns `(leaf name, path length from root)`.
    pub fn leaf_depths(&self) -> Vec<(String, f64)> {
        let mut out = Vec::new();
        fn walk(n: &NewickNode, depth: f64, out: &mut Vec<(String, f64)>) {
            if n.children.is_empty() {
                out.push((n.name.clone(), depth));
            }
            for c in &n.children {
                walk(c, depth + c.length.unwrap_or(0.0), out);
            }
        }
        walk(self, 0.0, &mut out);
        out
    }

    /// Node heights above the leaves for an ultrametric tree, in pre-order.
    pub fn heights(&self) -> Vec<f64> {
        fn height(n: &NewickNode) -> f64 {
            n.children
                .first()
                .map(|c| c.length.unwrap_or(0.0) + height(c))
                .unwrap_or(0.0)
        }
        let mut out = Vec::new();
        fn walk(n: &NewickNode, out: &mut Vec<f64>) {
            if !n.children.is_empty() {
                out.push(height(n));
            }
            for c in &n.children {
                walk(c, out);
            }
        }
        walk(self, &mut out);
        out
    }
}

/// Parses the subset of Newick emitted by [`to_newick`] (names, lengths, nesting).
pub fn parse_newick(text: &str) -> Result<NewickNode, NewickError> {
    let chars: Vec<char> = text.trim().chars().collect();
    let mut pos = 0;
    let node = parse_node(&chars, &mut pos)?;
    match chars.get(pos) {
        Some(';') => Ok(node),
        Some(&c) => Err(NewickError::Unexpected(c, pos)),
        None => Err(NewickError::UnexpectedEnd),
    }
}

fn parse_node(s: &[char], pos: &mut usize) -> Result<NewickNode, NewickError> {
    let mut children = Vec::new();
    if s.get(*pos) == Some(&'(') {
        *pos += 1;
        loop {
            children.push(parse_node(s, pos)?);
            match s.get(*pos) {
                Some(',') => *pos += 1,
                Some(')') => {
                    *pos += 1;
                    break;
                }
                Some(&c) => return Err(NewickError::Unexpected(c, *pos)),
                None => return Err(NewickError::UnexpectedEnd),
            }
        }
    }
    let start = *pos;
    while let Some(&c) = s.get(*pos) {
        if matches!(c, ':' | ',' | ')' | '(' | ';') {
            break;
        }
        *pos += 1;
    }
    let name: String = s[start..*pos].iter().collect();
    let mut length = None;
    if s.get(*pos) == Some(&':') {
        *pos += 1;
        let start = *pos;
        while let Some(&c) = s.get(*pos) {
            if matches!(c, ',' | ')' | ';') {
                break;
            }
            *pos += 1;
        }
        let raw: String = s[start..*pos].iter().collect();
        length = Some(raw.parse().map_err(|_| NewickError::BadLength(raw))?);
    }
    Ok(NewickNode {
        name,
        length,
        children,
    })
}
