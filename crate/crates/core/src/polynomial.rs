//! Sparse multivariate polynomials with natural-number coefficients and the
//! recursive tree polynomials built from them.
//!
//! Variables live in 74 slots: `x_1..x_37` in slots `0..37` and
//! `y_1..y_37` in slots `37..74`. Unlabelled polynomials reuse the first slot
//! of each half for `x` and `y`, and a [`Mode`] tag keeps the two kinds apart.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use smallvec::SmallVec;
use thiserror::Error;

use crate::deptree::{DepTree, RelationIndex, RELATION_COUNT};

/// Number of variable slots in the labelled representation.
pub const SLOT_COUNT: usize = 2 * RELATION_COUNT;

/// Entries in a dense term vector: every exponent plus the coefficient.
pub const TERM_VECTOR_LEN: usize = SLOT_COUNT + 1;

const Y_OFFSET: u8 = RELATION_COUNT as u8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// One `x`/`y` pair per relation label.
    Labeled,
    /// A single `x` and a single `y`.
    Unlabeled,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("cannot combine a {0:?} polynomial with a {1:?} polynomial")]
    ModeMismatch(Mode, Mode),
    #[error("term vector line {line}: {reason}")]
    BadTermVector { line: usize, reason: String },
}

/// A variable of either representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X(RelationIndex),
    Y(RelationIndex),
    UnlabeledX,
    UnlabeledY,
}

impl Var {
    fn slot(self) -> u8 {
        match self {
            Var::X(l) => l.get() - 1,
            Var::Y(l) => Y_OFFSET + l.get() - 1,
            Var::UnlabeledX => 0,
            Var::UnlabeledY => Y_OFFSET,
        }
    }

    fn mode(self) -> Mode {
        match self {
            Var::X(_) | Var::Y(_) => Mode::Labeled,
            Var::UnlabeledX | Var::UnlabeledY => Mode::Unlabeled,
        }
    }
}

/// Whether a slot holds a `y` variable.
pub fn is_y_slot(slot: u8) -> bool {
    slot >= Y_OFFSET
}

/// A monomial: sorted `(slot, exponent)` pairs with no zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(SmallVec<[(u8, u32); 6]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    fn single(slot: u8) -> Self {
        let mut v = SmallVec::new();
        v.push((slot, 1));
        Monomial(v)
    }

    /// `(slot, exponent)` pairs in slot order.
    pub fn factors(&self) -> impl Iterator<Item = (u8, u32)> + '_ {
        self.0.iter().copied()
    }

    pub fn exponent(&self, slot: u8) -> u32 {
        self.0
            .iter()
            .find(|(s, _)| *s == slot)
            .map_or(0, |(_, e)| *e)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&(_, e)| u64::from(e)).sum()
    }

    pub fn has_y(&self) -> bool {
        self.0.iter().any(|&(s, _)| is_y_slot(s))
    }

    fn times(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    fn from_dense(exponents: &[u32]) -> Monomial {
        Monomial(
            exponents
                .iter()
                .enumerate()
                .filter(|(_, e)| **e != 0)
                .map(|(s, e)| (s as u8, *e))
                .collect(),
        )
    }
}

/// A polynomial with positive integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    mode: Mode,
    terms: BTreeMap<Monomial, BigUint>,
}

impl Polynomial {
    pub fn zero(mode: Mode) -> Self {
        Polynomial {
            mode,
            terms: BTreeMap::new(),
        }
    }

    pub fn var(v: Var) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::single(v.slot()), BigUint::one());
        Polynomial {
            mode: v.mode(),
            terms,
        }
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, merging repeats
    /// and dropping zero coefficients.
    pub fn from_terms(mode: Mode, terms: impl IntoIterator<Item = (Monomial, BigUint)>) -> Self {
        let mut p = Polynomial::zero(mode);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of distinct monomials.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigUint)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&BigUint> {
        self.terms.get(m)
    }

    fn add_term(&mut self, m: Monomial, c: BigUint) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => *e.get_mut() += c,
        }
    }

    fn check_mode(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.mode == other.mode {
            Ok(())
        } else {
            Err(PolyError::ModeMismatch(self.mode, other.mode))
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_mode(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn multiply(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_mode(other)?;
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = Polynomial::zero(self.mode);
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                let c = if ca.is_one() {
                    cb.clone()
                } else if cb.is_one() {
                    ca.clone()
                } else {
                    ca * cb
                };
                out.add_term(ma.times(mb), c);
            }
        }
        Ok(out)
    }

    /// Substitutes every `x_i` with `x` and every `y_i` with `y`.
    pub fn collapse_labels(&self) -> Result<Polynomial, PolyError> {
        if self.mode != Mode::Labeled {
            return Err(PolyError::ModeMismatch(self.mode, Mode::Labeled));
        }
        let mut out = Polynomial::zero(Mode::Unlabeled);
        for (m, c) in &self.terms {
            let (mut ex, mut ey) = (0u32, 0u32);
            for (slot, e) in m.factors() {
                if is_y_slot(slot) {
                    ey += e;
                } else {
                    ex += e;
                }
            }
            let mut collapsed = SmallVec::new();
            if ex > 0 {
                collapsed.push((Var::UnlabeledX.slot(), ex));
            }
            if ey > 0 {
                collapsed.push((Var::UnlabeledY.slot(), ey));
            }
            out.add_term(Monomial(collapsed), c.clone());
        }
        Ok(out)
    }

    /// Dense term vectors, one per term, in lexicographic order.
    ///
    /// An unlabelled polynomial uses only the `x_1` and `y_1` slots.
    pub fn to_term_vectors(&self) -> Vec<TermVector> {
        let mut out: Vec<TermVector> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exponents = [0u32; SLOT_COUNT];
                for (slot, e) in m.factors() {
                    exponents[slot as usize] = e;
                }
                TermVector {
                    exponents,
                    coefficient: c.clone(),
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Rebuilds a labelled polynomial from its term vectors.
    pub fn from_term_vectors(vectors: &[TermVector]) -> Polynomial {
        Polynomial::from_terms(
            Mode::Labeled,
            vectors
                .iter()
                .map(|v| (Monomial::from_dense(&v.exponents), v.coefficient.clone())),
        )
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mut wrote = false;
            if !c.is_one() || m.0.is_empty() {
                write!(f, "{c}")?;
                wrote = true;
            }
            for (slot, e) in m.factors() {
                if wrote {
                    f.write_str("*")?;
                }
                wrote = true;
                let (name, idx) = if is_y_slot(slot) {
                    ("y", slot - Y_OFFSET + 1)
                } else {
                    ("x", slot + 1)
                };
                match self.mode {
                    Mode::Labeled => write!(f, "{name}{idx}")?,
                    Mode::Unlabeled => f.write_str(name)?,
                }
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// One term as `[e_x1..e_x37, e_y1..e_y37, c]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TermVector {
    pub exponents: [u32; SLOT_COUNT],
    pub coefficient: BigUint,
}

impl TermVector {
    pub fn new(exponents: [u32; SLOT_COUNT], coefficient: BigUint) -> Self {
        TermVector {
            exponents,
            coefficient,
        }
    }

    pub fn x_exponent(&self, label: RelationIndex) -> u32 {
        self.exponents[label.get() as usize - 1]
    }

    pub fn y_exponent(&self, label: RelationIndex) -> u32 {
        self.exponents[(Y_OFFSET + label.get() - 1) as usize]
    }

    /// The 75 entries separated by single spaces.
    pub fn to_line(&self) -> String {
        let mut s = String::with_capacity(2 * TERM_VECTOR_LEN + 8);
        for e in &self.exponents {
            s.push_str(&e.to_string());
            s.push(' ');
        }
        s.push_str(&self.coefficient.to_string());
        s
    }

    pub fn parse_line(line: &str, line_no: usize) -> Result<TermVector, PolyError> {
        let bad = |reason: String| PolyError::BadTermVector {
            line: line_no,
            reason,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != TERM_VECTOR_LEN {
            return Err(bad(format!(
                "expected {TERM_VECTOR_LEN} integers, found {}",
                fields.len()
            )));
        }
        let mut exponents = [0u32; SLOT_COUNT];
        for (slot, f) in fields[..SLOT_COUNT].iter().enumerate() {
            exponents[slot] = f.parse().map_err(|_| bad(format!("bad exponent `{f}`")))?;
        }
        let coefficient: BigUint = fields[SLOT_COUNT]
            .parse()
            .map_err(|_| bad(format!("bad coefficient `{}`", fields[SLOT_COUNT])))?;
        if coefficient.is_zero() {
            return Err(bad("coefficient must be positive".into()));
        }
        Ok(TermVector {
            exponents,
            coefficient,
        })
    }
}

/// Serializes term vectors as newline-terminated records.
pub fn write_term_vectors(vectors: &[TermVector]) -> String {
    let mut s = String::new();
    for v in vectors {
        s.push_str(&v.to_line());
        s.push('\n');
    }
    s
}

fn tree_polynomial(
    tree: &DepTree,
    leaf: impl Fn(RelationIndex) -> Var,
    internal: impl Fn(RelationIndex) -> Var,
) -> Polynomial {
    let mut at: Vec<Option<Polynomial>> = vec![None; tree.len()];
    for node in tree.post_order() {
        let label = tree.label(node);
        let children = tree.children(node);
        let poly = if children.is_empty() {
            Polynomial::var(leaf(label))
        } else {
            let mut prod: Option<Polynomial> = None;
            for &c in children {
                let child = at[c].take().expect("child computed before parent");
                prod = Some(match prod {
                    None => child,
                    Some(p) => p.multiply(&child).expect("same mode"),
                });
            }
            Polynomial::var(internal(label))
                .add(&prod.expect("internal node has children"))
                .expect("same mode")
        };
        at[node] = Some(poly);
    }
    at[tree.root()].take().expect("root computed")
}

/// Bivariate polynomial of the tree shape: leaf `x`, internal node `y + Π children`.
pub fn compute_unlabeled(tree: &DepTree) -> Polynomial {
    tree_polynomial(tree, |_| Var::UnlabeledX, |_| Var::UnlabeledY)
}

/// Labelled polynomial: leaf `x_ℓ`, internal node `y_ℓ + Π children`.
pub fn compute_labeled(tree: &DepTree) -> Polynomial {
    tree_polynomial(tree, Var::X, Var::Y)
}
