mod common;

use std::collections::BTreeMap;

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use syntaxpoly::deptree::DepTree;
use syntaxpoly::distance::{polynomial_distance, TermVectorSet};
use syntaxpoly::exact::Exact;
use syntaxpoly::polynomial::{
    compute_labeled, compute_unlabeled, write_term_vectors, TermVector, SLOT_COUNT,
};

use common::{parent_array, random_tree, renumbered, shuffle_children};

const HALF: usize = SLOT_COUNT / 2;

fn tree_from_seed(seed: u64) -> DepTree {
    random_tree(&mut ChaCha8Rng::seed_from_u64(seed), 30, 37, Some(35))
}

fn vectors(t: &DepTree) -> Vec<TermVector> {
    compute_labeled(t).to_term_vectors()
}

fn y_free(v: &TermVector) -> bool {
    v.exponents[HALF..].iter().all(|&e| e == 0)
}

/// Labels of the internal nodes reached from the root through single children.
fn top_chain(t: &DepTree) -> BTreeMap<u8, u32> {
    let mut out = BTreeMap::new();
    let mut v = t.root();
    while !t.is_leaf(v) {
        *out.entry(t.label(v).get()).or_default() += 1;
        match t.children(v) {
            [only] => v = *only,
            _ => break,
        }
    }
    out
}

/// The distance evaluated term by term, without shortcuts.
fn naive_distance(p: &[TermVector], q: &[TermVector]) -> Exact {
    let l1 = |s: &TermVector, t: &TermVector| -> BigUint {
        let e: u64 = s
            .exponents
            .iter()
            .zip(&t.exponents)
            .map(|(a, b)| (*a as i64 - *b as i64).unsigned_abs())
            .sum();
        let c = if s.coefficient > t.coefficient {
            &s.coefficient - &t.coefficient
        } else {
            &t.coefficient - &s.coefficient
        };
        BigUint::from(e) + c
    };
    let directed = |a: &[TermVector], b: &[TermVector]| -> BigUint {
        a.iter()
            .map(|s| b.iter().map(|t| l1(s, t)).min().unwrap())
            .sum()
    };
    let num = directed(p, q) + directed(q, p);
    Exact::new(num, BigUint::from(p.len() + q.len()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn collapse_matches_unlabeled(seed in any::<u64>()) {
        let t = tree_from_seed(seed);
        let collapsed = compute_labeled(&t).collapse_labels().unwrap();
        prop_assert_eq!(
            collapsed.to_term_vectors(),
            compute_unlabeled(&t).to_term_vectors()
        );
    }

    #[test]
    fn child_order_and_numbering_are_invisible(seed in any::<u64>()) {
        let t = tree_from_seed(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let want = write_term_vectors(&vectors(&t));
        prop_assert_eq!(write_term_vectors(&vectors(&shuffle_children(&mut rng, &t))), want.clone());
        let (labels, parent) = parent_array(&t);
        prop_assert_eq!(write_term_vectors(&vectors(&renumbered(&mut rng, &labels, &parent))), want);
    }

    #[test]
    fn evaluation_anchors(seed in any::<u64>()) {
        let t = tree_from_seed(seed);
        let vs = vectors(&t);
        // P(x = 1, y = 0): only y-free terms survive.
        let free: Vec<&TermVector> = vs.iter().filter(|v| y_free(v)).collect();
        prop_assert_eq!(free.len(), 1);
        prop_assert_eq!(&free[0].coefficient, &BigUint::from(1u8));
        let mut leaves = [0u32; HALF];
        for v in 0..t.len() {
            if t.is_leaf(v) {
                leaves[t.label(v).get() as usize - 1] += 1;
            }
        }
        prop_assert_eq!(&free[0].exponents[..HALF], &leaves[..]);

        // Degree-1 y-terms are exactly the labels of the root's single-child chain.
        let mut deg1 = BTreeMap::new();
        for v in &vs {
            let degree: u32 = v.exponents.iter().sum();
            if degree == 1 && !y_free(v) {
                let slot = v.exponents.iter().position(|&e| e == 1).unwrap();
                let c: u32 = v.coefficient.clone().try_into().unwrap();
                deg1.insert((slot - HALF + 1) as u8, c);
            }
        }
        prop_assert_eq!(deg1, top_chain(&t));
    }

    #[test]
    fn distance_axioms(a in any::<u64>(), b in any::<u64>()) {
        let (s, t) = (tree_from_seed(a), tree_from_seed(b));
        let (vs, vt) = (vectors(&s), vectors(&t));
        let p = TermVectorSet::new(vs.clone()).unwrap();
        let q = TermVectorSet::new(vt.clone()).unwrap();
        let d = polynomial_distance(&p, &q);
        prop_assert_eq!(&d, &polynomial_distance(&q, &p));
        prop_assert_eq!(&d, &naive_distance(&vs, &vt));
        prop_assert_eq!(polynomial_distance(&p, &p), Exact::from_integer(0u8.into()));
        prop_assert_eq!(d == Exact::from_integer(0u8.into()), vs == vt);
    }
}

#[test]
fn single_node_tree_has_no_y_terms() {
    let t = DepTree::leaf(syntaxpoly::RelationIndex::ROOT);
    let vs = vectors(&t);
    assert_eq!(vs.len(), 1);
    assert!(y_free(&vs[0]));
    assert!(top_chain(&t).is_empty());
}
