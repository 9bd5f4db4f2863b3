//! Order-theoretic helpers on frames read as (pre-)orders.

use crate::kripke::{members, singleton, Frame, WorldSet};

pub(crate) fn predecessor_masks(fr: &Frame) -> Vec<WorldSet> {
    (0..fr.len()).map(|w| fr.predecessors(w)).collect()
}

/// Worlds related to every member of `set` (all worlds when `set` is empty).
pub(crate) fn upper_bounds(fr: &Frame, set: WorldSet) -> WorldSet {
    members(set).fold(fr.all(), |acc, s| acc & fr.successors(s))
}

pub(crate) fn lower_bounds(preds: &[WorldSet], all: WorldSet, set: WorldSet) -> WorldSet {
    members(set).fold(all, |acc, s| acc & preds[s])
}

/// A member of `set` below every member of `set`.
pub(crate) fn least(fr: &Frame, set: WorldSet) -> Option<usize> {
    members(set).find(|&w| set & !fr.successors(w) == 0)
}

pub(crate) fn greatest(preds: &[WorldSet], set: WorldSet) -> Option<usize> {
    members(set).find(|&w| set & !preds[w] == 0)
}

/// Least upper bound of `set` in a partial order; the join of the empty set
/// is the least element.
pub fn join(fr: &Frame, set: WorldSet) -> Option<usize> {
    least(fr, upper_bounds(fr, set))
}

pub fn meet(fr: &Frame, set: WorldSet) -> Option<usize> {
    let preds = predecessor_masks(fr);
    greatest(&preds, lower_bounds(&preds, fr.all(), set))
}

pub fn is_antisymmetric(fr: &Frame) -> bool {
    fr.edges().all(|(u, v)| u == v || !fr.related(v, u))
}

pub fn is_partial_order(fr: &Frame) -> bool {
    fr.is_preorder() && is_antisymmetric(fr)
}

/// Any two worlds (not necessarily distinct) have a common successor.
pub fn is_directed(fr: &Frame) -> bool {
    let succ = fr.successor_masks();
    (0..fr.len()).all(|u| (u..fr.len()).all(|v| succ[u] & succ[v] != 0))
}

pub fn is_lattice(fr: &Frame) -> bool {
    if fr.is_empty() || !is_partial_order(fr) {
        return false;
    }
    let preds = predecessor_masks(fr);
    let n = fr.len();
    (0..n).all(|u| {
        (u + 1..n).all(|v| {
            let pair = singleton(u) | singleton(v);
            least(fr, upper_bounds(fr, pair)).is_some()
                && greatest(&preds, lower_bounds(&preds, fr.all(), pair)).is_some()
        })
    })
}

/// Join and meet tables of a lattice.
struct Tables {
    join: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

fn tables(fr: &Frame) -> Option<Tables> {
    if !is_lattice(fr) {
        return None;
    }
    let preds = predecessor_masks(fr);
    let n = fr.len();
    let pair = |u: usize, v: usize| singleton(u) | singleton(v);
    let join = (0..n)
        .map(|u| (0..n).map(|v| least(fr, upper_bounds(fr, pair(u, v))).unwrap()).collect())
        .collect();
    let meet = (0..n)
        .map(|u| {
            (0..n)
                .map(|v| greatest(&preds, lower_bounds(&preds, fr.all(), pair(u, v))).unwrap())
                .collect()
        })
        .collect();
    Some(Tables {
        join,
        meet,
        bottom: least(fr, fr.all())?,
        top: greatest(&preds, fr.all())?,
    })
}

/// For a finite Boolean algebra, the map sending each element to the set of
/// atoms below it, as a bit mask over the atoms (the covers of the bottom,
/// ascending). `None` unless the frame is a distributive complemented lattice
/// and this map is an order isomorphism onto the full power set.
pub fn boolean_witness(fr: &Frame) -> Option<(Vec<usize>, Vec<u64>)> {
    let t = tables(fr)?;
    let n = fr.len();
    let distributive = (0..n).all(|x| {
        (0..n).all(|y| {
            (0..n).all(|z| t.meet[x][t.join[y][z]] == t.join[t.meet[x][y]][t.meet[x][z]])
        })
    });
    let complemented =
        (0..n).all(|x| (0..n).any(|y| t.join[x][y] == t.top && t.meet[x][y] == t.bottom));
    if !distributive || !complemented {
        return None;
    }
    let atoms: Vec<usize> = (0..n)
        .filter(|&a| a != t.bottom && fr.predecessors(a) == singleton(t.bottom) | singleton(a))
        .collect();
    if atoms.len() >= 32 || n != 1 << atoms.len() {
        return None;
    }
    let image: Vec<u64> = (0..n)
        .map(|x| {
            atoms
                .iter()
                .enumerate()
                .filter(|(_, &a)| fr.related(a, x))
                .fold(0, |acc, (i, _)| acc | 1 << i)
        })
        .collect();
    let mut seen = vec![false; n];
    for &s in &image {
        if std::mem::replace(&mut seen[s as usize], true) {
            return None;
        }
    }
    let order_preserved = (0..n).all(|x| {
        (0..n).all(|y| fr.related(x, y) == (image[x] & !image[y] == 0))
    });
    order_preserved.then_some((atoms, image))
}

/// A partial order with a least element in which the predecessors of every
/// world form a chain.
pub fn is_tree(fr: &Frame) -> bool {
    if fr.is_empty() || !is_partial_order(fr) || least(fr, fr.all()).is_none() {
        return false;
    }
    (0..fr.len()).all(|w| {
        let below = fr.predecessors(w);
        members(below).all(|u| members(below).all(|v| fr.related(u, v) || fr.related(v, u)))
    })
}

/// A partial order with a greatest world whose removal leaves nothing or a
/// tree.
pub fn is_baled_tree(fr: &Frame) -> bool {
    if fr.is_empty() || !is_partial_order(fr) {
        return false;
    }
    let preds = predecessor_masks(fr);
    match greatest(&preds, fr.all()) {
        None => false,
        Some(top) => {
            let rest = fr.all() & !singleton(top);
            rest == 0 || is_tree(&fr.induced(rest).0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Frame {
        Frame::from_relation(n, |i, j| i <= j).unwrap()
    }

    fn powerset(k: usize) -> Frame {
        Frame::from_relation(1 << k, |a, b| a & !b == 0).unwrap()
    }

    #[test]
    fn joins_and_meets() {
        let p2 = powerset(2);
        assert_eq!(join(&p2, 0b0110), Some(3));
        assert_eq!(meet(&p2, 0b0110), Some(0));
        assert_eq!(join(&p2, 0), Some(0));
        assert_eq!(meet(&p2, 0), Some(3));
    }

    #[test]
    fn lattices() {
        assert!(is_lattice(&chain(1)));
        assert!(is_lattice(&chain(4)));
        assert!(is_lattice(&powerset(2)));
        let v = Frame::from_relation(3, |i, j| i == j || j == 2).unwrap();
        assert!(!is_lattice(&v));
    }

    #[test]
    fn boolean_algebras() {
        for k in 0..4 {
            let (atoms, image) = boolean_witness(&powerset(k)).unwrap();
            assert_eq!(atoms.len(), k);
            assert_eq!(image.len(), 1 << k);
        }
        assert!(boolean_witness(&chain(3)).is_none());
        assert!(boolean_witness(&chain(2)).is_some());
        // the pentagon N5 is a non-distributive lattice
        let n5 = Frame::from_edges(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        )
        .unwrap()
        .reflexive_transitive_closure();
        assert!(is_lattice(&n5));
        assert!(boolean_witness(&n5).is_none());
    }

    #[test]
    fn trees() {
        assert!(is_tree(&chain(3)));
        let fork = Frame::from_relation(3, |i, j| i == j || i == 0).unwrap();
        assert!(is_tree(&fork));
        assert!(!is_baled_tree(&fork));
        let diamond = powerset(2);
        assert!(!is_tree(&diamond));
        assert!(is_baled_tree(&diamond));
        let two_roots = Frame::from_relation(3, |i, j| i == j || j == 2).unwrap();
        assert!(!is_baled_tree(&two_roots));
    }

    #[test]
    fn directedness() {
        assert!(is_directed(&powerset(2)));
        let fork = Frame::from_relation(3, |i, j| i == j || i == 0).unwrap();
        assert!(!is_directed(&fork));
    }
}
