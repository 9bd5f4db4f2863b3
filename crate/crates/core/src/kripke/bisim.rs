//! Coarsest bisimulation by partition refinement.

use std::collections::{BTreeSet, HashMap};

use super::{members, Model, Partition, PointedModel};

/// Refines the initial colouring until every block is stable. Block ids are
/// assigned in order of first appearance, so the result is deterministic.
fn refine(succ: &[Vec<usize>], initial: Vec<Vec<bool>>) -> Vec<usize> {
    let mut block = number(initial);
    let mut count = distinct(&block);
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..succ.len())
            .map(|w| {
                let mut targets: Vec<usize> = succ[w].iter().map(|&v| block[v]).collect();
                targets.sort_unstable();
                targets.dedup();
                (block[w], targets)
            })
            .collect();
        let next = number(sigs);
        let next_count = distinct(&next);
        if next_count == count {
            return next;
        }
        block = next;
        count = next_count;
    }
}

fn number<T: std::hash::Hash + Eq>(keys: Vec<T>) -> Vec<usize> {
    let mut ids = HashMap::new();
    keys.into_iter()
        .map(|k| {
            let fresh = ids.len();
            *ids.entry(k).or_insert(fresh)
        })
        .collect()
}

fn distinct(block: &[usize]) -> usize {
    block.iter().copied().max().map_or(0, |m| m + 1)
}

fn colouring(m: &Model, atoms: &BTreeSet<String>) -> Vec<Vec<bool>> {
    let sets: Vec<_> = atoms.iter().map(|a| m.atom_set(a)).collect();
    (0..m.frame().len())
        .map(|w| sets.iter().map(|s| s >> w & 1 == 1).collect())
        .collect()
}

fn successor_lists(m: &Model, offset: usize) -> Vec<Vec<usize>> {
    (0..m.frame().len())
        .map(|w| members(m.frame().successors(w)).map(|v| v + offset).collect())
        .collect()
}

/// True iff the points are related by the greatest bisimulation that respects
/// `atoms`.
pub fn bisimilar(m1: &PointedModel, m2: &PointedModel, atoms: &BTreeSet<String>) -> bool {
    let n1 = m1.model.frame().len();
    let mut succ = successor_lists(&m1.model, 0);
    succ.extend(successor_lists(&m2.model, n1));
    let mut initial = colouring(&m1.model, atoms);
    initial.extend(colouring(&m2.model, atoms));
    let block = refine(&succ, initial);
    block[m1.point] == block[n1 + m2.point]
}

/// Classes of the greatest auto-bisimulation of `m` respecting `atoms`.
pub fn bisimulation_classes(m: &Model, atoms: &BTreeSet<String>) -> Partition {
    let block_of = refine(&successor_lists(m, 0), colouring(m, atoms));
    let mut blocks = vec![Vec::new(); distinct(&block_of)];
    for (w, &b) in block_of.iter().enumerate() {
        blocks[b].push(w);
    }
    Partition { blocks, block_of }
}
