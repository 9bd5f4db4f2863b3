//! Partial unravelling of a finite directed pre-order into a baled pre-tree.
//!
//! Every non-top cluster `[u]` is copied once per maximal chain from the root
//! cluster to `[u]` in the quotient; copies are ordered by path extension,
//! and the top cluster stays a single bale above everything.

use super::{is_directed, ClassError};
use crate::kripke::{members, quotient, singleton, Frame, KripkeError, WorldSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnravelResult {
    pub frame: Frame,
    /// Index in the input frame of the world each new world copies.
    pub origin: Vec<usize>,
    pub bale: WorldSet,
    /// The copy of the requested root.
    pub root: usize,
}

pub fn unravel(fr: &Frame, w0: &str) -> Result<UnravelResult, ClassError> {
    let root = fr.require(w0)?;
    if !fr.is_preorder() {
        return Err(KripkeError::NotPreorder.into());
    }
    if (0..fr.len()).any(|u| fr.related(u, root) && !fr.related(root, u)) {
        return Err(ClassError::RootNotMinimal(w0.to_string()));
    }
    let (sub, old) = fr.induced(fr.reachable(root));
    if !is_directed(&sub) {
        return Err(ClassError::NotDirected);
    }
    let (q, proj) = quotient(&sub)?;
    let classes: Vec<Vec<usize>> = {
        let mut c = vec![Vec::new(); q.len()];
        for (w, &k) in proj.iter().enumerate() {
            c[k].push(w);
        }
        c
    };
    let sub_root = old.iter().position(|&o| o == root).unwrap();
    let root_class = proj[sub_root];
    let top = (0..q.len())
        .find(|&k| q.predecessors(k) == q.all())
        .expect("a finite directed pre-order has a top cluster");

    // immediate successors in the quotient order
    let covers: Vec<Vec<usize>> = (0..q.len())
        .map(|k| {
            let above = q.successors(k) & !singleton(k);
            members(above)
                .filter(|&j| members(above).all(|i| i == j || !q.related(i, j)))
                .collect()
        })
        .collect();

    // maximal chains from the root class, depth first, prefixes before extensions
    let mut paths: Vec<Vec<usize>> = Vec::new();
    let mut stack = vec![vec![root_class]];
    while let Some(path) = stack.pop() {
        let last = *path.last().unwrap();
        if last == top {
            continue;
        }
        for &next in covers[last].iter().rev() {
            let mut longer = path.clone();
            longer.push(next);
            stack.push(longer);
        }
        paths.push(path);
    }

    let mut path_count = vec![0usize; q.len()];
    for p in &paths {
        path_count[*p.last().unwrap()] += 1;
    }

    // new worlds: (path index or None for the bale, sub-frame world)
    let mut worlds: Vec<(Option<usize>, usize)> = Vec::new();
    let mut ids: Vec<String> = Vec::new();
    let mut seen_per_class = vec![0usize; q.len()];
    for (pi, p) in paths.iter().enumerate() {
        let class = *p.last().unwrap();
        seen_per_class[class] += 1;
        for &u in &classes[class] {
            worlds.push((Some(pi), u));
            ids.push(if path_count[class] == 1 {
                sub.id(u).to_string()
            } else {
                format!("{}_{}", sub.id(u), seen_per_class[class])
            });
        }
    }
    for &u in &classes[top] {
        worlds.push((None, u));
        ids.push(sub.id(u).to_string());
    }
    for i in 0..ids.len() {
        while ids[..i].contains(&ids[i]) {
            ids[i].push('x');
        }
    }

    let is_prefix = |a: &[usize], b: &[usize]| a.len() <= b.len() && b[..a.len()] == *a;
    let mut out = Frame::new(ids)?;
    for (i, &(pi, u)) in worlds.iter().enumerate() {
        for (j, &(pj, v)) in worlds.iter().enumerate() {
            let related = match (pi, pj) {
                (_, None) => true,
                (None, Some(_)) => false,
                (Some(a), Some(b)) => is_prefix(&paths[a], &paths[b]) && sub.related(u, v),
            };
            if related {
                out.add_edge(i, j);
            }
        }
    }

    let bale = worlds
        .iter()
        .enumerate()
        .filter(|(_, (p, _))| p.is_none())
        .fold(0, |acc, (i, _)| acc | singleton(i));
    let new_root = worlds
        .iter()
        .position(|&(p, u)| u == sub_root && p.is_none_or(|pi| pi == 0))
        .unwrap();
    Ok(UnravelResult {
        frame: out,
        origin: worlds.iter().map(|&(_, u)| old[u]).collect(),
        bale,
        root: new_root,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frameclass::classify;

    fn six_node() -> Frame {
        Frame::from_edges(
            &["1", "2", "3", "4", "5", "6"],
            &[
                ("1", "2"),
                ("1", "3"),
                ("2", "4"),
                ("2", "5"),
                ("3", "4"),
                ("3", "5"),
                ("4", "6"),
                ("5", "6"),
            ],
        )
        .unwrap()
        .reflexive_transitive_closure()
    }

    #[test]
    fn six_node_frame_unravels_to_eight_worlds() {
        let r = unravel(&six_node(), "1").unwrap();
        assert_eq!(r.frame.ids(), ["1", "2", "4_1", "5_1", "3", "4_2", "5_2", "6"]);
        assert_eq!(r.origin, [0, 1, 3, 4, 2, 3, 4, 5]);
        assert_eq!(r.bale, 1 << 7);
        assert_eq!(r.root, 0);
        let p = classify(&r.frame);
        assert!(p.baled_tree && p.baled_pretree && p.prelattice);
        assert!(!r.frame.related(2, 5));
        assert!(r.frame.related(1, 2) && !r.frame.related(1, 5));
    }

    #[test]
    fn chain_unravels_to_itself() {
        let chain = Frame::from_relation(3, |i, j| i <= j).unwrap();
        let r = unravel(&chain, "w0").unwrap();
        assert_eq!(r.frame, chain);
    }

    #[test]
    fn a_single_cluster_is_all_bale() {
        let cluster = Frame::from_relation(3, |_, _| true).unwrap();
        let r = unravel(&cluster, "w1").unwrap();
        assert_eq!(r.frame, cluster);
        assert_eq!(r.bale, 0b111);
        assert_eq!(r.root, 1);
    }

    #[test]
    fn rejects_bad_input() {
        let fork = Frame::from_relation(3, |i, j| i == j || i == 0).unwrap();
        assert_eq!(unravel(&fork, "w0"), Err(ClassError::NotDirected));
        let chain = Frame::from_relation(3, |i, j| i <= j).unwrap();
        assert_eq!(unravel(&chain, "w1"), Err(ClassError::RootNotMinimal("w1".into())));
        let cycle = Frame::from_relation(3, |i, j| (i + 1) % 3 == j).unwrap();
        assert_eq!(unravel(&cycle, "w0"), Err(KripkeError::NotPreorder.into()));
    }

    #[test]
    fn clusters_are_copied_whole() {
        // 0 below {1,2} and 3, both below the 2-cluster {4,5}, below the top 6
        let class = [0, 1, 1, 2, 3, 3, 4];
        let below = |a: usize, b: usize| a == b || a == 0 || b == 4 || (b == 3 && a != 4);
        let fr = Frame::from_relation(7, |i, j| below(class[i], class[j])).unwrap();
        assert!(fr.is_preorder());
        let r = unravel(&fr, "w0").unwrap();
        assert_eq!(
            r.frame.ids(),
            ["w0", "w1", "w2", "w4_1", "w5_1", "w3", "w4_2", "w5_2", "w6"]
        );
        assert!(r.frame.related(3, 4) && r.frame.related(4, 3));
        assert!(!r.frame.related(3, 6));
        assert!(classify(&r.frame).baled_pretree);
    }
}
