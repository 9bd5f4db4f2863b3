use mfw_core::frameclass::{classify, preboolean_frame, unravel, FrameClass};
use mfw_core::kripke::{enumerate_frames, quotient, Frame};

fn minimal_worlds(fr: &Frame) -> Vec<usize> {
    (0..fr.len()).filter(|&w| fr.predecessors(w) & !fr.successors(w) == 0).collect()
}

#[test]
fn preboolean_frames_have_power_set_quotients() {
    for n in 0..=4 {
        for m in 0..=4 - n {
            let fr = preboolean_frame(n, m).unwrap();
            let p = classify(&fr);
            assert!(p.prelattice && p.preboolean, "({n},{m})");
            assert_eq!(p.cluster_count, 1 << n);
            assert_eq!(p.max_cluster_size, 1 << m);
        }
    }
}

#[test]
fn class_flags_imply_each_other() {
    for fr in enumerate_frames(5, FrameClass::Transitive).unwrap() {
        let p = classify(&fr);
        if p.baled_pretree {
            assert!(p.prelattice);
        }
        if p.prelattice {
            assert!(p.directed && p.preorder);
        }
        if p.preboolean {
            assert!(p.prelattice);
        }
        if p.tree {
            assert!(p.pretree && p.partial_order);
        }
        if p.lattice {
            assert!(p.prelattice && p.partial_order);
        }
    }
}

/// Maximal chains from `from` to `to` in the Hasse diagram of a partial
/// order given as a relation matrix, counted by plain recursion.
fn chains(rel: &[Vec<bool>], from: usize, to: usize) -> usize {
    if from == to {
        return 1;
    }
    let n = rel.len();
    let covers = (0..n).filter(|&c| {
        c != from
            && rel[from][c]
            && rel[c][to]
            && !(0..n).any(|m| m != from && m != c && rel[from][m] && rel[m][c])
    });
    covers.map(|c| chains(rel, c, to)).sum()
}

#[test]
fn unravelling_size_matches_path_enumeration() {
    let mut checked = 0;
    for fr in enumerate_frames(6, FrameClass::DirectedPreorder).unwrap() {
        for w0 in minimal_worlds(&fr) {
            let (sub, old) = fr.induced(fr.reachable(w0));
            let (q, proj) = quotient(&sub).unwrap();
            let rel: Vec<Vec<bool>> =
                (0..q.len()).map(|i| (0..q.len()).map(|j| q.related(i, j)).collect()).collect();
            let size = |c: usize| proj.iter().filter(|&&k| k == c).count();
            let top = (0..q.len()).find(|&c| (0..q.len()).all(|d| rel[d][c])).unwrap();
            let root = proj[old.iter().position(|&o| o == w0).unwrap()];
            let expected: usize = size(top)
                + (0..q.len()).filter(|&c| c != top).map(|c| chains(&rel, root, c) * size(c)).sum::<usize>();
            let r = unravel(&fr, fr.id(w0)).unwrap();
            assert_eq!(r.frame.len(), expected);
            assert!(classify(&r.frame).baled_pretree);
            assert_eq!(r.bale.count_ones() as usize, size(top));
            checked += 1;
        }
    }
    assert!(checked > 100);
}

#[test]
fn unravelling_preserves_pretrees() {
    for fr in enumerate_frames(5, FrameClass::BaledPretree).unwrap() {
        let root = minimal_worlds(&fr)[0];
        let r = unravel(&fr, fr.id(root)).unwrap();
        assert_eq!(r.frame.len(), fr.len(), "{:?}", fr.edges().collect::<Vec<_>>());
    }
}
