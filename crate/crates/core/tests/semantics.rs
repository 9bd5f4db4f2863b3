mod common;

use common::*;
use mfw_core::formula::{axiom, AxiomName};
use mfw_core::frameclass::{is_directed, unravel, FrameClass};
use mfw_core::kripke::{
    bisimilar, frame_valid, frames_of_size, quotient, singleton, Frame, Model, PointedModel,
};
use mfw_core::Formula;
use proptest::prelude::*;

const ATOMS: &[&str] = &["p", "q", "r"];

proptest! {
    #[test]
    fn evaluator_matches_the_truth_definition(m in arb_model(arb_frame(5)), f in arb_formula(ATOMS, 6)) {
        let rel = matrix(m.frame());
        let val = naive_valuation(&m);
        let ext = m.extension(&f);
        for w in 0..m.frame().len() {
            prop_assert_eq!(ext >> w & 1 == 1, naive_eval(&rel, &val, w, &f));
        }
    }

    #[test]
    fn boxed_formulas_persist_on_preorders(m in arb_model(arb_preorder(5)), g in arb_formula(ATOMS, 4)) {
        let boxed = m.extension(&Formula::boxed(g));
        for (u, v) in m.frame().edges() {
            prop_assert!(boxed >> u & 1 == 0 || boxed >> v & 1 == 1);
        }
    }

    #[test]
    fn diamond_is_dual_to_box(m in arb_model(arb_frame(5)), g in arb_formula(ATOMS, 4)) {
        let dia = m.extension(&Formula::diamond(g.clone()));
        let dual = m.extension(&Formula::not(Formula::boxed(Formula::not(g))));
        prop_assert_eq!(dia, dual);
    }

    #[test]
    fn frame_validity_matches_brute_force(fr in arb_frame(3), f in arb_formula(&["p", "q"], 4)) {
        let report = frame_valid(&fr, &f).unwrap();
        prop_assert_eq!(report.is_valid(), naive_frame_valid(&fr, &f));
        if let mfw_core::kripke::ValidityReport::Falsified { model, world, .. } = report {
            prop_assert!(!model.holds_at(world, &f));
        }
    }

    #[test]
    fn bisimulation_matches_the_greatest_fixpoint(a in arb_model(arb_frame(4)), b in arb_model(arb_frame(4))) {
        let atoms = ["p", "q"];
        let set = atoms.iter().map(|s| s.to_string()).collect();
        for x in 0..a.frame().len() {
            for y in 0..b.frame().len() {
                let fast = bisimilar(&PointedModel::new(a.clone(), x), &PointedModel::new(b.clone(), y), &set);
                prop_assert_eq!(fast, naive_bisimilar(&a, x, &b, y, &atoms));
            }
        }
    }

    /// A model on a directed pre-order agrees with its partial unravelling at
    /// the root on every formula of modal depth up to 6.
    #[test]
    fn unravelled_models_agree_at_the_root(
        m in arb_model(arb_preorder(4).prop_map(with_top)),
        fs in prop::collection::vec(arb_formula(ATOMS, 7), 16),
    ) {
        let fr = m.frame();
        let root = (0..fr.len()).find(|&w| fr.predecessors(w) & !fr.successors(w) == 0).unwrap();
        let r = unravel(fr, fr.id(root)).unwrap();
        let mut copy = Model::new(r.frame.clone());
        for (atom, &set) in m.valuation() {
            let pulled = r.origin.iter().enumerate().filter(|(_, &o)| set >> o & 1 == 1);
            copy.set(atom.clone(), pulled.fold(0, |acc, (i, _)| acc | singleton(i)));
        }
        let set = ATOMS.iter().map(|s| s.to_string()).collect();
        let (a, b) = (PointedModel::new(m.clone(), root), PointedModel::new(copy, r.root));
        prop_assert!(bisimilar(&a, &b, &set));
        for f in fs.iter().filter(|f| f.modal_depth() <= 6) {
            prop_assert_eq!(a.holds(f), b.holds(f), "{}", f);
        }
    }

    #[test]
    fn quotient_projection_is_an_order_homomorphism(fr in arb_preorder(6)) {
        let (q, proj) = quotient(&fr).unwrap();
        prop_assert!((0..q.len()).all(|c| proj.contains(&c)));
        for u in 0..fr.len() {
            for v in 0..fr.len() {
                prop_assert_eq!(fr.related(u, v), q.related(proj[u], proj[v]));
                if proj[u] == proj[v] {
                    prop_assert!(fr.related(u, v) && fr.related(v, u));
                }
            }
        }
    }
}

/// Adds a world above every other, making a pre-order directed.
fn with_top(fr: Frame) -> Frame {
    let n = fr.len();
    Frame::from_relation(n + 1, |i, j| j == n || (i < n && j < n && fr.related(i, j))).unwrap()
}

fn all_frames_up_to(n: usize, class: FrameClass) -> Vec<Frame> {
    (1..=n).flat_map(|k| frames_of_size(k, class).unwrap()).collect()
}

#[test]
fn four_and_t_correspond_to_transitivity_and_reflexivity() {
    let four = axiom(AxiomName::Four);
    let t = axiom(AxiomName::S);
    for fr in all_frames_up_to(4, FrameClass::All) {
        assert_eq!(frame_valid(&fr, &four).unwrap().is_valid(), fr.is_transitive());
        assert_eq!(frame_valid(&fr, &t).unwrap().is_valid(), fr.is_reflexive());
    }
}

/// .2 is valid on a pre-order exactly when every world's cone is directed;
/// in particular it fails on every rooted pre-order that is not directed.
#[test]
fn dot_two_holds_exactly_on_locally_directed_preorders() {
    let two = axiom(AxiomName::Two);
    for fr in all_frames_up_to(5, FrameClass::Preorder) {
        let locally_directed = (0..fr.len()).all(|w| is_directed(&fr.induced(fr.reachable(w)).0));
        assert_eq!(frame_valid(&fr, &two).unwrap().is_valid(), locally_directed);
        let rooted = (0..fr.len()).any(|w| fr.reachable(w) == fr.all());
        if rooted {
            assert_eq!(locally_directed, is_directed(&fr));
        }
    }
}

#[test]
fn enumeration_counts_match_orbit_counting() {
    let transitive = |r: &[Vec<bool>]| {
        let n = r.len();
        (0..n).all(|i| (0..n).all(|j| !r[i][j] || (0..n).all(|k| !r[j][k] || r[i][k])))
    };
    let preorder = |r: &[Vec<bool>]| transitive(r) && (0..r.len()).all(|i| r[i][i]);
    for n in 1..=3 {
        assert_eq!(frames_of_size(n, FrameClass::All).unwrap().len(), brute_force_class_count(n, |_| true));
    }
    for n in 1..=4 {
        assert_eq!(frames_of_size(n, FrameClass::Transitive).unwrap().len(), brute_force_class_count(n, transitive));
        assert_eq!(frames_of_size(n, FrameClass::Preorder).unwrap().len(), brute_force_class_count(n, preorder));
    }
}

#[test]
fn enumerated_frames_are_pairwise_non_isomorphic() {
    for fr in [FrameClass::Preorder, FrameClass::Transitive] {
        let frames = frames_of_size(4, fr).unwrap();
        for (i, a) in frames.iter().enumerate() {
            for b in &frames[i + 1..] {
                let iso = permutations(4)
                    .iter()
                    .any(|p| (0..4).all(|u| (0..4).all(|v| a.related(u, v) == b.related(p[u], p[v]))));
                assert!(!iso);
            }
        }
    }
}
