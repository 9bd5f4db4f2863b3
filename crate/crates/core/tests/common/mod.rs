//! Strategies and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use mfw_core::kripke::{Frame, Model};
use mfw_core::Formula;
use proptest::prelude::*;

pub fn arb_formula(atoms: &'static [&'static str], depth: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        4 => prop::sample::select(atoms.to_vec()).prop_map(Formula::atom),
        1 => Just(Formula::Top),
        1 => Just(Formula::Bot),
    ];
    leaf.prop_recursive(depth, 48, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            inner.clone().prop_map(Formula::boxed),
            inner.clone().prop_map(Formula::diamond),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
        ]
    })
}

/// Frames on 1..=max worlds with arbitrary relations.
pub fn arb_frame(max: usize) -> impl Strategy<Value = Frame> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n)
            .prop_map(move |bits| Frame::from_relation(n, |i, j| bits[i * n + j]).unwrap())
    })
}

pub fn arb_preorder(max: usize) -> impl Strategy<Value = Frame> {
    arb_frame(max).prop_map(|fr| fr.reflexive_transitive_closure())
}

/// A model on `frame` valuing the atoms `p`, `q` and `r`.
pub fn arb_model(frame: impl Strategy<Value = Frame>) -> impl Strategy<Value = Model> {
    frame.prop_flat_map(|fr| {
        let sets = prop::collection::vec(any::<u64>(), 3);
        (Just(fr), sets).prop_map(|(fr, sets)| {
            let mut m = Model::new(fr);
            for (atom, set) in ["p", "q", "r"].into_iter().zip(sets) {
                m.set(atom, set);
            }
            m
        })
    })
}

/// The relation as a boolean matrix.
pub fn matrix(fr: &Frame) -> Vec<Vec<bool>> {
    (0..fr.len()).map(|i| (0..fr.len()).map(|j| fr.related(i, j)).collect()).collect()
}

/// Textbook recursive truth definition, independent of the bitset evaluator.
pub fn naive_eval(rel: &[Vec<bool>], val: &BTreeMap<String, Vec<bool>>, w: usize, f: &Formula) -> bool {
    let ev = |w: usize, g: &Formula| naive_eval(rel, val, w, g);
    match f {
        Formula::Atom(a) => val.get(a).is_some_and(|v| v[w]),
        Formula::Top => true,
        Formula::Bot => false,
        Formula::Not(g) => !ev(w, g),
        Formula::And(a, b) => ev(w, a) && ev(w, b),
        Formula::Or(a, b) => ev(w, a) || ev(w, b),
        Formula::Implies(a, b) => !ev(w, a) || ev(w, b),
        Formula::Iff(a, b) => ev(w, a) == ev(w, b),
        Formula::Box(g) => (0..rel.len()).all(|v| !rel[w][v] || ev(v, g)),
        Formula::Diamond(g) => (0..rel.len()).any(|v| rel[w][v] && ev(v, g)),
    }
}

pub fn naive_valuation(m: &Model) -> BTreeMap<String, Vec<bool>> {
    let n = m.frame().len();
    m.valuation()
        .iter()
        .map(|(a, &set)| (a.clone(), (0..n).map(|w| set >> w & 1 == 1).collect()))
        .collect()
}

/// Validity on a frame by trying every valuation of the formula's atoms.
pub fn naive_frame_valid(fr: &Frame, f: &Formula) -> bool {
    let rel = matrix(fr);
    let atoms: Vec<String> = f.atoms().into_iter().collect();
    let n = fr.len();
    let total = 1u64 << (atoms.len() * n);
    (0..total).all(|code| {
        let val = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), (0..n).map(|w| code >> (i * n + w) & 1 == 1).collect()))
            .collect();
        (0..n).all(|w| naive_eval(&rel, &val, w, f))
    })
}

/// All permutations of 0..n.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Number of isomorphism classes among relations on n worlds satisfying
/// `keep`, by orbit counting over explicit permutations.
pub fn brute_force_class_count(n: usize, keep: impl Fn(&[Vec<bool>]) -> bool) -> usize {
    let perms = permutations(n);
    let bits = n * n;
    let decode = |code: u64| -> Vec<Vec<bool>> {
        (0..n).map(|i| (0..n).map(|j| code >> (i * n + j) & 1 == 1).collect()).collect()
    };
    let encode = |rel: &[Vec<bool>]| -> u64 {
        let mut c = 0;
        for i in 0..n {
            for j in 0..n {
                if rel[i][j] {
                    c |= 1 << (i * n + j);
                }
            }
        }
        c
    };
    let mut seen = std::collections::HashSet::new();
    let mut classes = 0;
    for code in 0..1u64 << bits {
        let rel = decode(code);
        if !keep(&rel) || seen.contains(&code) {
            continue;
        }
        classes += 1;
        for p in &perms {
            let image: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| rel[p[i]][p[j]]).collect()).collect();
            seen.insert(encode(&image));
        }
    }
    classes
}

/// Greatest bisimulation between two models by iterated pair removal.
pub fn naive_bisimilar(a: &Model, x: usize, b: &Model, y: usize, atoms: &[&str]) -> bool {
    let (ra, rb) = (matrix(a.frame()), matrix(b.frame()));
    let (na, nb) = (ra.len(), rb.len());
    let agree = |u: usize, v: usize| atoms.iter().all(|p| (a.atom_set(p) >> u & 1) == (b.atom_set(p) >> v & 1));
    let mut rel: Vec<Vec<bool>> = (0..na).map(|u| (0..nb).map(|v| agree(u, v)).collect()).collect();
    loop {
        let mut changed = false;
        for u in 0..na {
            for v in 0..nb {
                if !rel[u][v] {
                    continue;
                }
                let forth = (0..na).filter(|&u2| ra[u][u2]).all(|u2| (0..nb).any(|v2| rb[v][v2] && rel[u2][v2]));
                let back = (0..nb).filter(|&v2| rb[v][v2]).all(|v2| (0..na).any(|u2| ra[u][u2] && rel[u2][v2]));
                if !(forth && back) {
                    rel[u][v] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            return rel[x][y];
        }
    }
}
