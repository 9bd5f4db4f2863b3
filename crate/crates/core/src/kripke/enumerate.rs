//! Isomorphism-free frame enumeration.
//!
//! Frames of size `k` are built by adding one world to every representative
//! of size `k - 1` in each of the hereditary base classes (all frames,
//! transitive frames, pre-orders), then reduced to canonical form. Other
//! classes are filters over a base class.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::{full_set, singleton, Frame, KripkeError, WorldSet};
use crate::frameclass::FrameClass;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Base {
    All,
    Transitive,
    Preorder,
}

fn base_of(class: FrameClass) -> Base {
    match class {
        FrameClass::All => Base::All,
        FrameClass::Transitive => Base::Transitive,
        _ => Base::Preorder,
    }
}

/// Largest world count enumerated for each base class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub all: usize,
    pub transitive: usize,
    pub preorder: usize,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits { all: 4, transitive: 5, preorder: 6 }
    }
}

impl EnumerationLimits {
    pub fn max_worlds(&self, class: FrameClass) -> usize {
        match base_of(class) {
            Base::All => self.all,
            Base::Transitive => self.transitive,
            Base::Preorder => self.preorder,
        }
    }
}

/// Canonical code and the world order achieving it.
///
/// Worlds are first sorted by the invariant signature (reflexive, out-degree
/// descending, in-degree); the code is the least adjacency bit string over
/// all orders respecting that sort, read square by square: after placing
/// world `k`, the bits `(k,0..=k)` then `(0..k,k)`.
pub(crate) fn canonical_form(fr: &Frame) -> (u64, Vec<usize>) {
    let n = fr.len();
    assert!(n <= 8, "canonical codes cover frames of up to 8 worlds");
    let sig = |w: usize| {
        (
            !fr.related(w, w),
            std::cmp::Reverse(fr.successors(w).count_ones()),
            fr.predecessors(w).count_ones(),
        )
    };
    let mut sorted: Vec<usize> = (0..n).collect();
    sorted.sort_by_key(|&w| sig(w));
    let slot_sigs: Vec<_> = sorted.iter().map(|&w| sig(w)).collect();

    struct Search<'a> {
        fr: &'a Frame,
        n: usize,
        slot_sigs: Vec<(bool, std::cmp::Reverse<u32>, u32)>,
        sigs: Vec<(bool, std::cmp::Reverse<u32>, u32)>,
        order: Vec<usize>,
        used: WorldSet,
        best: Option<(u64, Vec<usize>)>,
    }

    impl Search<'_> {
        fn go(&mut self, k: usize, code: u64) {
            if k == self.n {
                if self.best.as_ref().is_none_or(|(b, _)| code < *b) {
                    self.best = Some((code, self.order.clone()));
                }
                return;
            }
            for w in 0..self.n {
                if self.used & singleton(w) != 0 || self.sigs[w] != self.slot_sigs[k] {
                    continue;
                }
                let mut c = code;
                for j in 0..=k {
                    let v = if j == k { w } else { self.order[j] };
                    c = c << 1 | self.fr.related(w, v) as u64;
                }
                for i in 0..k {
                    c = c << 1 | self.fr.related(self.order[i], w) as u64;
                }
                if let Some((best, _)) = &self.best {
                    let shift = self.n * self.n - (k + 1) * (k + 1);
                    if c > best >> shift {
                        continue;
                    }
                }
                self.order.push(w);
                self.used |= singleton(w);
                self.go(k + 1, c);
                self.order.pop();
                self.used &= !singleton(w);
            }
        }
    }

    let mut search = Search {
        fr,
        n,
        slot_sigs,
        sigs: (0..n).map(sig).collect(),
        order: Vec::with_capacity(n),
        used: 0,
        best: None,
    };
    search.go(0, 0);
    search.best.unwrap_or((0, Vec::new()))
}

/// Isomorphism-invariant code; equal codes on equal-size frames mean
/// isomorphic frames.
pub fn canonical_code(fr: &Frame) -> u64 {
    canonical_form(fr).0
}

fn relabel(fr: &Frame, order: &[usize]) -> Frame {
    let mut pos = vec![0; fr.len()];
    for (i, &w) in order.iter().enumerate() {
        pos[w] = i;
    }
    let succ = order
        .iter()
        .map(|&w| {
            super::members(fr.successors(w)).fold(0, |acc, v| acc | singleton(pos[v]))
        })
        .collect();
    Frame::from_parts((0..fr.len()).map(|i| format!("w{i}")).collect(), succ)
}

type Level = Arc<Vec<(u64, Frame)>>;

fn level(base: Base, n: usize) -> Level {
    static CACHE: OnceLock<Mutex<HashMap<(Base, usize), Level>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&(base, n)) {
        return hit.clone();
    }
    let built: Level = Arc::new(if n == 0 {
        vec![(0, Frame::from_parts(Vec::new(), Vec::new()))]
    } else {
        extend(base, &level(base, n - 1), n)
    });
    cache.lock().unwrap().entry((base, n)).or_insert(built).clone()
}

fn extend(base: Base, smaller: &[(u64, Frame)], n: usize) -> Vec<(u64, Frame)> {
    let old = full_set(n - 1);
    let new = n - 1;
    let loops: &[bool] = match base {
        Base::Preorder => &[true],
        _ => &[false, true],
    };
    let mut found: BTreeMap<u64, Frame> = BTreeMap::new();
    for (_, rep) in smaller {
        for out in 0..=old {
            for inn in 0..=old {
                for &lp in loops {
                    let mut succ: Vec<WorldSet> = rep.successor_masks().to_vec();
                    for (u, s) in succ.iter_mut().enumerate() {
                        if inn & singleton(u) != 0 {
                            *s |= singleton(new);
                        }
                    }
                    succ.push(out | if lp { singleton(new) } else { 0 });
                    let fr = Frame::from_parts((0..n).map(|i| format!("w{i}")).collect(), succ);
                    if base != Base::All && !fr.is_transitive() {
                        continue;
                    }
                    let (code, order) = canonical_form(&fr);
                    found.entry(code).or_insert_with(|| relabel(&fr, &order));
                }
            }
        }
    }
    found.into_iter().collect()
}

/// One frame per isomorphism class with exactly `n` worlds in `class`,
/// ordered by canonical code. Worlds are named `w0..`.
pub fn frames_of_size(n: usize, class: FrameClass) -> Result<Vec<Frame>, KripkeError> {
    let max = EnumerationLimits::default().max_worlds(class);
    if n > max {
        return Err(KripkeError::EnumerationLimit { class: class.to_string(), max, asked: n });
    }
    Ok(level(base_of(class), n)
        .iter()
        .filter(|(_, fr)| class.contains(fr))
        .map(|(_, fr)| fr.clone())
        .collect())
}

/// Frames of `class` with between 1 and `n` worlds, by size and then
/// canonical code.
pub fn enumerate_frames(n: usize, class: FrameClass) -> Result<Vec<Frame>, KripkeError> {
    let mut out = Vec::new();
    for k in 1..=n {
        out.extend(frames_of_size(k, class)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(n: usize, class: FrameClass) -> usize {
        frames_of_size(n, class).unwrap().len()
    }

    #[test]
    fn known_isomorphism_class_counts() {
        // digraphs with loops: 1, 2, 10, 104, 3044
        let all: Vec<_> = (0..=4).map(|n| count(n, FrameClass::All)).collect();
        assert_eq!(all, [1, 2, 10, 104, 3044]);
        // transitive relations: 1, 2, 8, 39, 242, 1895
        let tr: Vec<_> = (0..=5).map(|n| count(n, FrameClass::Transitive)).collect();
        assert_eq!(tr, [1, 2, 8, 39, 242, 1895]);
        // pre-orders: 1, 1, 3, 9, 33, 139, 718
        let pre: Vec<_> = (0..=6).map(|n| count(n, FrameClass::Preorder)).collect();
        assert_eq!(pre, [1, 1, 3, 9, 33, 139, 718]);
    }

    #[test]
    fn small_class_examples() {
        assert_eq!(enumerate_frames(1, FrameClass::Preorder).unwrap().len(), 1);
        assert_eq!(enumerate_frames(2, FrameClass::CompleteReflexive).unwrap().len(), 2);
        assert_eq!(count(3, FrameClass::LinearPreorder), 4);
        assert_eq!(enumerate_frames(3, FrameClass::LinearPreorder).unwrap().len(), 7);
    }

    #[test]
    fn limits_are_enforced() {
        assert!(matches!(
            enumerate_frames(5, FrameClass::All),
            Err(KripkeError::EnumerationLimit { max: 4, asked: 5, .. })
        ));
        assert!(frames_of_size(7, FrameClass::DirectedPreorder).is_err());
    }

    #[test]
    fn pre_orders_are_listed_bottom_up() {
        for fr in enumerate_frames(5, FrameClass::Preorder).unwrap() {
            for (u, v) in fr.edges() {
                assert!(u <= v || fr.related(v, u), "{fr:?}");
            }
        }
    }

    #[test]
    fn codes_are_invariant_under_relabelling() {
        let fr = Frame::from_edges(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("c", "a"), ("d", "d"), ("a", "d")],
        )
        .unwrap();
        let code = canonical_code(&fr);
        for order in [[3, 2, 1, 0], [1, 3, 0, 2], [2, 0, 3, 1]] {
            assert_eq!(canonical_code(&relabel(&fr, &order)), code);
        }
    }
}
