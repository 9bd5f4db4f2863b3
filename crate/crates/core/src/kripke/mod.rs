//! Finite Kripke frames and models.
//!
//! Worlds are indexed in declaration order and world sets are `u64` bit masks,
//! so a frame holds at most [`MAX_WORLDS`] worlds.

mod bisim;
mod enumerate;
mod eval;
mod io;
mod validity;

use std::collections::BTreeMap;

pub use bisim::{bisimilar, bisimulation_classes};
pub use enumerate::{canonical_code, enumerate_frames, frames_of_size, EnumerationLimits};
pub use eval::{evaluate_corpus, Program};
pub use io::{read_model, write_frame, write_model, FileError, ModelFile};
pub use validity::{frame_valid, frame_valid_with, ValidityReport, DEFAULT_VALUATION_BUDGET_BITS};

use crate::formula::{Formula, Substitution};

pub type WorldSet = u64;
pub const MAX_WORLDS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum KripkeError {
    #[error("frames hold at most {MAX_WORLDS} worlds, got {0}")]
    TooManyWorlds(usize),
    #[error("duplicate world {0:?}")]
    DuplicateWorld(String),
    #[error("unknown world {0:?}")]
    UnknownWorld(String),
    #[error("invalid world identifier {0:?}; use letters, digits and '_'")]
    InvalidWorldId(String),
    #[error("frame is not a partial pre-order (reflexive and transitive)")]
    NotPreorder,
    #[error("search needs 2^{needed} valuations, budget is 2^{budget}")]
    Budget { needed: usize, budget: usize },
    #[error("{class} frames are enumerated up to {max} worlds, asked for {asked}")]
    EnumerationLimit { class: String, max: usize, asked: usize },
}

pub fn singleton(i: usize) -> WorldSet {
    1 << i
}

pub fn full_set(n: usize) -> WorldSet {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Indices of the members of `set`, ascending.
pub fn members(set: WorldSet) -> impl Iterator<Item = usize> {
    let mut rest = set;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        Some(i)
    })
}

pub fn is_world_id(id: &str) -> bool {
    !id.is_empty() && id.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    ids: Vec<String>,
    succ: Vec<WorldSet>,
}

impl Frame {
    /// A frame with the given worlds and no edges.
    pub fn new<S: Into<String>>(ids: impl IntoIterator<Item = S>) -> Result<Self, KripkeError> {
        let ids: Vec<String> = ids.into_iter().map(Into::into).collect();
        if ids.len() > MAX_WORLDS {
            return Err(KripkeError::TooManyWorlds(ids.len()));
        }
        for (i, id) in ids.iter().enumerate() {
            if !is_world_id(id) {
                return Err(KripkeError::InvalidWorldId(id.clone()));
            }
            if ids[..i].contains(id) {
                return Err(KripkeError::DuplicateWorld(id.clone()));
            }
        }
        let succ = vec![0; ids.len()];
        Ok(Frame { ids, succ })
    }

    pub fn from_edges(ids: &[&str], edges: &[(&str, &str)]) -> Result<Self, KripkeError> {
        let mut fr = Frame::new(ids.iter().copied())?;
        for (u, v) in edges {
            fr.add_edge_by_id(u, v)?;
        }
        Ok(fr)
    }

    /// Worlds `w0..w{n-1}` related by `rel`.
    pub fn from_relation(n: usize, rel: impl Fn(usize, usize) -> bool) -> Result<Self, KripkeError> {
        let mut fr = Frame::new((0..n).map(|i| format!("w{i}")))?;
        for i in 0..n {
            for j in 0..n {
                if rel(i, j) {
                    fr.add_edge(i, j);
                }
            }
        }
        Ok(fr)
    }

    pub(crate) fn from_parts(ids: Vec<String>, succ: Vec<WorldSet>) -> Self {
        debug_assert_eq!(ids.len(), succ.len());
        Frame { ids, succ }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(v < self.len(), "world index out of range");
        self.succ[u] |= singleton(v);
    }

    pub fn add_edge_by_id(&mut self, u: &str, v: &str) -> Result<(), KripkeError> {
        let (u, v) = (self.require(u)?, self.require(v)?);
        self.add_edge(u, v);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, w: usize) -> &str {
        &self.ids[w]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }

    pub fn require(&self, id: &str) -> Result<usize, KripkeError> {
        self.index_of(id)
            .ok_or_else(|| KripkeError::UnknownWorld(id.to_string()))
    }

    pub fn all(&self) -> WorldSet {
        full_set(self.len())
    }

    pub fn successors(&self, w: usize) -> WorldSet {
        self.succ[w]
    }

    pub fn successor_masks(&self) -> &[WorldSet] {
        &self.succ
    }

    pub fn predecessors(&self, w: usize) -> WorldSet {
        (0..self.len())
            .filter(|&u| self.related(u, w))
            .fold(0, |acc, u| acc | singleton(u))
    }

    pub fn related(&self, u: usize, v: usize) -> bool {
        self.succ[u] & singleton(v) != 0
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |u| members(self.succ[u]).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(|s| s.count_ones() as usize).sum()
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.len()).all(|w| self.related(w, w))
    }

    pub fn is_transitive(&self) -> bool {
        (0..self.len()).all(|u| {
            members(self.succ[u]).all(|v| self.succ[v] & !self.succ[u] == 0)
        })
    }

    pub fn is_preorder(&self) -> bool {
        self.is_reflexive() && self.is_transitive()
    }

    /// Worlds reachable from `w` by zero or more steps.
    pub fn reachable(&self, w: usize) -> WorldSet {
        let mut seen = singleton(w);
        let mut frontier = seen;
        while frontier != 0 {
            let next = members(frontier).fold(0, |acc, u| acc | self.succ[u]) & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    pub fn reflexive_transitive_closure(&self) -> Frame {
        let succ = (0..self.len()).map(|w| self.reachable(w)).collect();
        Frame { ids: self.ids.clone(), succ }
    }

    /// Classes of mutual reachability, ordered by first member.
    pub fn clusters(&self) -> Partition {
        let closure: Vec<WorldSet> = (0..self.len()).map(|w| self.reachable(w)).collect();
        let mut block_of = vec![usize::MAX; self.len()];
        let mut blocks = Vec::new();
        for w in 0..self.len() {
            if block_of[w] != usize::MAX {
                continue;
            }
            let block: Vec<usize> = members(closure[w])
                .filter(|&v| closure[v] & singleton(w) != 0)
                .collect();
            for &v in &block {
                block_of[v] = blocks.len();
            }
            blocks.push(block);
        }
        Partition { blocks, block_of }
    }

    /// Induced subframe on `keep`, preserving declaration order. Also returns
    /// the old index of each new world.
    pub fn induced(&self, keep: WorldSet) -> (Frame, Vec<usize>) {
        let old: Vec<usize> = members(keep & self.all()).collect();
        let mut new_index = vec![usize::MAX; self.len()];
        for (i, &o) in old.iter().enumerate() {
            new_index[o] = i;
        }
        let succ = old
            .iter()
            .map(|&o| {
                members(self.succ[o] & keep).fold(0, |acc, v| acc | singleton(new_index[v]))
            })
            .collect();
        let ids = old.iter().map(|&o| self.ids[o].clone()).collect();
        (Frame { ids, succ }, old)
    }

    /// The same relation with worlds renamed.
    pub fn renamed(&self, ids: Vec<String>) -> Result<Frame, KripkeError> {
        let mut fr = Frame::new(ids)?;
        assert_eq!(fr.len(), self.len(), "rename must keep the world count");
        fr.succ = self.succ.clone();
        Ok(fr)
    }
}

/// A set of disjoint nonempty world blocks covering a frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Partition {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, w: usize) -> usize {
        self.block_of[w]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_set(&self, b: usize) -> WorldSet {
        self.blocks[b].iter().fold(0, |acc, &w| acc | singleton(w))
    }

    pub fn max_block_size(&self) -> usize {
        self.blocks.iter().map(Vec::len).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    frame: Frame,
    valuation: BTreeMap<String, WorldSet>,
}

impl Model {
    pub fn new(frame: Frame) -> Self {
        Model { frame, valuation: BTreeMap::new() }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn valuation(&self) -> &BTreeMap<String, WorldSet> {
        &self.valuation
    }

    /// Makes `atom` true exactly on `set`.
    pub fn set(&mut self, atom: impl Into<String>, set: WorldSet) {
        self.valuation.insert(atom.into(), set & self.frame.all());
    }

    pub fn with(mut self, atom: impl Into<String>, set: WorldSet) -> Self {
        self.set(atom, set);
        self
    }

    pub fn set_by_ids(&mut self, atom: &str, worlds: &[&str]) -> Result<(), KripkeError> {
        let mut set = 0;
        for w in worlds {
            set |= singleton(self.frame.require(w)?);
        }
        self.set(atom, set);
        Ok(())
    }

    /// Truth set of an atom; atoms without a valuation entry are false everywhere.
    pub fn atom_set(&self, atom: &str) -> WorldSet {
        self.valuation.get(atom).copied().unwrap_or(0)
    }

    /// Worlds at which `f` is true.
    pub fn extension(&self, f: &Formula) -> WorldSet {
        eval::extension(self, f)
    }

    pub fn holds_at(&self, w: usize, f: &Formula) -> bool {
        self.extension(f) & singleton(w) != 0
    }

    pub fn eval(&self, world: &str, f: &Formula) -> Result<bool, KripkeError> {
        let w = self.frame.require(world)?;
        Ok(self.holds_at(w, f))
    }

    /// Truth at every world.
    pub fn valid(&self, f: &Formula) -> bool {
        self.extension(f) == self.frame.all()
    }

    /// The model whose atoms take the truth sets of their images under `sigma`.
    /// Evaluating `f` there agrees with evaluating `f.substitute(sigma)` here.
    pub fn substituted(&self, sigma: &Substitution) -> Model {
        let mut out = Model::new(self.frame.clone());
        for (atom, image) in sigma {
            out.set(atom.clone(), self.extension(image));
        }
        for (atom, set) in &self.valuation {
            if !sigma.contains_key(atom) {
                out.set(atom.clone(), *set);
            }
        }
        out
    }

    /// Restriction to the worlds in `keep`, with the old index of each new world.
    pub fn induced(&self, keep: WorldSet) -> (Model, Vec<usize>) {
        let (frame, old) = self.frame.induced(keep);
        let mut out = Model::new(frame);
        for (atom, set) in &self.valuation {
            let new_set = old
                .iter()
                .enumerate()
                .filter(|(_, &o)| set & singleton(o) != 0)
                .fold(0, |acc, (i, _)| acc | singleton(i));
            out.set(atom.clone(), new_set);
        }
        (out, old)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedModel {
    pub model: Model,
    pub point: usize,
}

impl PointedModel {
    pub fn new(model: Model, point: usize) -> Self {
        assert!(point < model.frame().len(), "point out of range");
        PointedModel { model, point }
    }

    pub fn holds(&self, f: &Formula) -> bool {
        self.model.holds_at(self.point, f)
    }

    pub fn point_id(&self) -> &str {
        self.model.frame().id(self.point)
    }
}

/// Truth of `f` at `world`.
pub fn eval(m: &Model, world: &str, f: &Formula) -> Result<bool, KripkeError> {
    m.eval(world, f)
}

pub fn valid_in_model(m: &Model, f: &Formula) -> bool {
    m.valid(f)
}

/// Quotient of a pre-order by mutual accessibility. Quotient worlds take the
/// id of their first declared member; the projection maps old indices to
/// quotient indices.
pub fn quotient(fr: &Frame) -> Result<(Frame, Vec<usize>), KripkeError> {
    if !fr.is_preorder() {
        return Err(KripkeError::NotPreorder);
    }
    let clusters = fr.clusters();
    let ids = clusters
        .blocks()
        .iter()
        .map(|b| fr.id(b[0]).to_string())
        .collect();
    let succ = clusters
        .blocks()
        .iter()
        .map(|b| {
            members(fr.successors(b[0])).fold(0, |acc, v| acc | singleton(clusters.block_of(v)))
        })
        .collect();
    let projection = (0..fr.len()).map(|w| clusters.block_of(w)).collect();
    Ok((Frame::from_parts(ids, succ), projection))
}

/// Induced subframe on the worlds reachable from `w0`, including `w0`.
pub fn restrict_to_accessible(fr: &Frame, w0: &str) -> Result<Frame, KripkeError> {
    let w = fr.require(w0)?;
    Ok(fr.induced(fr.reachable(w)).0)
}
