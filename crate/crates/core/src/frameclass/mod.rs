//! Structural classification of frames and the frame constructions built on
//! it: cluster quotients, partial unravelling and pre-Boolean frames.

mod order;
mod unravel;

use std::fmt;
use std::str::FromStr;

pub use order::{
    boolean_witness, is_antisymmetric, is_baled_tree, is_directed, is_lattice, is_partial_order, is_tree, join,
    meet,
};
pub use unravel::{unravel, UnravelResult};

pub use crate::kripke::restrict_to_accessible;
use crate::kripke::{quotient, Frame, KripkeError};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ClassError {
    #[error(transparent)]
    Kripke(#[from] KripkeError),
    #[error("frame is not directed")]
    NotDirected,
    #[error("world {0:?} is not in the least cluster")]
    RootNotMinimal(String),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FrameProfile {
    pub reflexive: bool,
    pub transitive: bool,
    pub preorder: bool,
    pub directed: bool,
    pub partial_order: bool,
    pub lattice: bool,
    pub prelattice: bool,
    pub tree: bool,
    pub pretree: bool,
    pub baled_tree: bool,
    pub baled_pretree: bool,
    pub boolean_algebra: bool,
    pub preboolean: bool,
    pub linear_preorder: bool,
    pub complete_reflexive: bool,
    pub cluster_count: usize,
    pub max_cluster_size: usize,
}

impl FrameProfile {
    /// One `key=value` line per field, in declaration order.
    pub fn report(&self) -> String {
        let flags = [
            ("reflexive", self.reflexive),
            ("transitive", self.transitive),
            ("preorder", self.preorder),
            ("directed", self.directed),
            ("partial_order", self.partial_order),
            ("lattice", self.lattice),
            ("prelattice", self.prelattice),
            ("tree", self.tree),
            ("pretree", self.pretree),
            ("baled_tree", self.baled_tree),
            ("baled_pretree", self.baled_pretree),
            ("boolean_algebra", self.boolean_algebra),
            ("preboolean", self.preboolean),
            ("linear_preorder", self.linear_preorder),
            ("complete_reflexive", self.complete_reflexive),
        ];
        let mut out = String::new();
        for (key, value) in flags {
            out.push_str(&format!("{key}={value}\n"));
        }
        out.push_str(&format!("cluster_count={}\n", self.cluster_count));
        out.push_str(&format!("max_cluster_size={}\n", self.max_cluster_size));
        out
    }
}

pub fn classify(fr: &Frame) -> FrameProfile {
    let clusters = fr.clusters();
    let n = fr.len();
    let mut p = FrameProfile {
        reflexive: fr.is_reflexive(),
        transitive: fr.is_transitive(),
        preorder: fr.is_preorder(),
        directed: is_directed(fr),
        partial_order: is_partial_order(fr),
        lattice: is_lattice(fr),
        tree: is_tree(fr),
        baled_tree: is_baled_tree(fr),
        boolean_algebra: boolean_witness(fr).is_some(),
        complete_reflexive: n > 0 && fr.edge_count() == n * n,
        cluster_count: clusters.len(),
        max_cluster_size: clusters.max_block_size(),
        ..FrameProfile::default()
    };
    if let Ok((q, _)) = quotient(fr) {
        p.prelattice = is_lattice(&q);
        p.pretree = is_tree(&q);
        p.baled_pretree = is_baled_tree(&q);
        p.preboolean = boolean_witness(&q).is_some();
        p.linear_preorder = (0..n).all(|u| (0..n).all(|v| fr.related(u, v) || fr.related(v, u)));
    }
    p
}

/// Frame classes used for enumeration and countermodel search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FrameClass {
    All,
    Transitive,
    Preorder,
    DirectedPreorder,
    Prelattice,
    BaledPretree,
    Preboolean,
    LinearPreorder,
    CompleteReflexive,
    Pretree,
}

impl FrameClass {
    pub const ALL: [FrameClass; 10] = [
        FrameClass::All,
        FrameClass::Transitive,
        FrameClass::Preorder,
        FrameClass::DirectedPreorder,
        FrameClass::Prelattice,
        FrameClass::BaledPretree,
        FrameClass::Preboolean,
        FrameClass::LinearPreorder,
        FrameClass::CompleteReflexive,
        FrameClass::Pretree,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FrameClass::All => "all",
            FrameClass::Transitive => "transitive",
            FrameClass::Preorder => "preorder",
            FrameClass::DirectedPreorder => "directed-preorder",
            FrameClass::Prelattice => "prelattice",
            FrameClass::BaledPretree => "baled-pretree",
            FrameClass::Preboolean => "preboolean",
            FrameClass::LinearPreorder => "linear-preorder",
            FrameClass::CompleteReflexive => "complete-reflexive",
            FrameClass::Pretree => "pretree",
        }
    }

    pub fn contains(self, fr: &Frame) -> bool {
        match self {
            FrameClass::All => true,
            FrameClass::Transitive => fr.is_transitive(),
            FrameClass::Preorder => fr.is_preorder(),
            FrameClass::DirectedPreorder => fr.is_preorder() && is_directed(fr),
            FrameClass::CompleteReflexive => fr.edge_count() == fr.len() * fr.len(),
            _ => {
                let p = classify(fr);
                match self {
                    FrameClass::Prelattice => p.prelattice,
                    FrameClass::BaledPretree => p.baled_pretree,
                    FrameClass::Preboolean => p.preboolean,
                    FrameClass::LinearPreorder => p.linear_preorder,
                    _ => p.pretree,
                }
            }
        }
    }
}

impl fmt::Display for FrameClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FrameClass {
    type Err = crate::formula::UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FrameClass::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| crate::formula::UnknownName { kind: "frame class", name: s.to_string() })
    }
}

/// The frame on pairs `(A, B)` with `A ⊆ {0..n-1}`, `B ⊆ {0..m-1}`, where
/// `(A,B)` sees `(A',B')` iff `A ⊆ A'`. World `(A,B)` is `w{A}_{B}` with both
/// sets written as bit masks, listed by `A` then `B`.
pub fn preboolean_frame(n: usize, m: usize) -> Result<Frame, KripkeError> {
    if n + m > 6 {
        return Err(KripkeError::TooManyWorlds(1usize.checked_shl((n + m) as u32).unwrap_or(usize::MAX)));
    }
    let ids = (0..1usize << n).flat_map(|a| (0..1usize << m).map(move |b| format!("w{a}_{b}")));
    let mut fr = Frame::new(ids)?;
    for u in 0..fr.len() {
        for v in 0..fr.len() {
            let (a, a2) = (u >> m, v >> m);
            if a & !a2 == 0 {
                fr.add_edge(u, v);
            }
        }
    }
    Ok(fr)
}
