//! Jankov-Fine formulas, button/switch patterns, the models that host
//! independent buttons, switches and volume controls, label assignments, and
//! the simulation of Kripke models by translated formulas.

mod labels;
mod simulate;

use crate::formula::Formula;
use crate::frameclass::{preboolean_frame, ClassError};
use crate::kripke::{singleton, Frame, KripkeError, Model, PointedModel};

pub use labels::{
    lattice_labels, linear_labels, prelattice_labels, volume_control_formula, zero_volume, LabelAssignment,
    LabelLaws,
};
pub use simulate::{classify_statement, statement_flags, statement_sets, translate, verify_simulation, Simulation, StatementClass};

/// Largest `|buttons| + |switches|` accepted by [`independence_formula`].
pub const MAX_PATTERN_ATOMS: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum JankovError {
    #[error(transparent)]
    Kripke(#[from] KripkeError),
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error("frame is not a lattice")]
    NotLattice,
    #[error("frame is not a pre-lattice")]
    NotPrelattice,
    #[error("frame is not a linear pre-order")]
    NotLinear,
    #[error("frame is not a directed pre-order")]
    NotDirectedPreorder,
    #[error("expected {expected} {what}, got {got}")]
    Count { what: &'static str, expected: usize, got: usize },
    #[error("{switches} switches give {} patterns, a cluster has {cluster} worlds", 1u64 << switches)]
    InsufficientSwitches { switches: usize, cluster: usize },
    #[error("switch pattern {pattern} is out of range for {switches} switches")]
    PatternOutOfRange { pattern: u64, switches: usize },
    #[error("{needed} pattern atoms exceed the limit of {limit}")]
    Budget { needed: usize, limit: usize },
    #[error("labels are for worlds {expected:?}, model has {got:?}")]
    LabelMismatch { expected: Vec<String>, got: Vec<String> },
    #[error("host does not satisfy the precondition: {0}")]
    Precondition(String),
    #[error("expected exactly one statement class at the point, {0} hold")]
    StatementClass(usize),
}

/// The atom standing for world `id` in [`jankov_fine`].
pub fn world_atom(id: &str) -> String {
    format!("p_{id}")
}

/// δ(F): necessarily exactly one `p_w` holds, and `p_w` makes `◇p_v` true iff
/// `w` sees `v`. Empty inner conjunctions are left out.
pub fn jankov_fine(fr: &Frame) -> Formula {
    let p = |w: usize| Formula::atom(world_atom(fr.id(w)));
    let n = fr.len();
    let mut distinct = Vec::new();
    let mut edges = Vec::new();
    let mut non_edges = Vec::new();
    for w in 0..n {
        for v in 0..n {
            if w != v {
                distinct.push(Formula::implies(p(w), Formula::not(p(v))));
            }
            if fr.related(w, v) {
                edges.push(Formula::implies(p(w), Formula::diamond(p(v))));
            } else {
                non_edges.push(Formula::implies(p(w), Formula::not(Formula::diamond(p(v)))));
            }
        }
    }
    let parts = [(0..n).map(p).collect::<Vec<_>>(), distinct, edges, non_edges];
    Formula::conj(
        parts
            .into_iter()
            .enumerate()
            .filter(|(_, part)| !part.is_empty())
            .map(|(i, part)| {
                Formula::boxed(if i == 0 { Formula::disj(part) } else { Formula::conj(part) })
            }),
    )
}

/// δ(F) with each `p_w` replaced by `labels[w]`.
pub fn jankov_fine_instance(fr: &Frame, labels: &[Formula]) -> Formula {
    let sigma = (0..fr.len())
        .map(|w| (world_atom(fr.id(w)), labels[w].clone()))
        .collect();
    jankov_fine(fr).substitute(&sigma)
}

fn literal(f: Formula, positive: bool) -> Formula {
    if positive {
        f
    } else {
        Formula::not(f)
    }
}

/// `b_A`: exactly the buttons with index in the mask `a` are necessary.
pub fn button_pattern(buttons: &[String], a: u64) -> Formula {
    Formula::conj(button_literals(buttons, a))
}

fn button_literals(buttons: &[String], a: u64) -> Vec<Formula> {
    buttons
        .iter()
        .enumerate()
        .map(|(i, b)| literal(Formula::boxed(Formula::atom(b.as_str())), a >> i & 1 == 1))
        .collect()
}

/// `s_B`: exactly the switches with index in the mask `b` are true.
pub fn switch_pattern(switches: &[String], b: u64) -> Formula {
    Formula::conj(switch_literals(switches, b))
}

fn switch_literals(switches: &[String], b: u64) -> Vec<Formula> {
    switches
        .iter()
        .enumerate()
        .map(|(j, s)| literal(Formula::atom(s.as_str()), b >> j & 1 == 1))
        .collect()
}

/// Θ_{A,B}: the button pattern `a` and the switch pattern `b` together.
pub fn pattern_formula(buttons: &[String], switches: &[String], a: u64, b: u64) -> Formula {
    let mut parts = button_literals(buttons, a);
    parts.extend(switch_literals(switches, b));
    Formula::conj(parts)
}

/// Buttons unpushed, and necessarily from every pattern `(A,B)` every pattern
/// `(A',B')` with `A ⊆ A'` is possible.
pub fn independence_formula(buttons: &[String], switches: &[String]) -> Result<Formula, JankovError> {
    let needed = buttons.len() + switches.len();
    if needed > MAX_PATTERN_ATOMS {
        return Err(JankovError::Budget { needed, limit: MAX_PATTERN_ATOMS });
    }
    let (nb, ns) = (1u64 << buttons.len(), 1u64 << switches.len());
    let mut parts = Vec::new();
    if !buttons.is_empty() {
        parts.push(Formula::conj(
            buttons.iter().map(|b| Formula::not(Formula::boxed(Formula::atom(b.as_str())))),
        ));
    }
    for a in 0..nb {
        for b in 0..ns {
            let reachable = (0..nb)
                .filter(|a2| a & !a2 == 0)
                .flat_map(|a2| (0..ns).map(move |b2| (a2, b2)))
                .map(|(a2, b2)| Formula::diamond(pattern_formula(buttons, switches, a2, b2)));
            parts.push(Formula::boxed(Formula::implies(
                pattern_formula(buttons, switches, a, b),
                Formula::conj(reachable),
            )));
        }
    }
    Ok(Formula::conj(parts))
}

pub fn button_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("b{i}")).collect()
}

pub fn switch_names(m: usize) -> Vec<String> {
    (0..m).map(|j| format!("s{j}")).collect()
}

/// The model on [`preboolean_frame`]`(n, m)` where button `b_i` holds at
/// `(A,B)` iff `i ∈ A` and switch `s_j` iff `j ∈ B`, pointed at `(∅,∅)`.
pub fn preboolean_model(n: usize, m: usize) -> Result<PointedModel, JankovError> {
    let fr = preboolean_frame(n, m)?;
    let mut model = Model::new(fr);
    let worlds = 1usize << (n + m);
    for (i, b) in button_names(n).into_iter().enumerate() {
        let set = (0..worlds).filter(|w| (w >> m) >> i & 1 == 1).fold(0, |acc, w| acc | singleton(w));
        model.set(b, set);
    }
    for (j, s) in switch_names(m).into_iter().enumerate() {
        let set = (0..worlds).filter(|w| w >> j & 1 == 1).fold(0, |acc, w| acc | singleton(w));
        model.set(s, set);
    }
    Ok(PointedModel::new(model, 0))
}

/// A chain of `levels + 1` clusters, each holding one world `w{k}_{B}` per
/// switch pattern `B`. Button `b_j` holds in cluster `k` iff `k > j`, so the
/// buttons are semi-independent and [`volume_levels`] is a volume control at
/// the point `w0_0`.
pub fn volume_model(levels: usize, switches: usize) -> Result<PointedModel, JankovError> {
    let per = 1usize << switches;
    let total = (levels + 1) * per;
    let ids = (0..=levels).flat_map(|k| (0..per).map(move |b| format!("w{k}_{b}")));
    let mut fr = Frame::new(ids)?;
    for u in 0..total {
        for v in 0..total {
            if u / per <= v / per {
                fr.add_edge(u, v);
            }
        }
    }
    let mut model = Model::new(fr);
    for (j, b) in button_names(levels).into_iter().enumerate() {
        let set = (0..total).filter(|w| w / per > j).fold(0, |acc, w| acc | singleton(w));
        model.set(b, set);
    }
    for (j, s) in switch_names(switches).into_iter().enumerate() {
        let set = (0..total).filter(|w| (w % per) >> j & 1 == 1).fold(0, |acc, w| acc | singleton(w));
        model.set(s, set);
    }
    Ok(PointedModel::new(model, 0))
}

/// Levels `φ_i = ◻(b_0 ∧ … ∧ b_{i-1})` for `i = 1..=n`.
pub fn volume_levels(n: usize) -> Vec<Formula> {
    (1..=n)
        .map(|i| Formula::boxed(Formula::conj(button_names(i).into_iter().map(Formula::atom))))
        .collect()
}
