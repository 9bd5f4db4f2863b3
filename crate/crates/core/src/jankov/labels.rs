//! Label assignments `w ↦ p_w` built from buttons, switches and volume
//! controls, and the laws they are meant to satisfy in a host model.

use std::fmt::Write as _;

use super::{button_pattern, jankov_fine, switch_pattern, world_atom, JankovError};
use crate::formula::{Formula, Substitution};
use crate::frameclass::{classify, is_lattice, join, ClassError};
use crate::kripke::{members, quotient, Frame, PointedModel, WorldSet};

/// Largest frame (in worlds) whose lattice labels are built; labels range
/// over all `2^n` button patterns.
pub const MAX_LATTICE_WORLDS: usize = 16;
const MAX_SWITCHES: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelAssignment {
    /// World ids of the labelled frame, in frame order.
    pub ids: Vec<String>,
    pub labels: Vec<Formula>,
    pub buttons: Vec<String>,
    pub switches: Vec<String>,
    /// Volume-control levels, for labels of linear pre-orders.
    pub levels: Vec<Formula>,
    /// The world whose label holds initially.
    pub root: usize,
}

impl LabelAssignment {
    pub fn label(&self, id: &str) -> Option<&Formula> {
        self.ids.iter().position(|x| x == id).map(|w| &self.labels[w])
    }

    /// `p_<id> ↦ label`, the substitution instantiating [`jankov_fine`].
    pub fn substitution(&self) -> Substitution {
        self.ids
            .iter()
            .zip(&self.labels)
            .map(|(id, f)| (world_atom(id), f.clone()))
            .collect()
    }

    /// One `<world>: <formula>` line per world.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (id, f) in self.ids.iter().zip(&self.labels) {
            writeln!(out, "{id}: {f}").unwrap();
        }
        out
    }
}

fn lattice_label_formulas(fr: &Frame, buttons: &[String]) -> Result<Vec<Formula>, JankovError> {
    if !is_lattice(fr) {
        return Err(JankovError::NotLattice);
    }
    if buttons.len() != fr.len() {
        return Err(JankovError::Count { what: "buttons", expected: fr.len(), got: buttons.len() });
    }
    if fr.len() > MAX_LATTICE_WORLDS {
        return Err(JankovError::Budget { needed: fr.len(), limit: MAX_LATTICE_WORLDS });
    }
    let mut groups = vec![Vec::new(); fr.len()];
    for a in 0..1u64 << fr.len() {
        let w = join(fr, a).expect("finite lattices have all joins");
        groups[w].push(button_pattern(buttons, a));
    }
    Ok(groups.into_iter().map(Formula::disj).collect())
}

/// `p_w = ⋁{b_A | ⋁A = w}` with one button per world, in frame order.
pub fn lattice_labels(fr: &Frame, buttons: &[String]) -> Result<LabelAssignment, JankovError> {
    let labels = lattice_label_formulas(fr, buttons)?;
    Ok(LabelAssignment {
        ids: fr.ids().to_vec(),
        labels,
        buttons: buttons.to_vec(),
        switches: Vec::new(),
        levels: Vec::new(),
        root: join(fr, 0).unwrap(),
    })
}

/// Splits the switch patterns among the worlds of one cluster. The designated
/// world gets `initial`; the remaining patterns, ascending, are dealt round
/// robin to the other worlds in order and then back to the designated one.
fn deal_patterns(cluster: &[usize], designated: usize, switches: usize, initial: u64) -> Vec<(usize, Vec<u64>)> {
    let mut order = vec![designated];
    order.extend(cluster.iter().copied().filter(|&w| w != designated));
    let mut hands: Vec<(usize, Vec<u64>)> = order.iter().map(|&w| (w, Vec::new())).collect();
    hands[0].1.push(initial);
    let rest = (0..1u64 << switches).filter(|&p| p != initial);
    for (k, pattern) in rest.enumerate() {
        let seat = (k + 1) % order.len();
        hands[seat].1.push(pattern);
    }
    for (_, hand) in &mut hands {
        hand.sort_unstable();
    }
    hands
}

struct ClusterLayout {
    class_of: Vec<usize>,
    members: Vec<Vec<usize>>,
    quotient: Frame,
}

fn layout(fr: &Frame) -> Option<ClusterLayout> {
    let (q, proj) = quotient(fr).ok()?;
    let mut members = vec![Vec::new(); q.len()];
    for (w, &c) in proj.iter().enumerate() {
        members[c].push(w);
    }
    Some(ClusterLayout { class_of: proj, members, quotient: q })
}

/// Switch labels `s_w` for every world, or `None` everywhere when there are
/// no switches.
fn switch_labels(
    fr: &Frame,
    lay: &ClusterLayout,
    switches: &[String],
    root: usize,
    initial: u64,
) -> Result<Vec<Option<Formula>>, JankovError> {
    if switches.len() > MAX_SWITCHES {
        return Err(JankovError::Budget { needed: switches.len(), limit: MAX_SWITCHES });
    }
    let largest = lay.members.iter().map(Vec::len).max().unwrap_or(0);
    if largest > 1 << switches.len() {
        return Err(JankovError::InsufficientSwitches { switches: switches.len(), cluster: largest });
    }
    if initial >> switches.len() != 0 {
        return Err(JankovError::PatternOutOfRange { pattern: initial, switches: switches.len() });
    }
    let mut out = vec![None; fr.len()];
    if switches.is_empty() {
        return Ok(out);
    }
    for (c, cluster) in lay.members.iter().enumerate() {
        let designated = if c == lay.class_of[root] { root } else { cluster[0] };
        for (w, hand) in deal_patterns(cluster, designated, switches.len(), initial) {
            out[w] = Some(Formula::disj(hand.into_iter().map(|p| switch_pattern(switches, p))));
        }
    }
    Ok(out)
}

fn require_least_cluster(fr: &Frame, lay: &ClusterLayout, w0: &str) -> Result<usize, JankovError> {
    let root = fr.require(w0)?;
    let c = lay.class_of[root];
    if lay.quotient.predecessors(c) != 1 << c {
        return Err(ClassError::RootNotMinimal(w0.to_string()).into());
    }
    Ok(root)
}

fn combine(cluster_label: &Formula, switch_label: Option<Formula>) -> Formula {
    match switch_label {
        None => cluster_label.clone(),
        Some(s) => Formula::and(cluster_label.clone(), s),
    }
}

/// `p_w = p_[w] ∧ s_w`: buttons (one per cluster, in cluster order) select the
/// cluster through its lattice label, switches select the world inside it.
/// Without switches `p_w = p_[w]`.
pub fn prelattice_labels(
    fr: &Frame,
    buttons: &[String],
    switches: &[String],
    w0: &str,
    initial_switch_pattern: u64,
) -> Result<LabelAssignment, JankovError> {
    let lay = layout(fr).ok_or(JankovError::NotPrelattice)?;
    if !is_lattice(&lay.quotient) {
        return Err(JankovError::NotPrelattice);
    }
    let root = require_least_cluster(fr, &lay, w0)?;
    let cluster_labels = lattice_label_formulas(&lay.quotient, buttons)?;
    let switch = switch_labels(fr, &lay, switches, root, initial_switch_pattern)?;
    let labels = switch
        .into_iter()
        .enumerate()
        .map(|(w, s)| combine(&cluster_labels[lay.class_of[w]], s))
        .collect();
    Ok(LabelAssignment {
        ids: fr.ids().to_vec(),
        labels,
        buttons: buttons.to_vec(),
        switches: switches.to_vec(),
        levels: Vec::new(),
        root,
    })
}

/// `◻` of, for each level `i`, "◻φ_{i+1} → ◻φ_i", "◇◻φ_{i+1}" and
/// "¬◻φ_{i+1} → ◇(¬φ_{i+1} ∧ ◻φ_i)"; the first level only contributes its
/// middle clause.
pub fn volume_control_formula(levels: &[Formula]) -> Formula {
    let bx = |f: &Formula| Formula::boxed(f.clone());
    let mut parts = Vec::new();
    for (i, next) in levels.iter().enumerate() {
        let current = i.checked_sub(1).map(|j| &levels[j]);
        if let Some(cur) = current {
            parts.push(Formula::implies(bx(next), bx(cur)));
        }
        parts.push(Formula::diamond(bx(next)));
        if let Some(cur) = current {
            parts.push(Formula::implies(
                Formula::not(bx(next)),
                Formula::diamond(Formula::and(Formula::not(next.clone()), bx(cur))),
            ));
        }
    }
    Formula::boxed(Formula::conj(parts))
}

/// Volume zero: `¬◻φ_1`.
pub fn zero_volume(levels: &[Formula]) -> Formula {
    levels
        .first()
        .map_or(Formula::Top, |first| Formula::not(Formula::boxed(first.clone())))
}

/// Labels for a linear pre-order of `levels.len() + 1` clusters: the volume
/// setting `v_i` selects the `i`-th cluster from the bottom and switches
/// select the world inside it.
pub fn linear_labels(
    fr: &Frame,
    levels: &[Formula],
    switches: &[String],
    w0: &str,
    initial_switch_pattern: u64,
) -> Result<LabelAssignment, JankovError> {
    if !classify(fr).linear_preorder {
        return Err(JankovError::NotLinear);
    }
    let lay = layout(fr).ok_or(JankovError::NotLinear)?;
    let q = &lay.quotient;
    if q.len() != levels.len() + 1 {
        return Err(JankovError::Count { what: "volume levels", expected: q.len() - 1, got: levels.len() });
    }
    let root = require_least_cluster(fr, &lay, w0)?;
    let n = levels.len();
    let bx = |i: usize| Formula::boxed(levels[i - 1].clone());
    let setting = |i: usize| match (i, n) {
        (_, 0) => Formula::Top,
        (0, _) => Formula::not(bx(1)),
        (i, n) if i == n => bx(n),
        (i, _) => Formula::and(bx(i), Formula::not(bx(i + 1))),
    };
    let rank = |c: usize| q.predecessors(c).count_ones() as usize - 1;
    let switch = switch_labels(fr, &lay, switches, root, initial_switch_pattern)?;
    let labels = switch
        .into_iter()
        .enumerate()
        .map(|(w, s)| combine(&setting(rank(lay.class_of[w])), s))
        .collect();
    Ok(LabelAssignment {
        ids: fr.ids().to_vec(),
        labels,
        buttons: Vec::new(),
        switches: switches.to_vec(),
        levels: levels.to_vec(),
        root,
    })
}

/// The label laws checked on a host model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LabelLaws {
    /// `δ(F) ∧ p_root` holds at the host point.
    pub delta_at_root: bool,
    /// Every host world satisfies exactly one label.
    pub exactly_one: bool,
    /// At every host world satisfying `p_w`, `◇p_v` holds iff `w` sees `v`.
    pub forceability: bool,
}

impl LabelLaws {
    pub fn check(fr: &Frame, host: &PointedModel, la: &LabelAssignment) -> LabelLaws {
        let m = &host.model;
        let sets: Vec<WorldSet> = la.labels.iter().map(|f| m.extension(f)).collect();
        let delta = Formula::and(jankov_fine(fr), Formula::atom(world_atom(&la.ids[la.root])));
        let delta_at_root = m.substituted(&la.substitution()).holds_at(host.point, &delta);

        let all = m.frame().all();
        let exactly_one = (0..m.frame().len()).all(|x| sets.iter().filter(|s| *s >> x & 1 == 1).count() == 1);
        let forceability = (0..fr.len()).all(|w| {
            members(sets[w] & all).all(|x| {
                (0..fr.len()).all(|v| (m.frame().successors(x) & sets[v] != 0) == fr.related(w, v))
            })
        });
        LabelLaws { delta_at_root, exactly_one, forceability }
    }

    pub fn hold(&self) -> bool {
        self.delta_at_root && self.exactly_one && self.forceability
    }
}
