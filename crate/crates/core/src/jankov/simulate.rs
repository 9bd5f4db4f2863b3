//! Simulating a pointed Kripke model inside a host through translated
//! atoms, and the button / negated-button / switch trichotomy.

use super::{jankov_fine, world_atom, JankovError, LabelAssignment};
use crate::formula::{Formula, FormulaCorpus, Substitution};
use crate::frameclass::is_directed;
use crate::kripke::{evaluate_corpus, members, singleton, Model, PointedModel, WorldSet};

fn check_ids(m: &Model, la: &LabelAssignment) -> Result<(), JankovError> {
    if m.frame().ids() != la.ids.as_slice() {
        return Err(JankovError::LabelMismatch { expected: la.ids.clone(), got: m.frame().ids().to_vec() });
    }
    Ok(())
}

/// `ψ_q = ⋁{p_w | q holds at w}` for every atom with a valuation in `m`.
pub fn translate(m: &Model, la: &LabelAssignment) -> Result<Substitution, JankovError> {
    check_ids(m, la)?;
    Ok(m.valuation()
        .iter()
        .map(|(q, &set)| (q.clone(), Formula::disj(members(set).map(|w| la.labels[w].clone()))))
        .collect())
}

/// A source model, a host satisfying `δ(F) ∧ p_{w0}` at its point, and the
/// host re-valued by the translation, ready to compare formulas.
#[derive(Clone, Debug)]
pub struct Simulation<'a> {
    source: &'a PointedModel,
    host: &'a PointedModel,
    sigma: Substitution,
    translated: Model,
    /// Host worlds satisfying each label.
    label_sets: Vec<WorldSet>,
    /// Source worlds the per-world claim ranges over.
    reachable: WorldSet,
}

impl<'a> Simulation<'a> {
    pub fn new(m: &'a PointedModel, host: &'a PointedModel, la: &LabelAssignment) -> Result<Self, JankovError> {
        let sigma = translate(&m.model, la)?;
        let fr = m.model.frame();
        if !fr.is_preorder() {
            return Err(JankovError::Precondition("source frame is not a pre-order".into()));
        }
        let (cone, _) = host.model.frame().induced(host.model.frame().reachable(host.point));
        if !cone.is_preorder() {
            return Err(JankovError::Precondition("host is not a pre-order above its point".into()));
        }
        let delta = Formula::and(jankov_fine(fr), Formula::atom(world_atom(fr.id(m.point))));
        if !host.model.substituted(&la.substitution()).holds_at(host.point, &delta) {
            return Err(JankovError::Precondition(format!(
                "the Jankov-Fine formula with p_{} fails at the host point",
                fr.id(m.point)
            )));
        }
        Ok(Simulation {
            source: m,
            host,
            translated: host.model.substituted(&sigma),
            label_sets: la.labels.iter().map(|f| host.model.extension(f)).collect(),
            reachable: fr.reachable(m.point),
            sigma,
        })
    }

    pub fn substitution(&self) -> &Substitution {
        &self.sigma
    }

    /// The host re-valued so that each source atom takes the truth set of its
    /// translation; atoms the source leaves unvalued are false.
    fn translated_for<'b, 'c>(
        &'b self,
        atoms: impl IntoIterator<Item = &'c String>,
        owned: &'b mut Option<Model>,
    ) -> &'b Model {
        let missing: Vec<&String> = atoms.into_iter().filter(|a| !self.sigma.contains_key(*a)).collect();
        if missing.is_empty() {
            return &self.translated;
        }
        let mut m = self.translated.clone();
        for atom in missing {
            m.set(atom.clone(), 0);
        }
        owned.insert(m)
    }

    /// Compares the source and translated extensions of one formula: the
    /// per-world claim `(M,w) ⊨ φ` iff `(host,u0) ⊨ ◻(p_w → φ(ψ))` for every `w`
    /// reachable from the source point, and agreement at the two points.
    fn agrees(&self, source: WorldSet, host: WorldSet) -> bool {
        let view = self.host.model.frame().successors(self.host.point);
        let per_world = members(self.reachable)
            .all(|w| (source & singleton(w) != 0) == (view & self.label_sets[w] & !host == 0));
        let at_root = (source & singleton(self.source.point) != 0) == (host & singleton(self.host.point) != 0);
        per_world && at_root
    }

    pub fn check(&self, f: &Formula) -> bool {
        let atoms = f.atoms();
        let mut owned = None;
        let translated = self.translated_for(&atoms, &mut owned);
        self.agrees(self.source.model.extension(f), translated.extension(f))
    }

    /// Index of the first corpus formula on which the simulation fails.
    pub fn first_failure(&self, corpus: &FormulaCorpus) -> Option<usize> {
        let mut owned = None;
        let translated = self.translated_for(corpus.atoms(), &mut owned);
        let source = evaluate_corpus(&self.source.model, corpus);
        let host = evaluate_corpus(translated, corpus);
        (0..corpus.len()).find(|&i| !self.agrees(source[i], host[i]))
    }
}

pub fn verify_simulation(
    m: &PointedModel,
    host: &PointedModel,
    la: &LabelAssignment,
    f: &Formula,
) -> Result<bool, JankovError> {
    Ok(Simulation::new(m, host, la)?.check(f))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StatementClass {
    Button,
    NegatedButton,
    Switch,
}

impl StatementClass {
    pub fn as_str(self) -> &'static str {
        match self {
            StatementClass::Button => "button",
            StatementClass::NegatedButton => "negated-button",
            StatementClass::Switch => "switch",
        }
    }
}

impl std::fmt::Display for StatementClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Extensions of `◻◇◻f`, `◻◇◻¬f` and `◻◇f ∧ ◻◇¬f`.
pub fn statement_sets(m: &Model, f: &Formula) -> [WorldSet; 3] {
    let bdb = |g: Formula| Formula::boxed(Formula::diamond(Formula::boxed(g)));
    let bd = |g: Formula| Formula::boxed(Formula::diamond(g));
    let not_f = Formula::not(f.clone());
    [
        m.extension(&bdb(f.clone())),
        m.extension(&bdb(not_f.clone())),
        m.extension(&Formula::and(bd(f.clone()), bd(not_f))),
    ]
}

/// Whether `f` is a button, a negated button and a switch at the point.
pub fn statement_flags(m: &PointedModel, f: &Formula) -> [bool; 3] {
    statement_sets(&m.model, f).map(|s| s & singleton(m.point) != 0)
}

pub fn classify_statement(m: &PointedModel, f: &Formula) -> Result<StatementClass, JankovError> {
    let fr = m.model.frame();
    if !fr.is_preorder() || !is_directed(fr) {
        return Err(JankovError::NotDirectedPreorder);
    }
    let flags = statement_flags(m, f);
    let classes = [StatementClass::Button, StatementClass::NegatedButton, StatementClass::Switch];
    match flags.iter().filter(|&&b| b).count() {
        1 => Ok(classes[flags.iter().position(|&b| b).unwrap()]),
        n => Err(JankovError::StatementClass(n)),
    }
}
