//! The self-check suite: exhaustive finite checks of the main constructions,
//! each reported as one pass/fail line with deterministic details.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::decide::{countermodel_search, observation_suite, Verdict};
use crate::formula::{axiom, parse, theory_axiom_names, AxiomName, Formula, FormulaCorpus, TheoryName};
use crate::frameclass::{classify, preboolean_frame, unravel, FrameClass};
use crate::jankov::{
    button_names, independence_formula, lattice_labels, linear_labels, prelattice_labels, preboolean_model,
    statement_sets, switch_names, volume_control_formula, volume_levels, volume_model, zero_volume, LabelLaws,
    Simulation,
};
use crate::kripke::{
    bisimilar, enumerate_frames, frame_valid, frame_valid_with, members, singleton, Frame, Model, PointedModel,
};

pub const CRITERIA: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Criterion {
    pub number: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {:>2} {}: {}", self.number, self.title, self.detail)
    }
}

type Outcome = Result<String, String>;

fn ensure(ok: bool, failure: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(failure())
    }
}

pub fn title(number: usize) -> &'static str {
    match number {
        1 => "S4.2 axioms valid on directed pre-orders",
        2 => "axioms beyond S4.2 refuted",
        3 => "label laws",
        4 => "simulation by translation",
        5 => "partial unravelling",
        6 => "independence in pre-Boolean models",
        7 => "statement trichotomy",
        8 => "W5, .3 and Dm instances",
        9 => "linear labels and directedness",
        10 => "thread-count independence",
        _ => "unknown criterion",
    }
}

pub fn run(number: usize) -> Criterion {
    let outcome = match number {
        1 => soundness(),
        2 => observations(),
        3 => label_laws(),
        4 => simulation(),
        5 => unravelling(),
        6 => independence(),
        7 => trichotomy(),
        8 => instance_cases(),
        9 => linear(),
        10 => thread_independence(),
        _ => Err(format!("no criterion {number}")),
    };
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Criterion { number, title: title(number), passed, detail }
}

pub fn run_all() -> Vec<Criterion> {
    (1..=CRITERIA).map(run).collect()
}

fn f(text: &str) -> Formula {
    parse(text).expect("suite formulas parse")
}

/// Worlds no other world sits strictly below.
fn minimal_worlds(fr: &Frame) -> Vec<usize> {
    (0..fr.len())
        .filter(|&w| fr.predecessors(w) & !fr.successors(w) == 0)
        .collect()
}

fn small_prelattices() -> Vec<Frame> {
    enumerate_frames(6, FrameClass::Prelattice)
        .expect("within enumeration limits")
        .into_iter()
        .filter(|fr| {
            let p = classify(fr);
            p.cluster_count <= 3 && p.max_cluster_size <= 2
        })
        .collect()
}

fn switches_for(fr: &Frame) -> usize {
    usize::from(classify(fr).max_cluster_size > 1)
}

fn soundness() -> Outcome {
    let names = theory_axiom_names(TheoryName::S4_2);
    let mut frames = 0;
    for &ax in &names {
        let r = countermodel_search(&axiom(ax), TheoryName::S4_2, 5, None).map_err(|e| e.to_string())?;
        ensure(!r.is_refuted(), || format!("{ax} refuted"))?;
        frames = r.frames_examined;
    }
    Ok(format!("{} axioms, {frames} frames up to 5 worlds, 0 counterexamples", names.len()))
}

fn observations() -> Outcome {
    let reports = observation_suite(5).map_err(|e| e.to_string())?;
    let mut sizes = Vec::new();
    for (ax, r) in &reports {
        let m = r.countermodel().ok_or_else(|| format!("{ax} not refuted within 5 worlds"))?;
        ensure(r.replays(&axiom(*ax)), || format!("{ax} witness does not replay"))?;
        sizes.push(format!("{ax}:{}", m.model.frame().len()));
    }
    Ok(format!("witness sizes {}", sizes.join(" ")))
}

fn label_laws() -> Outcome {
    let lattices: Vec<Frame> = enumerate_frames(3, FrameClass::Prelattice)
        .map_err(|e| e.to_string())?
        .into_iter()
        .filter(|fr| classify(fr).lattice)
        .collect();
    for fr in &lattices {
        let host = preboolean_model(fr.len(), 0).map_err(|e| e.to_string())?;
        let la = lattice_labels(fr, &button_names(fr.len())).map_err(|e| e.to_string())?;
        let laws = LabelLaws::check(fr, &host, &la);
        ensure(laws.hold(), || format!("lattice {:?}: {laws:?}", fr.edges().collect::<Vec<_>>()))?;
    }
    let prelattices = small_prelattices();
    let mut checks = 0;
    for fr in &prelattices {
        let clusters = classify(fr).cluster_count;
        let switches = switches_for(fr);
        let host = preboolean_model(clusters, switches).map_err(|e| e.to_string())?;
        for w0 in minimal_worlds(fr) {
            let la = prelattice_labels(fr, &button_names(clusters), &switch_names(switches), fr.id(w0), 0)
                .map_err(|e| e.to_string())?;
            let laws = LabelLaws::check(fr, &host, &la);
            ensure(laws.hold(), || format!("pre-lattice {:?} at {}: {laws:?}", fr.edges().collect::<Vec<_>>(), fr.id(w0)))?;
            checks += 1;
        }
    }
    Ok(format!("{} lattices, {} pre-lattices, {checks} roots", lattices.len(), prelattices.len()))
}

fn simulation() -> Outcome {
    let corpus = FormulaCorpus::enumerate(&["q0", "q1"], 4, 3);
    let frames = small_prelattices();
    let mut models = 0u64;
    for fr in &frames {
        let clusters = classify(fr).cluster_count;
        let switches = switches_for(fr);
        let host = preboolean_model(clusters, switches).map_err(|e| e.to_string())?;
        let n = fr.len();
        for w0 in minimal_worlds(fr) {
            let la = prelattice_labels(fr, &button_names(clusters), &switch_names(switches), fr.id(w0), 0)
                .map_err(|e| e.to_string())?;
            let failure = (0..1u64 << (2 * n)).into_par_iter().find_map_first(|v| {
                let full = (1u64 << n) - 1;
                let model = Model::new(fr.clone()).with("q0", v & full).with("q1", v >> n & full);
                let m = PointedModel::new(model, w0);
                match Simulation::new(&m, &host, &la) {
                    Err(e) => Some(format!("valuation {v}: {e}")),
                    Ok(sim) => sim
                        .first_failure(&corpus)
                        .map(|i| format!("valuation {v}: {}", corpus.formulas()[i])),
                }
            });
            if let Some(msg) = failure {
                return Err(format!("frame {:?} at {}: {msg}", fr.edges().collect::<Vec<_>>(), fr.id(w0)));
            }
            models += 1 << (2 * n);
        }
    }
    Ok(format!("{} frames, {models} pointed models, {} formulas each", frames.len(), corpus.len()))
}

fn unravelling() -> Outcome {
    let frames = enumerate_frames(5, FrameClass::DirectedPreorder).map_err(|e| e.to_string())?;
    let mut roots = 0;
    for fr in &frames {
        for w0 in minimal_worlds(fr) {
            let r = unravel(fr, fr.id(w0)).map_err(|e| e.to_string())?;
            ensure(classify(&r.frame).baled_pretree, || format!("{:?} is not a baled pre-tree", r.frame.edges().collect::<Vec<_>>()))?;
            // every source world gets its own atom, pulled back along the copies
            let mut source = Model::new(fr.clone());
            let mut copy = Model::new(r.frame.clone());
            for w in 0..fr.len() {
                let atom = format!("at_{w}");
                source.set(atom.clone(), singleton(w));
                let copies = r.origin.iter().enumerate().filter(|(_, &o)| o == w);
                copy.set(atom, copies.fold(0, |acc, (i, _)| acc | singleton(i)));
            }
            let atoms: BTreeSet<String> = source.valuation().keys().cloned().collect();
            ensure(
                bisimilar(&PointedModel::new(source, w0), &PointedModel::new(copy, r.root), &atoms),
                || format!("unravelling of {:?} at {} is not bisimilar", fr.edges().collect::<Vec<_>>(), fr.id(w0)),
            )?;
            roots += 1;
        }
    }
    let six = Frame::from_edges(
        &["1", "2", "3", "4", "5", "6"],
        &[("1", "2"), ("1", "3"), ("2", "4"), ("2", "5"), ("3", "4"), ("3", "5"), ("4", "6"), ("5", "6")],
    )
    .map_err(|e| e.to_string())?
    .reflexive_transitive_closure();
    let size = unravel(&six, "1").map_err(|e| e.to_string())?.frame.len();
    ensure(size == 8, || format!("six-node frame unravels to {size} worlds"))?;
    Ok(format!("{} frames, {roots} roots, six-node frame gives {size} worlds", frames.len()))
}

fn independence() -> Outcome {
    let mut cases = 0;
    for n in 0..=4 {
        for m in 0..=4 - n {
            let host = preboolean_model(n, m).map_err(|e| e.to_string())?;
            let ind = independence_formula(&button_names(n), &switch_names(m)).map_err(|e| e.to_string())?;
            ensure(host.holds(&ind), || format!("fails for {n} buttons, {m} switches"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} models with n+m <= 4"))
}

fn trichotomy() -> Outcome {
    let frames = enumerate_frames(5, FrameClass::DirectedPreorder).map_err(|e| e.to_string())?;
    let atom = f("s");
    let mut checks = 0u64;
    for fr in &frames {
        for set in 0..1u64 << fr.len() {
            let m = Model::new(fr.clone()).with("s", set);
            let sets = statement_sets(&m, &atom);
            for w in members(fr.all()) {
                let holding = sets.iter().filter(|s| *s & singleton(w) != 0).count();
                ensure(holding == 1, || {
                    format!("{holding} classes at {} for s={set:b} on {:?}", fr.id(w), fr.edges().collect::<Vec<_>>())
                })?;
                checks += 1;
            }
        }
    }
    Ok(format!("{} frames, {checks} world checks", frames.len()))
}

fn instance_cases() -> Outcome {
    let two = preboolean_model(2, 0).map_err(|e| e.to_string())?;
    let w5 = f("(~[]b0 & ~[]b1) | [](b0 & b1)");
    ensure(two.holds(&w5), || "W5 instance is false at the root".into())?;
    ensure(two.holds(&Formula::diamond(Formula::boxed(w5.clone()))), || "W5 instance is not possibly necessary".into())?;
    ensure(!two.holds(&Formula::boxed(w5)), || "W5 instance is necessary".into())?;

    let sigma = [("p", "[]b0 & ~[]b1"), ("q", "[]b1 & ~[]b0")]
        .into_iter()
        .map(|(a, t)| (a.to_string(), f(t)))
        .collect();
    let three = axiom(AxiomName::Three).substitute(&sigma);
    let Formula::Implies(antecedent, conclusion) = &three else {
        return Err(".3 is not an implication".into());
    };
    ensure(two.holds(antecedent), || ".3 antecedent is false".into())?;
    ensure(!two.holds(conclusion), || ".3 conclusion holds".into())?;

    let one = preboolean_model(1, 1).map_err(|e| e.to_string())?;
    let sigma = [("p".to_string(), f("[]b0 | s0"))].into_iter().collect();
    let dm = axiom(AxiomName::Dm).substitute(&sigma);
    let Formula::Implies(antecedent, conclusion) = &dm else {
        return Err("Dm is not an implication".into());
    };
    ensure(one.holds(antecedent), || "Dm antecedent is false".into())?;
    ensure(!one.holds(conclusion), || "Dm conclusion holds".into())?;
    Ok("W5 possibly necessary but not necessary, .3 and Dm conclusions false".into())
}

fn linear() -> Outcome {
    let frames: Vec<Frame> = enumerate_frames(6, FrameClass::LinearPreorder)
        .map_err(|e| e.to_string())?
        .into_iter()
        .filter(|fr| {
            let p = classify(fr);
            p.cluster_count <= 3 && p.max_cluster_size <= 2
        })
        .collect();
    let mut roots = 0;
    for fr in &frames {
        let n = classify(fr).cluster_count - 1;
        let switches = switches_for(fr);
        let host = volume_model(n, switches).map_err(|e| e.to_string())?;
        let levels = volume_levels(n);
        if n > 0 {
            let control = Formula::and(volume_control_formula(&levels), zero_volume(&levels));
            ensure(host.holds(&control), || format!("no volume control of length {n} in the host"))?;
        }
        for w0 in minimal_worlds(fr) {
            let la = linear_labels(fr, &levels, &switch_names(switches), fr.id(w0), 0).map_err(|e| e.to_string())?;
            let laws = LabelLaws::check(fr, &host, &la);
            ensure(laws.hold(), || format!("{:?} at {}: {laws:?}", fr.edges().collect::<Vec<_>>(), fr.id(w0)))?;
            roots += 1;
        }
    }

    let dir = axiom(AxiomName::Dir);
    let r = countermodel_search(&dir, TheoryName::S4_2, 5, None).map_err(|e| e.to_string())?;
    ensure(r.verdict == Verdict::NoCountermodelUpTo(5), || "Dir refuted on a directed pre-order".into())?;
    let fork = Frame::from_relation(3, |i, j| i == j || i == 0).map_err(|e| e.to_string())?;
    let on_fork = frame_valid(&fork, &dir).map_err(|e| e.to_string())?;
    ensure(!on_fork.is_valid(), || "Dir is valid on the fork".into())?;
    Ok(format!(
        "{} linear pre-orders, {roots} roots, Dir valid on {} directed pre-orders and refuted on the fork",
        frames.len(),
        r.frames_examined
    ))
}

/// Searches repeated on a single-thread pool must report exactly what the
/// default pool reports.
fn thread_independence() -> Outcome {
    let render = || -> Result<String, String> {
        let reports = observation_suite(4).map_err(|e| e.to_string())?;
        let mut out: String = reports.iter().map(|(_, r)| r.porcelain()).collect();
        let big = preboolean_frame(1, 2).map_err(|e| e.to_string())?;
        for ax in [AxiomName::Three, AxiomName::M] {
            let report = frame_valid_with(&big, &axiom(ax), 24, true).map_err(|e| e.to_string())?;
            out.push_str(&format!("{report:?}\n"));
        }
        Ok(out)
    };
    let default = render()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .map_err(|e| e.to_string())?;
    let single = pool.install(render)?;
    ensure(default == single, || "reports differ between thread counts".into())?;
    Ok(format!("{} bytes of reports identical", default.len()))
}
