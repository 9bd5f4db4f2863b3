//! Bounded countermodel search over complete frame classes, and axiom audits.
//!
//! A search never proves theoremhood: it either returns a countermodel or
//! reports that none exists up to the bound.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::formula::{axiom, AxiomName, Formula, TheoryName};
use crate::frameclass::FrameClass;
use crate::kripke::{frame_valid, frames_of_size, write_model, KripkeError, PointedModel, ValidityReport};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DecideError {
    #[error(transparent)]
    Kripke(#[from] KripkeError),
    #[error("no complete frame class is bound to {0}")]
    Unbound(TheoryName),
    #[error("{class} is not a complete frame class for {theory}")]
    WrongClass { theory: TheoryName, class: FrameClass },
    #[error("the world bound must be at least 1")]
    ZeroBound,
}

/// The complete frame classes searched for each bound theory; the first is
/// the default.
pub fn complete_classes(theory: TheoryName) -> &'static [FrameClass] {
    use FrameClass as C;
    match theory {
        TheoryName::K => &[C::All],
        TheoryName::K4 => &[C::Transitive],
        TheoryName::S4 => &[C::Preorder, C::Pretree],
        TheoryName::S4_2 => &[C::DirectedPreorder, C::Prelattice, C::BaledPretree, C::Preboolean],
        TheoryName::S4_3 => &[C::LinearPreorder],
        TheoryName::S5 => &[C::CompleteReflexive],
        _ => &[],
    }
}

pub fn bound_class(theory: TheoryName, choice: Option<FrameClass>) -> Result<FrameClass, DecideError> {
    let classes = complete_classes(theory);
    match choice {
        _ if classes.is_empty() => Err(DecideError::Unbound(theory)),
        None => Ok(classes[0]),
        Some(class) if classes.contains(&class) => Ok(class),
        Some(class) => Err(DecideError::WrongClass { theory, class }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The formula is false at the point.
    Countermodel(PointedModel),
    NoCountermodelUpTo(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub verdict: Verdict,
    pub theory: TheoryName,
    pub class: FrameClass,
    /// Frames searched, up to and including the one carrying the countermodel.
    pub frames_examined: u64,
    pub valuations_examined: u64,
}

impl SearchReport {
    pub fn is_refuted(&self) -> bool {
        matches!(self.verdict, Verdict::Countermodel(_))
    }

    pub fn countermodel(&self) -> Option<&PointedModel> {
        match &self.verdict {
            Verdict::Countermodel(m) => Some(m),
            Verdict::NoCountermodelUpTo(_) => None,
        }
    }

    /// True if the countermodel falsifies `f` at its point on a frame of the
    /// searched class, or if there is no countermodel.
    pub fn replays(&self, f: &Formula) -> bool {
        self.countermodel()
            .is_none_or(|m| !m.holds(f) && self.class.contains(m.model.frame()))
    }

    /// Stable `key=value` lines; a countermodel follows in the model file
    /// format.
    pub fn porcelain(&self) -> String {
        let mut out = String::new();
        let verdict = if self.is_refuted() { "refuted" } else { "bounded-valid" };
        writeln!(out, "verdict={verdict}").unwrap();
        writeln!(out, "theory={}", self.theory).unwrap();
        writeln!(out, "class={}", self.class).unwrap();
        writeln!(out, "frames_examined={}", self.frames_examined).unwrap();
        writeln!(out, "valuations_examined={}", self.valuations_examined).unwrap();
        match &self.verdict {
            Verdict::NoCountermodelUpTo(n) => writeln!(out, "bound={n}").unwrap(),
            Verdict::Countermodel(m) => {
                writeln!(out, "worlds={}", m.model.frame().len()).unwrap();
                writeln!(out, "world={}", m.point_id()).unwrap();
                out.push_str(&write_model(&m.model, Some(m.point)));
            }
        }
        out
    }
}

/// Searches the bound class of `theory` for a frame on which `f` is not
/// valid, by world count and then canonical code. Frames of one size are
/// checked in parallel on the current rayon pool and the first failure in
/// search order is reported, so the result does not depend on scheduling.
pub fn countermodel_search(
    f: &Formula,
    theory: TheoryName,
    max_worlds: usize,
    class_choice: Option<FrameClass>,
) -> Result<SearchReport, DecideError> {
    let class = bound_class(theory, class_choice)?;
    if max_worlds == 0 {
        return Err(DecideError::ZeroBound);
    }
    let mut report = SearchReport {
        verdict: Verdict::NoCountermodelUpTo(max_worlds),
        theory,
        class,
        frames_examined: 0,
        valuations_examined: 0,
    };
    for n in 1..=max_worlds {
        let frames = frames_of_size(n, class)?;
        let results: Vec<Result<ValidityReport, KripkeError>> =
            frames.par_iter().map(|fr| frame_valid(fr, f)).collect();
        for result in results {
            let result = result?;
            report.frames_examined += 1;
            report.valuations_examined += result.valuations();
            if let ValidityReport::Falsified { model, world, .. } = result {
                report.verdict = Verdict::Countermodel(PointedModel::new(model, world));
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// The first countermodel on directed pre-orders for each axiom beyond S4.2.
pub fn observation_suite(max_worlds: usize) -> Result<Vec<(AxiomName, SearchReport)>, DecideError> {
    AxiomName::BEYOND_S4_2
        .iter()
        .map(|&ax| Ok((ax, countermodel_search(&axiom(ax), TheoryName::S4_2, max_worlds, None)?)))
        .collect()
}

/// Every catalogued axiom searched against the bound class of `theory`.
pub fn frame_class_audit(
    theory: TheoryName,
    max_worlds: usize,
    class_choice: Option<FrameClass>,
) -> Result<Vec<(AxiomName, SearchReport)>, DecideError> {
    AxiomName::ALL
        .iter()
        .map(|&ax| Ok((ax, countermodel_search(&axiom(ax), theory, max_worlds, class_choice)?)))
        .collect()
}
