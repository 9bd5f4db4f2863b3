//! Kripke semantics toolkit for S4.2-style modal logics: formulas, finite
//! frames and models, frame classification, Jankov-Fine and label
//! constructions, and bounded countermodel search.

pub mod decide;
pub mod formula;
pub mod frameclass;
pub mod jankov;
pub mod kripke;
pub mod suite;

pub use formula::{parse, render, Formula};
pub use kripke::{Frame, Model, PointedModel};
