//! Frame validity by exhaustive valuation search.
//!
//! Valuations are numbered: with atoms `a_0 < a_1 < ...` (by name) and `n`
//! worlds, valuation `v` makes `a_i` true on the world set
//! `(v >> (i * n)) & full`. Searching `v = 0, 1, 2, ...` and taking the lowest
//! falsified world makes the reported witness independent of scheduling.

use rayon::prelude::*;

use super::{full_set, Frame, KripkeError, Model, Program, WorldSet};
use crate::formula::Formula;

/// Default search budget: at most `2^24` valuations per frame.
pub const DEFAULT_VALUATION_BUDGET_BITS: usize = 24;

const CHUNK_BITS: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidityReport {
    Valid { valuations: u64 },
    /// `valuations` counts the valuations tried up to and including the witness.
    Falsified { model: Model, world: usize, valuations: u64 },
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        matches!(self, ValidityReport::Valid { .. })
    }

    pub fn valuations(&self) -> u64 {
        match self {
            ValidityReport::Valid { valuations } | ValidityReport::Falsified { valuations, .. } => *valuations,
        }
    }
}

pub fn frame_valid(fr: &Frame, f: &Formula) -> Result<ValidityReport, KripkeError> {
    frame_valid_with(fr, f, DEFAULT_VALUATION_BUDGET_BITS, false)
}

/// Like [`frame_valid`] with an explicit budget (in bits). With `parallel`,
/// blocks of valuations are searched on the current rayon pool; the result
/// is identical to the sequential search.
pub fn frame_valid_with(
    fr: &Frame,
    f: &Formula,
    budget_bits: usize,
    parallel: bool,
) -> Result<ValidityReport, KripkeError> {
    let prog = Program::compile(f);
    let n = fr.len();
    let bits = prog.atoms().len() * n;
    if bits > budget_bits || bits >= 64 {
        return Err(KripkeError::Budget { needed: bits, budget: budget_bits });
    }
    let total: u64 = 1 << bits;
    let search = |range: std::ops::Range<u64>| -> Option<(u64, usize)> {
        let mut slots = vec![0; prog.atoms().len()];
        let mut stack = Vec::new();
        let full = full_set(n);
        for v in range {
            for (i, slot) in slots.iter_mut().enumerate() {
                *slot = (v >> (i * n)) & full;
            }
            let truth = prog.run(fr.successor_masks(), fr.all(), &slots, &mut stack);
            if truth != fr.all() {
                return Some((v, (!truth & fr.all()).trailing_zeros() as usize));
            }
        }
        None
    };

    let found = if parallel && bits > CHUNK_BITS {
        let chunk = 1u64 << CHUNK_BITS;
        (0..total / chunk)
            .into_par_iter()
            .find_map_first(|c| search(c * chunk..(c + 1) * chunk))
    } else {
        search(0..total)
    };

    Ok(match found {
        None => ValidityReport::Valid { valuations: total },
        Some((v, world)) => {
            let full = full_set(n);
            let mut model = Model::new(fr.clone());
            for (i, atom) in prog.atoms().iter().enumerate() {
                model.set(atom.clone(), ((v >> (i * n)) & full) as WorldSet);
            }
            ValidityReport::Falsified { model, world, valuations: v + 1 }
        }
    })
}
