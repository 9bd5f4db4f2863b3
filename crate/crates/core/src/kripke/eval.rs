use super::{Model, WorldSet};
use crate::formula::{CorpusNode, Formula, FormulaCorpus};

fn box_of(succ: &[WorldSet], set: WorldSet) -> WorldSet {
    succ.iter()
        .enumerate()
        .filter(|(_, &s)| s & !set == 0)
        .fold(0, |acc, (w, _)| acc | (1 << w))
}

fn diamond_of(succ: &[WorldSet], set: WorldSet) -> WorldSet {
    succ.iter()
        .enumerate()
        .filter(|(_, &s)| s & set != 0)
        .fold(0, |acc, (w, _)| acc | (1 << w))
}

pub(super) fn extension(m: &Model, f: &Formula) -> WorldSet {
    let all = m.frame().all();
    let succ = m.frame().successor_masks();
    let rec = |g: &Formula| extension(m, g);
    match f {
        Formula::Atom(name) => m.atom_set(name),
        Formula::Top => all,
        Formula::Bot => 0,
        Formula::Not(g) => all & !rec(g),
        Formula::And(a, b) => rec(a) & rec(b),
        Formula::Or(a, b) => rec(a) | rec(b),
        Formula::Implies(a, b) => (all & !rec(a)) | rec(b),
        Formula::Iff(a, b) => all & !(rec(a) ^ rec(b)),
        Formula::Box(g) => box_of(succ, rec(g)),
        Formula::Diamond(g) => diamond_of(succ, rec(g)),
    }
}

#[derive(Clone, Copy, Debug)]
enum Op {
    Atom(usize),
    Top,
    Bot,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Box,
    Diamond,
}

/// A formula compiled to postfix form over numbered atom slots, for
/// evaluating one formula under many valuations.
#[derive(Clone, Debug)]
pub struct Program {
    atoms: Vec<String>,
    ops: Vec<Op>,
}

impl Program {
    /// Atom slots follow `f.atoms()` order (sorted by name).
    pub fn compile(f: &Formula) -> Self {
        let atoms: Vec<String> = f.atoms().into_iter().collect();
        let mut ops = Vec::with_capacity(f.size());
        emit(f, &atoms, &mut ops);
        Program { atoms, ops }
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    /// Truth set under the atom sets `slots` (indexed like [`Program::atoms`]).
    pub fn run(&self, succ: &[WorldSet], all: WorldSet, slots: &[WorldSet], stack: &mut Vec<WorldSet>) -> WorldSet {
        stack.clear();
        for op in &self.ops {
            let v = match *op {
                Op::Atom(i) => slots[i],
                Op::Top => all,
                Op::Bot => 0,
                Op::Not => all & !stack.pop().unwrap(),
                Op::Box => box_of(succ, stack.pop().unwrap()),
                Op::Diamond => diamond_of(succ, stack.pop().unwrap()),
                binary => {
                    let b = stack.pop().unwrap();
                    let a = stack.pop().unwrap();
                    match binary {
                        Op::And => a & b,
                        Op::Or => a | b,
                        Op::Implies => (all & !a) | b,
                        Op::Iff => all & !(a ^ b),
                        _ => unreachable!(),
                    }
                }
            };
            stack.push(v);
        }
        stack.pop().unwrap()
    }
}

fn emit(f: &Formula, atoms: &[String], ops: &mut Vec<Op>) {
    match f {
        Formula::Atom(name) => ops.push(Op::Atom(atoms.binary_search(name).unwrap())),
        Formula::Top => ops.push(Op::Top),
        Formula::Bot => ops.push(Op::Bot),
        Formula::Not(g) | Formula::Box(g) | Formula::Diamond(g) => {
            emit(g, atoms, ops);
            ops.push(match f {
                Formula::Not(_) => Op::Not,
                Formula::Box(_) => Op::Box,
                _ => Op::Diamond,
            });
        }
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            emit(a, atoms, ops);
            emit(b, atoms, ops);
            ops.push(match f {
                Formula::And(..) => Op::And,
                Formula::Or(..) => Op::Or,
                Formula::Implies(..) => Op::Implies,
                _ => Op::Iff,
            });
        }
    }
}

/// Truth sets of every corpus formula in `m`, in corpus order.
pub fn evaluate_corpus(m: &Model, corpus: &FormulaCorpus) -> Vec<WorldSet> {
    let all = m.frame().all();
    let succ = m.frame().successor_masks();
    let atom_sets: Vec<WorldSet> = corpus.atoms().iter().map(|a| m.atom_set(a)).collect();
    let mut out: Vec<WorldSet> = Vec::with_capacity(corpus.len());
    for node in corpus.nodes() {
        let v = match *node {
            CorpusNode::Atom(i) => atom_sets[i],
            CorpusNode::Top => all,
            CorpusNode::Bot => 0,
            CorpusNode::Not(c) => all & !out[c],
            CorpusNode::Box(c) => box_of(succ, out[c]),
            CorpusNode::Diamond(c) => diamond_of(succ, out[c]),
            CorpusNode::And(a, b) => out[a] & out[b],
            CorpusNode::Or(a, b) => out[a] | out[b],
            CorpusNode::Implies(a, b) => (all & !out[a]) | out[b],
            CorpusNode::Iff(a, b) => all & !(out[a] ^ out[b]),
        };
        out.push(v);
    }
    out
}
