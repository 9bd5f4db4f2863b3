//! Deterministic exhaustive formula enumeration, ordered by syntactic size.
//!
//! Every formula is stored both as a tree and as a node of a shared DAG whose
//! children precede it, so a model can evaluate the whole corpus with one
//! operation per formula.

use super::Formula;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorpusNode {
    Atom(usize),
    Top,
    Bot,
    Not(usize),
    Box(usize),
    Diamond(usize),
    And(usize, usize),
    Or(usize, usize),
    Implies(usize, usize),
    Iff(usize, usize),
}

#[derive(Clone, Debug)]
pub struct FormulaCorpus {
    atoms: Vec<String>,
    nodes: Vec<CorpusNode>,
    formulas: Vec<Formula>,
    depths: Vec<usize>,
}

impl FormulaCorpus {
    /// All formulas over `atoms` with at most `max_size` syntax nodes and
    /// modal depth at most `max_depth`, smallest first.
    pub fn enumerate(atoms: &[&str], max_size: usize, max_depth: usize) -> Self {
        let mut corpus = FormulaCorpus {
            atoms: atoms.iter().map(|a| a.to_string()).collect(),
            nodes: Vec::new(),
            formulas: Vec::new(),
            depths: Vec::new(),
        };
        let mut by_size: Vec<Vec<usize>> = vec![Vec::new(); max_size + 1];
        if max_size == 0 {
            return corpus;
        }
        for (i, name) in atoms.iter().enumerate() {
            let id = corpus.push(CorpusNode::Atom(i), Formula::atom(*name), 0);
            by_size[1].push(id);
        }
        by_size[1].push(corpus.push(CorpusNode::Top, Formula::Top, 0));
        by_size[1].push(corpus.push(CorpusNode::Bot, Formula::Bot, 0));

        for size in 2..=max_size {
            let mut fresh = Vec::new();
            for &c in &by_size[size - 1] {
                let (f, d) = (corpus.formulas[c].clone(), corpus.depths[c]);
                fresh.push((CorpusNode::Not(c), Formula::not(f.clone()), d));
                if d < max_depth {
                    fresh.push((CorpusNode::Box(c), Formula::boxed(f.clone()), d + 1));
                    fresh.push((CorpusNode::Diamond(c), Formula::diamond(f), d + 1));
                }
            }
            for left_size in 1..size - 1 {
                let right_size = size - 1 - left_size;
                for &a in &by_size[left_size] {
                    for &b in &by_size[right_size] {
                        let (fa, fb) = (&corpus.formulas[a], &corpus.formulas[b]);
                        let d = corpus.depths[a].max(corpus.depths[b]);
                        fresh.push((CorpusNode::And(a, b), Formula::and(fa.clone(), fb.clone()), d));
                        fresh.push((CorpusNode::Or(a, b), Formula::or(fa.clone(), fb.clone()), d));
                        fresh.push((
                            CorpusNode::Implies(a, b),
                            Formula::implies(fa.clone(), fb.clone()),
                            d,
                        ));
                        fresh.push((CorpusNode::Iff(a, b), Formula::iff(fa.clone(), fb.clone()), d));
                    }
                }
            }
            for (node, f, d) in fresh {
                let id = corpus.push(node, f, d);
                by_size[size].push(id);
            }
        }
        corpus
    }

    fn push(&mut self, node: CorpusNode, f: Formula, depth: usize) -> usize {
        self.nodes.push(node);
        self.formulas.push(f);
        self.depths.push(depth);
        self.nodes.len() - 1
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn nodes(&self) -> &[CorpusNode] {
        &self.nodes
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }
}
