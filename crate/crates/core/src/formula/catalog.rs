//! Named axioms and the theories built from them.
//!
//! Schema letters are instantiated as the atoms `p` and, for the two-letter
//! schemas K, .3 and Dir, `q`. Uniform substitution recovers the schemas.

use std::fmt;
use std::str::FromStr;

use super::{parse, Formula};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown {kind} name {name:?}")]
pub struct UnknownName {
    pub kind: &'static str,
    pub name: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomName {
    K,
    Dual,
    S,
    Four,
    Two,
    Five,
    M,
    W5,
    Three,
    Dm,
    Grz,
    Lob,
    H,
    Dir,
}

impl AxiomName {
    pub const ALL: [AxiomName; 14] = [
        AxiomName::K,
        AxiomName::Dual,
        AxiomName::S,
        AxiomName::Four,
        AxiomName::Two,
        AxiomName::Five,
        AxiomName::M,
        AxiomName::W5,
        AxiomName::Three,
        AxiomName::Dm,
        AxiomName::Grz,
        AxiomName::Lob,
        AxiomName::H,
        AxiomName::Dir,
    ];

    /// The axioms that lie outside S4.2 and are refuted over its frames.
    pub const BEYOND_S4_2: [AxiomName; 8] = [
        AxiomName::Five,
        AxiomName::M,
        AxiomName::W5,
        AxiomName::Three,
        AxiomName::Dm,
        AxiomName::Grz,
        AxiomName::Lob,
        AxiomName::H,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AxiomName::K => "K",
            AxiomName::Dual => "Dual",
            AxiomName::S => "S",
            AxiomName::Four => "4",
            AxiomName::Two => ".2",
            AxiomName::Five => "5",
            AxiomName::M => "M",
            AxiomName::W5 => "W5",
            AxiomName::Three => ".3",
            AxiomName::Dm => "Dm",
            AxiomName::Grz => "Grz",
            AxiomName::Lob => "Löb",
            AxiomName::H => "H",
            AxiomName::Dir => "Dir",
        }
    }

    /// Concrete syntax of the instantiated schema.
    pub fn text(self) -> &'static str {
        match self {
            AxiomName::K => "[](p -> q) -> ([]p -> []q)",
            AxiomName::Dual => "~<>p <-> []~p",
            AxiomName::S => "[]p -> p",
            AxiomName::Four => "[]p -> [][]p",
            AxiomName::Two => "<>[]p -> []<>p",
            AxiomName::Five => "<>[]p -> p",
            AxiomName::M => "[]<>p -> <>[]p",
            AxiomName::W5 => "<>[]p -> (p -> []p)",
            AxiomName::Three => "<>p & <>q -> <>(p & <>q) | <>(p & q) | <>(q & <>p)",
            AxiomName::Dm => "[]([](p -> []p) -> p) -> (<>[]p -> p)",
            AxiomName::Grz => "[]([](p -> []p) -> p) -> p",
            AxiomName::Lob => "[]([]p -> p) -> []p",
            AxiomName::H => "p -> [](<>p -> p)",
            AxiomName::Dir => "<>[]p & <>[]q -> <>[](p & q)",
        }
    }
}

impl fmt::Display for AxiomName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AxiomName {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Lob" | "Loeb" | "Löb" => return Ok(AxiomName::Lob),
            "Dum" => return Ok(AxiomName::Dm),
            "T" => return Ok(AxiomName::S),
            _ => {}
        }
        AxiomName::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| UnknownName { kind: "axiom", name: s.to_string() })
    }
}

pub fn axiom(name: AxiomName) -> Formula {
    parse(name.text()).expect("catalog axioms parse")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoryName {
    K,
    K4,
    S4,
    S4_1,
    S4_2,
    S4_2_1,
    S4_3,
    S4W5,
    S5,
    Dm,
    Dm2,
    Grz,
    GL,
    K4H,
}

impl TheoryName {
    pub const ALL: [TheoryName; 14] = [
        TheoryName::K,
        TheoryName::K4,
        TheoryName::S4,
        TheoryName::S4_1,
        TheoryName::S4_2,
        TheoryName::S4_2_1,
        TheoryName::S4_3,
        TheoryName::S4W5,
        TheoryName::S5,
        TheoryName::Dm,
        TheoryName::Dm2,
        TheoryName::Grz,
        TheoryName::GL,
        TheoryName::K4H,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoryName::K => "K",
            TheoryName::K4 => "K4",
            TheoryName::S4 => "S4",
            TheoryName::S4_1 => "S4.1",
            TheoryName::S4_2 => "S4.2",
            TheoryName::S4_2_1 => "S4.2.1",
            TheoryName::S4_3 => "S4.3",
            TheoryName::S4W5 => "S4W5",
            TheoryName::S5 => "S5",
            TheoryName::Dm => "Dm",
            TheoryName::Dm2 => "Dm.2",
            TheoryName::Grz => "Grz",
            TheoryName::GL => "GL",
            TheoryName::K4H => "K4H",
        }
    }

    /// The theory this one extends in the table, and the axioms it adds.
    fn definition(self) -> (Option<TheoryName>, &'static [AxiomName]) {
        use AxiomName as A;
        match self {
            TheoryName::K => (None, &[A::K, A::Dual]),
            TheoryName::K4 => (Some(TheoryName::K), &[A::Four]),
            TheoryName::S4 => (Some(TheoryName::K4), &[A::S]),
            TheoryName::S4_1 => (Some(TheoryName::S4), &[A::M]),
            TheoryName::S4_2 => (Some(TheoryName::S4), &[A::Two]),
            TheoryName::S4_2_1 => (Some(TheoryName::S4), &[A::Two, A::M]),
            TheoryName::S4_3 => (Some(TheoryName::S4), &[A::Three]),
            TheoryName::S4W5 => (Some(TheoryName::S4), &[A::W5]),
            TheoryName::S5 => (Some(TheoryName::S4), &[A::Five]),
            TheoryName::Dm => (Some(TheoryName::S4), &[A::Dm]),
            TheoryName::Dm2 => (Some(TheoryName::S4_2), &[A::Dm]),
            TheoryName::Grz => (Some(TheoryName::K), &[A::Grz]),
            TheoryName::GL => (Some(TheoryName::K4), &[A::Lob]),
            TheoryName::K4H => (Some(TheoryName::K4), &[A::H]),
        }
    }
}

impl fmt::Display for TheoryName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoryName {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoryName::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| UnknownName { kind: "theory", name: s.to_string() })
    }
}

/// Axiom names of a theory, in catalog order.
pub fn theory_axiom_names(name: TheoryName) -> Vec<AxiomName> {
    let mut out = Vec::new();
    let mut current = Some(name);
    while let Some(t) = current {
        let (base, extra) = t.definition();
        out.extend_from_slice(extra);
        current = base;
    }
    out.sort();
    out.dedup();
    out
}

pub fn theory_axioms(name: TheoryName) -> Vec<Formula> {
    theory_axiom_names(name).into_iter().map(axiom).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::render;

    #[test]
    fn catalog_round_trips() {
        for ax in AxiomName::ALL {
            let f = axiom(ax);
            // the displayed texts keep some redundant parentheses
            assert_eq!(parse(&render(&f)).unwrap(), f, "{ax}");
            assert_eq!(ax.as_str().parse::<AxiomName>().unwrap(), ax);
        }
        assert_eq!("Lob".parse::<AxiomName>().unwrap(), AxiomName::Lob);
        assert!("Q".parse::<AxiomName>().is_err());
    }

    #[test]
    fn displayed_axioms() {
        assert_eq!(render(&axiom(AxiomName::K)), "[](p -> q) -> []p -> []q");
        assert_eq!(render(&axiom(AxiomName::Four)), "[]p -> [][]p");
        assert_eq!(render(&axiom(AxiomName::Lob)), "[]([]p -> p) -> []p");
        assert_eq!(render(&axiom(AxiomName::Dir)), "<>[]p & <>[]q -> <>[](p & q)");
    }

    #[test]
    fn axiom_atoms_and_depths() {
        let atoms: Vec<_> = axiom(AxiomName::Three).atoms().into_iter().collect();
        assert_eq!(atoms, ["p", "q"]);
        assert_eq!(axiom(AxiomName::Grz).modal_depth(), 3);
        assert_eq!(axiom(AxiomName::Dm).modal_depth(), 3);
        assert_eq!(axiom(AxiomName::K).modal_depth(), 1);
    }

    #[test]
    fn theory_table() {
        use AxiomName as A;
        assert_eq!(
            theory_axiom_names(TheoryName::S4_2),
            [A::K, A::Dual, A::S, A::Four, A::Two]
        );
        assert_eq!(
            theory_axiom_names(TheoryName::S5),
            [A::K, A::Dual, A::S, A::Four, A::Five]
        );
        assert_eq!(theory_axiom_names(TheoryName::K), [A::K, A::Dual]);
        assert_eq!(
            theory_axiom_names(TheoryName::Dm2),
            [A::K, A::Dual, A::S, A::Four, A::Two, A::Dm]
        );
        assert_eq!(theory_axiom_names(TheoryName::GL), [A::K, A::Dual, A::Four, A::Lob]);
        assert_eq!(theory_axiom_names(TheoryName::Grz), [A::K, A::Dual, A::Grz]);
        assert_eq!(theory_axioms(TheoryName::K4).len(), 3);
        for t in TheoryName::ALL {
            assert_eq!(t.as_str().parse::<TheoryName>().unwrap(), t);
        }
        assert!("S6".parse::<TheoryName>().is_err());
    }
}
