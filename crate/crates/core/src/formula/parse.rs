use std::fmt;

use super::catalog::{axiom, AxiomName};
use super::Formula;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    /// Tokens that would have been accepted at this position.
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at {}:{}: found {}, expected one of: {}",
            self.line,
            self.column,
            self.found,
            self.expected.join(", ")
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Not,
    And,
    Or,
    Implies,
    Iff,
    Box,
    Diamond,
    LParen,
    RParen,
    True,
    False,
    Ident(String),
    AxiomRef(String),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Not => "'~'".into(),
            Tok::And => "'&'".into(),
            Tok::Or => "'|'".into(),
            Tok::Implies => "'->'".into(),
            Tok::Iff => "'<->'".into(),
            Tok::Box => "'[]'".into(),
            Tok::Diamond => "'<>'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::True => "'true'".into(),
            Tok::False => "'false'".into(),
            Tok::Ident(name) => format!("identifier '{name}'"),
            Tok::AxiomRef(name) => format!("axiom reference '@{name}'"),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

const OPERAND_START: &[&str] = &["'~'", "'[]'", "'<>'", "'('", "'true'", "'false'", "identifier"];

fn lex(text: &str, allow_axioms: bool) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (tline, tcol) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        let (tok, len) = if rest.starts_with("<->") {
            (Tok::Iff, 3)
        } else if rest.starts_with("->") {
            (Tok::Implies, 2)
        } else if rest.starts_with("[]") {
            (Tok::Box, 2)
        } else if rest.starts_with("<>") {
            (Tok::Diamond, 2)
        } else {
            match c {
                '~' => (Tok::Not, 1),
                '&' => (Tok::And, 1),
                '|' => (Tok::Or, 1),
                '(' => (Tok::LParen, 1),
                ')' => (Tok::RParen, 1),
                '@' if allow_axioms => {
                    let mut j = i + 1;
                    while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '.') {
                        j += 1;
                    }
                    let name: String = chars[i + 1..j].iter().collect();
                    (Tok::AxiomRef(name), j - i)
                }
                c if c.is_ascii_alphabetic() => {
                    let mut j = i;
                    while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                        j += 1;
                    }
                    let word: String = chars[i..j].iter().collect();
                    let tok = match word.as_str() {
                        "true" => Tok::True,
                        "false" => Tok::False,
                        _ => Tok::Ident(word),
                    };
                    (tok, j - i)
                }
                other => {
                    let mut expected: Vec<String> = OPERAND_START.iter().map(|s| s.to_string()).collect();
                    expected.extend(["'&'", "'|'", "'->'", "'<->'", "')'"].map(String::from));
                    return Err(ParseError {
                        line: tline,
                        column: tcol,
                        expected,
                        found: format!("character {other:?}"),
                    });
                }
            }
        };
        out.push(Spanned { tok, line: tline, column: tcol });
        i += len;
        column += len;
    }
    out.push(Spanned { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.pos].tok.clone();
        if tok != Tok::End {
            self.pos += 1;
        }
        tok
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let here = &self.toks[self.pos];
        ParseError {
            line: here.line,
            column: here.column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: here.tok.describe(),
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.imp()?;
        if *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.iff()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let rhs = self.imp()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            acc = Formula::or(acc, self.and()?);
        }
        Ok(acc)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let here = self.pos;
        match self.bump() {
            Tok::Not => Ok(Formula::not(self.unary()?)),
            Tok::Box => Ok(Formula::boxed(self.unary()?)),
            Tok::Diamond => Ok(Formula::diamond(self.unary()?)),
            Tok::True => Ok(Formula::Top),
            Tok::False => Ok(Formula::Bot),
            Tok::Ident(name) => Ok(Formula::Atom(name)),
            Tok::AxiomRef(name) => match name.parse::<AxiomName>() {
                Ok(ax) => Ok(axiom(ax)),
                Err(_) => {
                    self.pos = here;
                    Err(self.error(&["a cataloged axiom name after '@'"]))
                }
            },
            Tok::LParen => {
                let inner = self.iff()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&["')'", "'&'", "'|'", "'->'", "'<->'"]));
                }
                self.bump();
                Ok(inner)
            }
            Tok::RParen | Tok::And | Tok::Or | Tok::Implies | Tok::Iff | Tok::End => {
                self.pos = here;
                Err(self.error(OPERAND_START))
            }
        }
    }
}

fn parse_impl(text: &str, allow_axioms: bool) -> Result<Formula, ParseError> {
    let toks = lex(text, allow_axioms)?;
    let mut parser = Parser { toks, pos: 0 };
    let f = parser.iff()?;
    if *parser.peek() != Tok::End {
        return Err(parser.error(&["'&'", "'|'", "'->'", "'<->'", "end of input"]));
    }
    Ok(f)
}

/// Parses the formula grammar: `~ [] <>` bind tightest, then `&`, `|`, `->`
/// and `<->`; `->` and `<->` associate to the right.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    parse_impl(text, false)
}

/// Like [`parse`], additionally expanding `@Name` references to cataloged axioms.
pub fn parse_with_axioms(text: &str) -> Result<Formula, ParseError> {
    parse_impl(text, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(name: &str) -> Formula {
        Formula::atom(name)
    }

    #[test]
    fn axiom_shapes() {
        assert_eq!(
            parse("[]p -> p").unwrap(),
            Formula::implies(Formula::boxed(p("p")), p("p"))
        );
        assert_eq!(
            parse("<>[]p -> []<>p").unwrap(),
            Formula::implies(
                Formula::diamond(Formula::boxed(p("p"))),
                Formula::boxed(Formula::diamond(p("p")))
            )
        );
        assert_eq!(
            parse("~<>p <-> []~p").unwrap(),
            Formula::iff(
                Formula::not(Formula::diamond(p("p"))),
                Formula::boxed(Formula::not(p("p")))
            )
        );
    }

    #[test]
    fn associativity() {
        assert_eq!(
            parse("p -> q -> r").unwrap(),
            Formula::implies(p("p"), Formula::implies(p("q"), p("r")))
        );
        assert_eq!(
            parse("p <-> q <-> r").unwrap(),
            Formula::iff(p("p"), Formula::iff(p("q"), p("r")))
        );
        assert_eq!(
            parse("p & q & r").unwrap(),
            Formula::and(Formula::and(p("p"), p("q")), p("r"))
        );
        assert_eq!(
            parse("p | q & r").unwrap(),
            Formula::or(p("p"), Formula::and(p("q"), p("r")))
        );
        assert_eq!(
            parse("~p & q").unwrap(),
            Formula::and(Formula::not(p("p")), p("q"))
        );
    }

    #[test]
    fn errors_carry_position_and_expectations() {
        let err = parse("p &\n  -> q").unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        assert!(err.expected.iter().any(|e| e == "identifier"));

        let err = parse("(p | q").unwrap_err();
        assert_eq!((err.line, err.column), (1, 7));
        assert!(err.expected.contains(&"')'".to_string()));

        let err = parse("p q").unwrap_err();
        assert_eq!(err.column, 3);

        assert!(parse("").is_err());
        assert!(parse("p # q").is_err());
        assert!(parse("@Löb").is_err());
    }

    #[test]
    fn axiom_references() {
        assert_eq!(parse_with_axioms("@4").unwrap(), parse("[]p -> [][]p").unwrap());
        assert_eq!(
            parse_with_axioms("~@Löb").unwrap(),
            Formula::not(parse("[]([]p -> p) -> []p").unwrap())
        );
        assert_eq!(parse_with_axioms("@.2").unwrap(), parse("<>[]p -> []<>p").unwrap());
        assert!(parse_with_axioms("@Nope").is_err());
    }
}
