use super::Formula;

const IFF: u8 = 1;
const IMPLIES: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const UNARY: u8 = 5;

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => IFF,
        Formula::Implies(..) => IMPLIES,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => UNARY,
    }
}

/// Canonical text with the fewest parentheses the grammar allows.
pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    write(f, &mut out);
    out
}

fn write_wrapped(f: &Formula, parens: bool, out: &mut String) {
    if parens {
        out.push('(');
        write(f, out);
        out.push(')');
    } else {
        write(f, out);
    }
}

fn write_binary(a: &Formula, op: &str, b: &Formula, prec: u8, right_assoc: bool, out: &mut String) {
    let (pa, pb) = (precedence(a), precedence(b));
    let (left_parens, right_parens) = if right_assoc {
        (pa <= prec, pb < prec)
    } else {
        (pa < prec, pb <= prec)
    };
    write_wrapped(a, left_parens, out);
    out.push(' ');
    out.push_str(op);
    out.push(' ');
    write_wrapped(b, right_parens, out);
}

fn write(f: &Formula, out: &mut String) {
    match f {
        Formula::Atom(name) => out.push_str(name),
        Formula::Top => out.push_str("true"),
        Formula::Bot => out.push_str("false"),
        Formula::Not(g) | Formula::Box(g) | Formula::Diamond(g) => {
            out.push_str(match f {
                Formula::Not(_) => "~",
                Formula::Box(_) => "[]",
                _ => "<>",
            });
            write_wrapped(g, precedence(g) < UNARY, out);
        }
        Formula::And(a, b) => write_binary(a, "&", b, AND, false, out),
        Formula::Or(a, b) => write_binary(a, "|", b, OR, false, out),
        Formula::Implies(a, b) => write_binary(a, "->", b, IMPLIES, true, out),
        Formula::Iff(a, b) => write_binary(a, "<->", b, IFF, true, out),
    }
}
