//! Expressions over the generators.
//!
//! ```text
//! expr   := sign? term (("+" | "-") term)*
//! term   := coeff? factor*          (at least one of the two)
//! factor := atom "^*"?
//! atom   := "s(" path ")" | "u(" vertex "," gelt ")" | "(" expr ")"
//! path   := vertex | edge ("." edge)*
//! coeff  := int | int "i" | "i" | int ("+" | "-") int "i"
//! ```
//!
//! A term with no factors is a multiple of the unit, so `(2+3i) s(a)` reads
//! back what [`format_element`] prints.

use ep_core::algebra::{Element, EpAlgebra};
use ep_core::rewrite::Symbol;
use ep_core::{Coefficient, Gaussian};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Gaussian,
    pub factors: Vec<Factor>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub atom: Atom,
    pub star: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    S(String),
    U(String, String),
    Group(Expr),
}

struct Parser<'s> {
    src: &'s str,
    pos: usize,
}

impl<'s> Parser<'s> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, CliError> {
        Err(CliError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn rest(&self) -> &'s str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), CliError> {
        if self.eat(s) {
            Ok(())
        } else {
            self.err(format!("expected `{s}`"))
        }
    }

    fn int(&mut self) -> Option<i64> {
        let digits: usize = self.rest().chars().take_while(|c| c.is_ascii_digit()).count();
        if digits == 0 {
            return None;
        }
        let n = self.rest()[..digits].parse().ok()?;
        self.pos += digits;
        Some(n)
    }

    /// Whether the text at the cursor is `i` standing alone.
    fn at_unit_i(&self) -> bool {
        let r = self.rest();
        r.starts_with('i') && !r[1..].starts_with(|c: char| c.is_alphanumeric() || c == '_' || c == '(')
    }

    fn coeff(&mut self) -> Result<Option<Gaussian>, CliError> {
        self.skip_ws();
        if self.at_unit_i() {
            self.pos += 1;
            return Ok(Some(Gaussian::I));
        }
        let start = self.pos;
        let Some(n) = self.int() else { return Ok(None) };
        if self.rest().starts_with('i') {
            self.pos += 1;
            return Ok(Some(Gaussian::new(0, n)));
        }
        // `int ("+" | "-") int "i"`, written without spaces.
        let save = self.pos;
        if let Some(sign) = self.rest().chars().next().filter(|c| *c == '+' || *c == '-') {
            self.pos += 1;
            let m = match self.int() {
                Some(m) => Some(m),
                None if self.rest().starts_with('i') => Some(1),
                None => None,
            };
            if let Some(m) = m {
                if self.rest().starts_with('i') {
                    self.pos += 1;
                    let im = if sign == '-' { -m } else { m };
                    return Ok(Some(Gaussian::new(n, im)));
                }
            }
            self.pos = save;
        }
        let _ = start;
        Ok(Some(Gaussian::new(n, 0)))
    }

    /// Text up to the first of `stops` at bracket depth zero.
    fn until(&mut self, stops: &[char]) -> Result<String, CliError> {
        let mut depth = 0i32;
        for (i, c) in self.rest().char_indices() {
            match c {
                '[' => depth += 1,
                ']' => depth -= 1,
                c if depth == 0 && stops.contains(&c) => {
                    let text = self.rest()[..i].trim().to_string();
                    self.pos += i;
                    return Ok(text);
                }
                _ => {}
            }
        }
        self.err(format!("unterminated argument, expected one of {stops:?}"))
    }

    fn atom(&mut self) -> Result<Option<Atom>, CliError> {
        if self.eat("s(") {
            let path = self.until(&[')'])?;
            self.expect(")")?;
            if path.is_empty() {
                return self.err("empty path");
            }
            return Ok(Some(Atom::S(path)));
        }
        if self.eat("u(") {
            let v = self.until(&[','])?;
            self.expect(",")?;
            let g = self.until(&[')'])?;
            self.expect(")")?;
            return Ok(Some(Atom::U(v, g)));
        }
        if self.eat("(") {
            let e = self.expr()?;
            self.expect(")")?;
            return Ok(Some(Atom::Group(e)));
        }
        Ok(None)
    }

    fn term(&mut self, sign: i64) -> Result<Term, CliError> {
        let coeff = self.coeff()?;
        let mut factors = Vec::new();
        while let Some(atom) = self.atom()? {
            let star = self.eat("^*");
            factors.push(Factor { atom, star });
        }
        if coeff.is_none() && factors.is_empty() {
            return self.err("expected a term");
        }
        let c = coeff.unwrap_or(Gaussian::new(1, 0));
        Ok(Term { coeff: if sign < 0 { c.neg() } else { c }, factors })
    }

    fn expr(&mut self) -> Result<Expr, CliError> {
        let mut sign = 1;
        if self.eat("-") {
            sign = -1;
        } else {
            self.eat("+");
        }
        let mut terms = vec![self.term(sign)?];
        loop {
            if self.eat("+") {
                terms.push(self.term(1)?);
            } else if self.eat("-") {
                terms.push(self.term(-1)?);
            } else {
                return Ok(Expr { terms });
            }
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, CliError> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("unexpected input");
    }
    Ok(e)
}

fn eval_atom(alg: &EpAlgebra<'_>, atom: &Atom) -> Result<Element<Gaussian>, CliError> {
    let sys = alg.system();
    Ok(match atom {
        Atom::S(p) => alg.gen_s(&sys.graph().parse_path(p)?),
        Atom::U(v, g) => alg.gen_u(sys.graph().vertex_by_name(v)?, &sys.group().parse(g)?)?,
        Atom::Group(e) => eval(alg, e)?,
    })
}

pub fn eval(alg: &EpAlgebra<'_>, e: &Expr) -> Result<Element<Gaussian>, CliError> {
    let mut sum = alg.zero();
    for t in &e.terms {
        let mut acc = alg.scalar(t.coeff);
        for f in &t.factors {
            let x = eval_atom(alg, &f.atom)?;
            let x = if f.star { alg.adjoint(&x) } else { x };
            acc = alg.mul(&acc, &x)?;
        }
        sum = sum.add(&acc)?;
    }
    Ok(sum)
}

pub fn parse_element(alg: &EpAlgebra<'_>, text: &str) -> Result<Element<Gaussian>, CliError> {
    eval(alg, &parse(text)?)
}

/// The generator word of a term without nested groups.
pub fn term_word(alg: &EpAlgebra<'_>, t: &Term) -> Result<Option<Vec<Symbol>>, CliError> {
    let sys = alg.system();
    let mut word = Vec::new();
    for f in &t.factors {
        let sym = match (&f.atom, f.star) {
            (Atom::S(p), false) => Symbol::S(sys.graph().parse_path(p)?),
            (Atom::S(p), true) => Symbol::SStar(sys.graph().parse_path(p)?),
            (Atom::U(v, g), star) => {
                let v = sys.graph().vertex_by_name(v)?;
                let g = sys.group().parse(g)?;
                if star {
                    Symbol::UStar(v, g)
                } else {
                    Symbol::U(v, g)
                }
            }
            (Atom::Group(_), _) => return Ok(None),
        };
        word.push(sym);
    }
    Ok(Some(word))
}

fn format_coeff(c: &Gaussian) -> String {
    if c.re != 0 && c.im != 0 {
        format!("({c})")
    } else {
        c.to_string()
    }
}

/// Prints the stored terms as `c s(μ) u(v,g) s(ν)^*`, joined by `+`/`-`.
pub fn format_element(alg: &EpAlgebra<'_>, a: &Element<Gaussian>) -> String {
    let mut out = String::new();
    for (i, (t, c)) in a.iter().enumerate() {
        let negative = c.re < 0 || (c.re == 0 && c.im < 0);
        let shown = if negative { c.neg() } else { *c };
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if shown != Gaussian::one() {
            out.push_str(&format_coeff(&shown));
            out.push(' ');
        }
        out.push_str(&alg.format_triple(t));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use ep_core::catalog;

    #[test]
    fn coefficients() {
        let e = parse("2 s(a) - 3i s(b) + (1-2i) u(v,t) + i").unwrap();
        let cs: Vec<Gaussian> = e.terms.iter().map(|t| t.coeff).collect();
        assert_eq!(cs, vec![Gaussian::new(2, 0), Gaussian::new(0, -3), Gaussian::new(1, 0), Gaussian::I]);
        assert!(matches!(e.terms[2].factors[0].atom, Atom::Group(_)));
        assert_eq!(parse("1+2i s(a)").unwrap().terms[0].coeff, Gaussian::new(1, 2));
        assert_eq!(parse("3-i").unwrap().terms[0].coeff, Gaussian::new(3, -1));
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse("s(a"), Err(CliError::Parse { .. })));
        assert!(matches!(parse("s(a) +"), Err(CliError::Parse { pos: 6, .. })));
        assert!(matches!(parse("x"), Err(CliError::Parse { pos: 0, .. })));
    }

    #[test]
    fn evaluation_examples() {
        let sys = catalog::adding_machine();
        let alg = EpAlgebra::new(&sys);
        let v = parse_element(&alg, "s(v)").unwrap();
        assert_eq!(v, alg.gen_s(&sys.graph().parse_path("v").unwrap()));
        let z = parse_element(&alg, "u(v,t) s(a) - s(b)").unwrap();
        assert_eq!(alg.is_zero(&z), Ok(true));
        let ck3 = parse_element(&alg, "s(a)^* s(a)").unwrap();
        assert_eq!(alg.normalize(&ck3), v);
        let vec = parse_element(&alg, "u(v,[2]) - u(v,t) u(v, t)").unwrap();
        assert_eq!(alg.is_zero(&vec), Ok(true));
    }

    #[test]
    fn print_then_parse() {
        let sys = catalog::adding_machine();
        let alg = EpAlgebra::new(&sys);
        let a = parse_element(&alg, "(2+3i) s(a) u(v,t) s(b)^* - i s(b) + 4 u(v,-2) - s(v)").unwrap();
        let n = alg.normalize(&a);
        let printed = format_element(&alg, &n);
        let back = alg.normalize(&parse_element(&alg, &printed).unwrap());
        assert_eq!(back, n);
        assert_eq!(format_element(&alg, &alg.zero()), "0");
    }
}
