//! Polynomial text grammar:
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*      divisor must be a nonzero constant
//! factor := atom ['^' integer]
//! atom   := integer | identifier | '(' expr ')'
//! ```

use num_bigint::BigInt;

use crate::arith::{Rational, Rationals};

use super::{MpolyError, MultiPoly};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: &'a [&'a str],
    line: usize,
    end_col: usize,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> MpolyError {
    MpolyError::Parse { line, column, message: message.into() }
}

fn tokenize(text: &str, line: usize) -> Result<Vec<(Tok, usize)>, MpolyError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Num(s.parse().expect("digits")), col));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return Err(err(line, col, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

impl Parser<'_> {
    fn n(&self) -> usize {
        self.vars.len()
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly<Rationals>, MpolyError> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if neg {
            acc = -&acc;
        }
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly<Rationals>, MpolyError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let col = self.col();
                self.pos += 1;
                let d = self.factor()?;
                if !d.is_unit() {
                    return Err(err(self.line, col, "division only by nonzero constants"));
                }
                acc = acc.scale(&d.terms()[0].1.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly<Rationals>, MpolyError> {
        let base = self.atom()?;
        if self.eat('^') {
            let col = self.col();
            match self.toks.get(self.pos) {
                Some((Tok::Num(e), _)) => {
                    let e: u32 = e
                        .try_into()
                        .map_err(|_| err(self.line, col, "exponent too large"))?;
                    self.pos += 1;
                    Ok(base.pow(e))
                }
                _ => Err(err(self.line, col, "expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly<Rationals>, MpolyError> {
        let col = self.col();
        let tok = self.toks.get(self.pos).map(|(t, _)| t.clone());
        match tok {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(Rationals, self.n(), Rational::from_integer(v)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(MultiPoly::var(Rationals, self.n(), i)),
                    None => Err(err(self.line, col, format!("unknown variable '{name}'"))),
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(err(self.line, self.col(), "expected ')'"));
                }
                Ok(e)
            }
            Some(Tok::Sym(c)) => Err(err(self.line, col, format!("unexpected '{c}'"))),
            None => Err(err(self.line, col, "unexpected end of input")),
        }
    }
}

/// Parses one polynomial over `Q` in the given variables; errors report
/// `line` as given and 1-based columns.
pub fn parse_poly_at_line(text: &str, vars: &[&str], line: usize) -> Result<MultiPoly<Rationals>, MpolyError> {
    let toks = tokenize(text, line)?;
    let mut p = Parser { toks, pos: 0, vars, line, end_col: text.chars().count() + 1 };
    if p.toks.is_empty() {
        return Err(err(line, 1, "empty expression"));
    }
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(err(line, p.col(), "trailing input"));
    }
    Ok(e)
}

pub fn parse_poly(text: &str, vars: &[&str]) -> Result<MultiPoly<Rationals>, MpolyError> {
    parse_poly_at_line(text, vars, 1)
}
