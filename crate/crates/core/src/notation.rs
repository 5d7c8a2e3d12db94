//! ASCII notation for forms and sums.
//!
//! ```text
//! expr := form ("+" form)*
//! form := "inf" | "oinf" | "moon" | "0" | "*" | "*" INT | "{" list "|" list "}"
//! list := form ("," form)*
//! ```
//!
//! Whitespace is insignificant. The printer emits the sugar `0`, `*`, `*k`
//! and `moon` only when a form is literally that form.

use std::fmt;

use crate::error::{Error, Result};
use crate::forms::{make_position, make_sum, nimber, Form, Kind, Sum, SumPosition};

/// Largest `k` accepted in a `*k` literal.
pub const MAX_NIMBER_LITERAL: u32 = 4096;

/// Parsed syntax before interning.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormExpr {
    Inf,
    OInf,
    Moon,
    Nimber(u32),
    Braces(Vec<FormExpr>, Vec<FormExpr>),
    Sum(Vec<FormExpr>),
}

/// A parsed expression: one form, or a sum of two or more positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Form(Form),
    Sum(SumPosition),
}

impl Expr {
    pub fn components(&self) -> &[Form] {
        match self {
            Expr::Form(g) => std::slice::from_ref(g),
            Expr::Sum(s) => s.components(),
        }
    }

    pub fn as_form(&self) -> Option<&Form> {
        match self {
            Expr::Form(g) => Some(g),
            Expr::Sum(_) => None,
        }
    }
}

impl FormExpr {
    /// Interns the expression.
    pub fn build(&self) -> Result<Expr> {
        match self {
            FormExpr::Sum(terms) => {
                let forms = terms
                    .iter()
                    .map(FormExpr::build_form)
                    .collect::<Result<Vec<_>>>()?;
                Ok(match make_sum(&forms)? {
                    Sum::Absorbed(t) => Expr::Form(t),
                    Sum::Position(p) if p.len() == 1 => Expr::Form(p.components()[0].clone()),
                    Sum::Position(p) => Expr::Sum(p),
                })
            }
            other => Ok(Expr::Form(other.build_form()?)),
        }
    }

    fn build_form(&self) -> Result<Form> {
        match self {
            FormExpr::Inf => Ok(Form::inf()),
            FormExpr::OInf => Ok(Form::oinf()),
            FormExpr::Moon => Ok(Form::moon()),
            FormExpr::Nimber(k) => Ok(nimber(*k)),
            FormExpr::Braces(l, r) => {
                let l = l.iter().map(FormExpr::build_form).collect::<Result<Vec<_>>>()?;
                let r = r.iter().map(FormExpr::build_form).collect::<Result<Vec<_>>>()?;
                make_position(l, r)
            }
            FormExpr::Sum(_) => unreachable!("sums only occur at the top level"),
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, at: usize, message: impl Into<String>) -> Error {
        let before = &self.text[..at];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(found) if found == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(found) => Err(self.error(self.pos, format!("expected '{c}', found '{found}'"))),
            None => Err(self.error(self.pos, format!("expected '{c}', found end of input"))),
        }
    }

    fn expr(&mut self) -> Result<FormExpr> {
        let mut terms = vec![self.form()?];
        while self.peek() == Some('+') {
            self.pos += 1;
            terms.push(self.form()?);
        }
        if let Some(c) = self.peek() {
            return Err(self.error(self.pos, format!("unexpected '{c}'")));
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            FormExpr::Sum(terms)
        })
    }

    fn list(&mut self, close: char) -> Result<Vec<FormExpr>> {
        if self.peek() == Some(close) {
            return Err(Error::EmptySide);
        }
        let mut items = vec![self.form()?];
        while self.peek() == Some(',') {
            self.pos += 1;
            items.push(self.form()?);
        }
        Ok(items)
    }

    fn integer(&mut self) -> Result<Option<u32>> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.text[start..]
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        if digits == 0 {
            return Ok(None);
        }
        self.pos += digits;
        match self.text[start..self.pos].parse::<u32>() {
            Ok(k) if k <= MAX_NIMBER_LITERAL => Ok(Some(k)),
            _ => Err(self.error(
                start,
                format!("nimber literal exceeds {MAX_NIMBER_LITERAL}"),
            )),
        }
    }

    fn form(&mut self) -> Result<FormExpr> {
        let start = self.pos;
        match self.peek() {
            Some('{') => {
                self.pos += 1;
                let left = self.list('|')?;
                self.expect('|')?;
                let right = self.list('}')?;
                self.expect('}')?;
                Ok(FormExpr::Braces(left, right))
            }
            Some('*') => {
                self.pos += 1;
                Ok(FormExpr::Nimber(self.integer()?.unwrap_or(1)))
            }
            Some(c) if c.is_ascii_digit() => {
                let at = self.pos;
                match self.integer()? {
                    Some(0) => Ok(FormExpr::Nimber(0)),
                    _ => Err(self.error(at, "only the integer 0 is a form; use *k for nimbers")),
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let at = self.pos;
                let word: String = self.text[at..]
                    .chars()
                    .take_while(|c| c.is_ascii_alphanumeric() || *c == '_')
                    .collect();
                self.pos += word.len();
                match word.as_str() {
                    "inf" => Ok(FormExpr::Inf),
                    "oinf" => Ok(FormExpr::OInf),
                    "moon" => Ok(FormExpr::Moon),
                    _ => Err(self.error(at, format!("unknown name '{word}'"))),
                }
            }
            Some(c) => Err(self.error(self.pos, format!("unexpected '{c}'"))),
            None => Err(self.error(start.max(self.pos), "unexpected end of input")),
        }
    }
}

/// Parses the syntax without interning anything.
pub fn parse_syntax(text: &str) -> Result<FormExpr> {
    Parser { text, pos: 0 }.expr()
}

pub fn parse(text: &str) -> Result<Expr> {
    parse_syntax(text)?.build()
}

/// Parses text that must denote a single form.
pub fn parse_form(text: &str) -> Result<Form> {
    match parse(text)? {
        Expr::Form(g) => Ok(g),
        Expr::Sum(_) => Err(Error::Syntax {
            line: 1,
            column: 1,
            message: "expected a single form, found a sum".into(),
        }),
    }
}

fn write_form(g: &Form, out: &mut String) {
    match g.kind() {
        Kind::Inf => out.push_str("inf"),
        Kind::OInf => out.push_str("oinf"),
        Kind::Position => {
            if let Some(k) = g.as_nimber() {
                match k {
                    0 => out.push('0'),
                    1 => out.push('*'),
                    k => {
                        out.push('*');
                        out.push_str(&k.to_string());
                    }
                }
            } else if g.is_moon_literal() {
                out.push_str("moon");
            } else {
                out.push('{');
                for (i, o) in g.left().iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    write_form(o, out);
                }
                out.push('|');
                for (i, o) in g.right().iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    write_form(o, out);
                }
                out.push('}');
            }
        }
    }
}

pub fn print_form(g: &Form) -> String {
    let mut out = String::new();
    write_form(g, &mut out);
    out
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_form(self))
    }
}

impl fmt::Display for SumPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components().iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Form(g) => write!(f, "{g}"),
            Expr::Sum(s) => write!(f, "{s}"),
        }
    }
}
