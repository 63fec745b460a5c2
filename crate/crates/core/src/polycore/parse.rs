//! Polynomial text format.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Division is only accepted by a nonzero constant, which makes `p/q`
//! rational literals fall out of the grammar. Identifiers are
//! `[A-Za-z_][A-Za-z0-9_']*`. The printer in [`MultiPoly`]'s `Display`
//! emits a subset of this grammar, so printing and re-parsing in the same
//! ring is the identity.

use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::{MultiPoly, Ring};
use super::rat::Rat;
use super::PolyError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((start + 1, Tok::Num(s.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
            {
                i += 1;
            }
            out.push((start + 1, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i + 1, Tok::Op(c)));
            i += 1;
        } else {
            return Err(PolyError::Parse {
                column: i + 1,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    ring: &'a Arc<Ring>,
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(c, _)| *c)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Parse {
            column: self.col(),
            message: message.into(),
        })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.term()?;
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

    fn term(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let col = self.col();
                let d = self.unary()?;
                match d.constant_value() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                    Some(_) => {
                        return Err(PolyError::Parse {
                            column: col,
                            message: "division by zero".into(),
                        })
                    }
                    None => {
                        return Err(PolyError::Parse {
                            column: col,
                            message: "division is only allowed by a constant".into(),
                        })
                    }
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly, PolyError> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<MultiPoly, PolyError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    let e: u32 = match n.try_into() {
                        Ok(e) => e,
                        Err(_) => return self.err("exponent too large"),
                    };
                    self.pos += 1;
                    Ok(base.pow(e))
                }
                _ => self.err("expected a non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly, PolyError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(self.ring, Rat::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                if self.ring.index_of(&name).is_none() {
                    return Err(PolyError::UnknownVariable(name));
                }
                self.pos += 1;
                MultiPoly::var(self.ring, &name)
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(Tok::Op(c)) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }
}

impl MultiPoly {
    /// Parses `text` over `ring`; identifiers outside the ring are
    /// rejected with [`PolyError::UnknownVariable`].
    pub fn parse(text: &str, ring: &Arc<Ring>) -> Result<MultiPoly, PolyError> {
        let toks = tokenize(text)?;
        let mut p = Parser {
            toks: &toks,
            pos: 0,
            ring,
            end_col: text.chars().count() + 1,
        };
        let e = p.expr()?;
        if p.pos != toks.len() {
            return p.err("trailing input");
        }
        Ok(e)
    }

    /// Column (1-based) of the first use of `name` in `text`, for
    /// diagnostics.
    pub fn locate_identifier(text: &str, name: &str) -> Option<usize> {
        tokenize(text).ok()?.into_iter().find_map(|(c, t)| match t {
            Tok::Ident(n) if n == name => Some(c),
            _ => None,
        })
    }
}

/// Parses with a ring made of the identifiers in order of first
/// appearance.
impl FromStr for MultiPoly {
    type Err = PolyError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut names: Vec<String> = Vec::new();
        for (_, t) in tokenize(text)? {
            if let Tok::Ident(n) = t {
                if !names.contains(&n) {
                    names.push(n);
                }
            }
        }
        let ring = Ring::new(names)?;
        MultiPoly::parse(text, &ring)
    }
}
