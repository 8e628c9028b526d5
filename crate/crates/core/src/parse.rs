//! Text parsing for elements of K, shared with the form-expression grammar.
//!
//! Accepts the canonical strings produced by `PolyA::to_text` / `RatK::to_text`
//! plus ordinary hand-written input: `θ`, `T` or `theta` for the variable,
//! `+ - * / ^`, parentheses, and implicit multiplication (`2θ`).

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::PolyA;
use crate::rat::RatK;

/// Parses an element of K.
pub fn parse_ratk(field: PrimeField, text: &str) -> Result<RatK> {
    let mut cur = Cursor::new(text);
    let value = cur.expr(field)?;
    cur.skip_ws();
    if !cur.at_end() {
        return Err(Error::parse(cur.pos, format!("unexpected '{}'", cur.peek().unwrap())));
    }
    Ok(value)
}

/// Parses an element of A; fails if the value has a nontrivial denominator.
pub fn parse_poly(field: PrimeField, text: &str) -> Result<PolyA> {
    parse_ratk(field, text)?.into_poly().ok_or_else(|| Error::parse(0, "expected a polynomial in θ"))
}

pub(crate) struct Cursor {
    chars: Vec<char>,
    pub(crate) pos: usize,
}

impl Cursor {
    pub(crate) fn new(text: &str) -> Self {
        Cursor { chars: text.chars().collect(), pos: 0 }
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    pub(crate) fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    pub(crate) fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    /// Skips whitespace and consumes `c` if it is next.
    pub(crate) fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected '{c}'")))
        }
    }

    pub(crate) fn uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| Error::parse(start, "integer out of range"))
    }

    /// Identifier made of letters, digits and `_` (θ and Δ count as letters).
    pub(crate) fn word(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        if !self.peek().is_some_and(char::is_alphabetic) {
            return None;
        }
        while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        Some(self.chars[start..self.pos].iter().collect())
    }

    /// Looks ahead at the next identifier without consuming it.
    pub(crate) fn peek_word(&mut self) -> Option<String> {
        let save = self.pos;
        let w = self.word();
        self.pos = save;
        w
    }

    /// True if the next token can start a scalar factor.
    pub(crate) fn at_scalar_start(&mut self) -> bool {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '(' => true,
            Some(_) => matches!(self.peek_word().as_deref(), Some(w) if is_variable(w)),
            None => false,
        }
    }

    pub(crate) fn expr(&mut self, field: PrimeField) -> Result<RatK> {
        self.skip_ws();
        let mut acc = if self.eat('-') {
            -self.term(field)?
        } else {
            self.eat('+');
            self.term(field)?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term(field)?;
            } else if self.eat('-') {
                acc = &acc - &self.term(field)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self, field: PrimeField) -> Result<RatK> {
        let mut acc = self.factor(field)?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor(field)?;
            } else if self.eat('/') {
                let pos = self.pos;
                let d = self.factor(field)?;
                acc = acc.div(&d).map_err(|_| Error::parse(pos, "division by zero"))?;
            } else if self.at_scalar_start() {
                acc = &acc * &self.factor(field)?;
            } else {
                return Ok(acc);
            }
        }
    }

    /// atom ('^' uint)?
    pub(crate) fn factor(&mut self, field: PrimeField) -> Result<RatK> {
        let base = self.atom(field)?;
        if self.eat('^') {
            let e = self.uint()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self, field: PrimeField) -> Result<RatK> {
        self.skip_ws();
        let pos = self.pos;
        match self.peek() {
            Some('(') => {
                self.bump();
                let v = self.expr(field)?;
                self.expect(')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                Ok(RatK::constant(field, (n % field.p() as u64) as i64))
            }
            Some(_) => match self.word() {
                Some(w) if is_variable(&w) => Ok(RatK::theta(field)),
                Some(w) => Err(Error::parse(pos, format!("unknown symbol '{w}'"))),
                None => Err(Error::parse(pos, format!("unexpected '{}'", self.peek().unwrap()))),
            },
            None => Err(Error::parse(pos, "unexpected end of input")),
        }
    }
}

pub(crate) fn is_variable(w: &str) -> bool {
    matches!(w, "θ" | "T" | "theta")
}
