use std::collections::HashMap;
use std::fmt;

use super::generators::Forms;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::parse::Cursor;
use crate::rat::RatK;
use crate::series::{Meta, TSeries};

/// A named generator of the algebra of modular forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    G,
    H,
    Delta,
    F { k: u32, n: u32 },
}

impl Generator {
    /// (weight, type) for the field with `q` elements.
    pub fn grading(&self, q: u32) -> (u32, u32) {
        let types = (q - 1).max(1);
        match *self {
            Generator::G => (q - 1, 0),
            Generator::H => (q + 1, 1 % types),
            Generator::Delta => (q * q - 1, 0),
            Generator::F { k, n } => (k, n % types),
        }
    }

    fn series(&self, forms: &Forms, prec: usize) -> Result<TSeries> {
        match *self {
            Generator::G => forms.g(prec),
            Generator::H => forms.h(prec),
            Generator::Delta => forms.delta(prec),
            Generator::F { k, n } => forms.f(k, n, prec),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::G => write!(f, "g"),
            Generator::H => write!(f, "h"),
            Generator::Delta => write!(f, "Delta"),
            Generator::F { k, n } => write!(f, "f_{{{k},{n}}}"),
        }
    }
}

/// `coeff · Π gen^exp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormTerm {
    pub coeff: RatK,
    pub factors: Vec<(Generator, u32)>,
}

impl FormTerm {
    pub fn grading(&self, q: u32) -> (u32, u32) {
        let types = (q - 1).max(1);
        let (w, t) = self.factors.iter().fold((0, 0), |(w, t), (g, e)| {
            let (gw, gt) = g.grading(q);
            (w + gw * e, t + gt * e)
        });
        (w, t % types)
    }
}

/// A sum of scalar multiples of monomials in the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormExpr {
    field: PrimeField,
    terms: Vec<FormTerm>,
}

impl FormExpr {
    pub fn new(field: PrimeField, terms: Vec<FormTerm>) -> Self {
        FormExpr { field, terms }
    }

    pub fn terms(&self) -> &[FormTerm] {
        &self.terms
    }

    /// Parses text such as `h^2 g^7 - (θ^3+2θ) h^4 g^3`, `Delta`, `Δ` or
    /// `f_{22,4}`. Scalars use the K grammar; juxtaposition multiplies.
    pub fn parse(field: PrimeField, text: &str) -> Result<FormExpr> {
        let mut cur = Cursor::new(text);
        let mut terms = Vec::new();
        cur.skip_ws();
        let mut negate = if cur.eat('-') {
            true
        } else {
            cur.eat('+');
            false
        };
        loop {
            let mut term = parse_term(field, &mut cur)?;
            if negate {
                term.coeff = -term.coeff;
            }
            terms.push(term);
            if cur.eat('+') {
                negate = false;
            } else if cur.eat('-') {
                negate = true;
            } else {
                break;
            }
        }
        cur.skip_ws();
        if !cur.at_end() {
            return Err(Error::parse(cur.pos, format!("unexpected '{}'", cur.peek().unwrap())));
        }
        Ok(FormExpr { field, terms })
    }

    /// The common (weight, type) of all nonzero terms; `None` when every term
    /// vanishes.
    pub fn grading(&self) -> Result<Option<(u32, u32)>> {
        let q = self.field.q();
        let mut found: Option<(u32, u32, &FormTerm)> = None;
        for term in self.terms.iter().filter(|t| !t.coeff.is_zero()) {
            let (w, t) = term.grading(q);
            match found {
                None => found = Some((w, t, term)),
                Some((w0, t0, first)) if (w0, t0) != (w, t) => {
                    return Err(Error::GradedInconsistency(format!(
                        "{} has weight {w0} type {t0} but {} has weight {w} type {t}",
                        describe(first),
                        describe(term)
                    )))
                }
                Some(_) => {}
            }
        }
        Ok(found.map(|(w, t, _)| (w, t)))
    }

    /// The expansion exact below `prec`, tagged with the expression's grading.
    pub fn eval(&self, forms: &Forms, prec: usize) -> Result<TSeries> {
        let grading = self.grading()?;
        let field = self.field;
        let mut powers: HashMap<(Generator, u32), TSeries> = HashMap::new();
        let mut acc = TSeries::zero(field, prec);
        for term in self.terms.iter().filter(|t| !t.coeff.is_zero()) {
            let mut value = TSeries::one(field, prec);
            for &(generator, e) in &term.factors {
                if e == 0 {
                    continue;
                }
                let power = match powers.get(&(generator, e)) {
                    Some(s) => s.clone(),
                    None => {
                        let s = generator.series(forms, prec)?.pow(e as u64)?.truncate(prec);
                        powers.insert((generator, e), s.clone());
                        s
                    }
                };
                value = value.mul(&power)?.truncate(prec);
            }
            acc = acc.add(&value.scale(&term.coeff));
        }
        if acc.prec() < prec {
            return Err(Error::InsufficientPrecision { needed: prec as u64, available: acc.prec() as u64 });
        }
        Ok(acc.with_meta(grading.map(|(weight, ty)| Meta { weight, ty })))
    }
}

fn describe(term: &FormTerm) -> String {
    if term.factors.is_empty() {
        return "the constant term".into();
    }
    term.factors.iter().map(|(g, e)| format!("{g}^{e}")).collect::<Vec<_>>().join(" ")
}

fn parse_term(field: PrimeField, cur: &mut Cursor) -> Result<FormTerm> {
    let mut coeff = RatK::one(field);
    let mut factors: Vec<(Generator, u32)> = Vec::new();
    let mut any = false;
    loop {
        cur.skip_ws();
        if any && cur.eat('*') {
            continue;
        }
        if cur.at_scalar_start() {
            coeff = &coeff * &cur.factor(field)?;
            any = true;
            continue;
        }
        let pos = cur.pos;
        let Some(word) = cur.peek_word() else { break };
        let generator = match word.as_str() {
            "g" => Generator::G,
            "h" => Generator::H,
            "Delta" | "Δ" => Generator::Delta,
            "f_" => Generator::F { k: 0, n: 0 },
            _ => return Err(Error::parse(pos, format!("unknown symbol '{word}'"))),
        };
        cur.word();
        let generator = if let Generator::F { .. } = generator {
            cur.expect('{')?;
            let k = cur.uint()? as u32;
            cur.expect(',')?;
            let n = cur.uint()? as u32;
            cur.expect('}')?;
            Generator::F { k, n }
        } else {
            generator
        };
        let e = if cur.eat('^') { cur.uint()? as u32 } else { 1 };
        match factors.iter_mut().find(|(g, _)| *g == generator) {
            Some(slot) => slot.1 += e,
            None => factors.push((generator, e)),
        }
        any = true;
    }
    if !any {
        return Err(Error::parse(cur.pos, "expected a term"));
    }
    factors.sort();
    Ok(FormTerm { coeff, factors })
}
