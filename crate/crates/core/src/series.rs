//! Truncated power series in the cusp parameter `t` with coefficients in K.
//!
//! A [`TSeries`] knows exactly which coefficients it can vouch for: every
//! exponent below `prec`. Reading at or past `prec` is an error rather than
//! an implicit zero, because the Hecke formula reads coefficients far above
//! the index it produces.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::parse::parse_ratk;
use crate::poly::{from_accumulator, mul_accumulate, PolyA};
use crate::rat::RatK;

/// Weight and type of a modular form, carried along for bookkeeping only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Meta {
    pub weight: u32,
    pub ty: u32,
}

/// `Σ a_n tⁿ + O(t^prec)` with zero coefficients omitted.
#[derive(Clone, PartialEq, Eq)]
pub struct TSeries {
    field: PrimeField,
    prec: usize,
    terms: BTreeMap<usize, RatK>,
    meta: Option<Meta>,
}

impl TSeries {
    pub fn zero(field: PrimeField, prec: usize) -> Self {
        TSeries { field, prec, terms: BTreeMap::new(), meta: None }
    }

    pub fn one(field: PrimeField, prec: usize) -> Self {
        Self::monomial(RatK::one(field), 0, prec)
    }

    /// `c·t^n + O(t^prec)`.
    pub fn monomial(c: RatK, n: usize, prec: usize) -> Self {
        let field = PrimeField::new(c.modulus()).expect("valid field");
        let mut s = Self::zero(field, prec);
        s.set(n, c);
        s
    }

    /// Builds from `(exponent, coefficient)` pairs; later pairs with the same
    /// exponent are added, and exponents at or above `prec` are dropped.
    pub fn from_terms(field: PrimeField, prec: usize, terms: impl IntoIterator<Item = (usize, RatK)>) -> Self {
        let mut s = Self::zero(field, prec);
        for (n, c) in terms {
            let sum = match s.terms.get(&n) {
                Some(old) => old + &c,
                None => c,
            };
            s.set(n, sum);
        }
        s
    }

    /// Builds from polynomial coefficients.
    pub fn from_polys(field: PrimeField, prec: usize, terms: impl IntoIterator<Item = (usize, PolyA)>) -> Self {
        Self::from_terms(field, prec, terms.into_iter().map(|(n, a)| (n, RatK::from_poly(a))))
    }

    fn set(&mut self, n: usize, c: RatK) {
        if n >= self.prec || c.is_zero() {
            self.terms.remove(&n);
        } else {
            self.terms.insert(n, c);
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn meta(&self) -> Option<Meta> {
        self.meta
    }

    pub fn with_meta(mut self, meta: Option<Meta>) -> Self {
        self.meta = meta;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &RatK)> {
        self.terms.iter().map(|(&n, c)| (n, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The exact coefficient of tⁿ; `InsufficientPrecision` when `n >= prec`.
    pub fn coeff(&self, n: usize) -> Result<RatK> {
        if n >= self.prec {
            return Err(Error::InsufficientPrecision { needed: n as u64 + 1, available: self.prec as u64 });
        }
        Ok(self.terms.get(&n).cloned().unwrap_or_else(|| RatK::zero(self.field)))
    }

    /// Borrowing variant of [`coeff`](Self::coeff): `Ok(None)` means a certified zero.
    pub fn coeff_ref(&self, n: usize) -> Result<Option<&RatK>> {
        if n >= self.prec {
            return Err(Error::InsufficientPrecision { needed: n as u64 + 1, available: self.prec as u64 });
        }
        Ok(self.terms.get(&n))
    }

    /// Lowest exponent with a nonzero coefficient; `prec` for the zero series.
    pub fn ord(&self) -> usize {
        self.terms.keys().next().copied().unwrap_or(self.prec)
    }

    /// Lowest nonzero term, if any.
    pub fn leading_term(&self) -> Option<(usize, &RatK)> {
        self.terms.iter().next().map(|(&n, c)| (n, c))
    }

    /// True when every coefficient lies in A.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(RatK::is_integral)
    }

    /// Drops everything at or above `prec` (never raises precision).
    pub fn truncate(&self, prec: usize) -> TSeries {
        let prec = prec.min(self.prec);
        TSeries {
            field: self.field,
            prec,
            terms: self.terms.range(..prec).map(|(&n, c)| (n, c.clone())).collect(),
            meta: self.meta,
        }
    }

    /// Multiplies by t^k.
    pub fn shift(&self, k: usize) -> TSeries {
        TSeries {
            field: self.field,
            prec: self.prec + k,
            terms: self.terms.iter().map(|(&n, c)| (n + k, c.clone())).collect(),
            meta: self.meta,
        }
    }

    pub fn neg(&self) -> TSeries {
        TSeries {
            field: self.field,
            prec: self.prec,
            terms: self.terms.iter().map(|(&n, c)| (n, -c)).collect(),
            meta: self.meta,
        }
    }

    pub fn scale(&self, c: &RatK) -> TSeries {
        let mut out = TSeries::zero(self.field, self.prec).with_meta(self.meta);
        if c.is_zero() {
            return out;
        }
        for (&n, a) in &self.terms {
            out.set(n, a * c);
        }
        out
    }

    pub fn scale_poly(&self, c: &PolyA) -> TSeries {
        self.scale(&RatK::from_poly(c.clone()))
    }

    pub fn add(&self, other: &TSeries) -> TSeries {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &TSeries) -> TSeries {
        self.combine(other, true)
    }

    fn combine(&self, other: &TSeries, subtract: bool) -> TSeries {
        debug_assert_eq!(self.field, other.field);
        let prec = self.prec.min(other.prec);
        let meta = if self.meta == other.meta { self.meta } else { None };
        let mut out = self.truncate(prec).with_meta(meta);
        for (&n, c) in other.terms.range(..prec) {
            let sum = match (out.terms.get(&n), subtract) {
                (Some(a), false) => a + c,
                (Some(a), true) => a - c,
                (None, false) => c.clone(),
                (None, true) => -c,
            };
            out.set(n, sum);
        }
        out
    }

    /// Exact truncated product. The result is certified below
    /// `min(f.prec + ord g, g.prec + ord f)`.
    pub fn mul(&self, other: &TSeries) -> Result<TSeries> {
        debug_assert_eq!(self.field, other.field);
        let prec = (self.prec + other.ord()).min(other.prec + self.ord());
        let meta = match (self.meta, other.meta) {
            (Some(a), Some(b)) => Some(self.combine_meta(a, b)),
            _ => None,
        };
        let mut out = TSeries::zero(self.field, prec).with_meta(meta);
        if self.is_zero() || other.is_zero() {
            return Ok(out);
        }
        // Iterate over the sparser factor for each output exponent.
        let (outer, inner) = if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        let mut dense: Vec<Option<&RatK>> = vec![None; prec];
        for (&n, c) in inner.terms.range(..prec) {
            dense[n] = Some(c);
        }
        let outer_terms: Vec<(usize, &RatK)> = outer.terms.range(..prec).map(|(&n, c)| (n, c)).collect();
        let start = self.ord() + other.ord();
        let integral = self.is_integral() && other.is_integral();
        let p = self.field.p();

        let coeffs: Vec<(usize, RatK)> = (start..prec)
            .into_par_iter()
            .filter_map(|n| {
                let pairs =
                    outer_terms.iter().take_while(|(i, _)| *i <= n).filter_map(|&(i, a)| dense[n - i].map(|b| (a, b)));
                let value = if integral {
                    convolve_integral(p, pairs)
                } else {
                    pairs.fold(RatK::zero(self.field), |acc, (a, b)| &acc + &(a * b))
                };
                (!value.is_zero()).then_some((n, value))
            })
            .collect();
        for (n, c) in coeffs {
            self.field.check_degree(c.num().degree().unwrap_or(0).max(c.den().degree().unwrap_or(0)))?;
            out.terms.insert(n, c);
        }
        Ok(out)
    }

    fn combine_meta(&self, a: Meta, b: Meta) -> Meta {
        let m = (self.field.q() - 1).max(1);
        Meta { weight: a.weight + b.weight, ty: (a.ty + b.ty) % m }
    }

    /// `f^e` by repeated squaring; `f^0 = 1` at `f.prec`.
    pub fn pow(&self, e: u64) -> Result<TSeries> {
        let mut acc: Option<TSeries> = None;
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base)?,
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc.unwrap_or_else(|| {
            let meta = self.meta.map(|_| Meta { weight: 0, ty: 0 });
            TSeries::one(self.field, self.prec).with_meta(meta)
        }))
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inv(&self) -> Result<TSeries> {
        let c0 = self.coeff(0).map_err(|_| Error::NotAUnit)?;
        if c0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let c0_inv = c0.inv()?;
        let neg_c0_inv = -&c0_inv;
        let tail: Vec<(usize, &RatK)> = self.terms.range(1..).map(|(&n, c)| (n, c)).collect();
        let mut out: Vec<Option<RatK>> = vec![None; self.prec];
        out[0] = Some(c0_inv);
        for n in 1..self.prec {
            let mut acc: Option<RatK> = None;
            for &(k, a) in tail.iter().take_while(|(k, _)| *k <= n) {
                if let Some(b) = &out[n - k] {
                    let prod = a * b;
                    acc = Some(match acc {
                        None => prod,
                        Some(s) => &s + &prod,
                    });
                }
            }
            out[n] = acc.map(|s| &s * &neg_c0_inv).filter(|c| !c.is_zero());
        }
        Ok(TSeries {
            field: self.field,
            prec: self.prec,
            terms: out.into_iter().enumerate().filter_map(|(n, c)| c.map(|c| (n, c))).collect(),
            meta: None,
        })
    }

    /// Substitutes `t ↦ c·t^e`. The result is certified below
    /// `e·(prec − 1) + 1`, further capped by `cap` when given.
    pub fn substitute_monomial(&self, c: &RatK, e: usize, cap: Option<usize>) -> Result<TSeries> {
        if e == 0 {
            return Err(Error::Precondition("substitution exponent must be positive".into()));
        }
        let mut prec = e * self.prec.saturating_sub(1) + 1;
        if let Some(cap) = cap {
            prec = prec.min(cap);
        }
        let mut out = TSeries::zero(self.field, prec);
        let mut power = RatK::one(self.field);
        let mut last = 0usize;
        for (&n, a) in &self.terms {
            if n * e >= prec {
                break;
            }
            power = &power * &c.pow((n - last) as u64);
            last = n;
            out.set(n * e, a * &power);
        }
        Ok(out)
    }

    /// Lowest exponent below the common precision where the two series differ.
    pub fn first_difference(&self, other: &TSeries) -> Option<usize> {
        let prec = self.prec.min(other.prec);
        let keys = self.terms.range(..prec).map(|(&n, _)| n).chain(other.terms.range(..prec).map(|(&n, _)| n));
        let mut candidates: Vec<usize> = keys.collect();
        candidates.sort_unstable();
        candidates.dedup();
        candidates.into_iter().find(|&n| self.terms.get(&n) != other.terms.get(&n))
    }

    /// True when both series agree on every coefficient below `prec`
    /// (and both are certified that far).
    pub fn agrees_to(&self, other: &TSeries, prec: usize) -> bool {
        self.prec >= prec && other.prec >= prec && self.truncate(prec).first_difference(&other.truncate(prec)).is_none()
    }

    /// Applies θ ↦ θ + c to every coefficient.
    pub fn translate_theta(&self, c: u32) -> TSeries {
        TSeries {
            field: self.field,
            prec: self.prec,
            terms: self.terms.iter().map(|(&n, a)| (n, a.translate(c))).collect(),
            meta: self.meta,
        }
    }

    /// Largest θ-degree among the numerators and denominators.
    pub fn max_coeff_degree(&self) -> usize {
        self.terms.values().map(|c| c.num().degree().unwrap_or(0).max(c.den().degree().unwrap_or(0))).max().unwrap_or(0)
    }

    /// Human-readable form, e.g. `t^2 + 2*t^6 + (θ^3 + 2*θ)*t^8 + O(t^10)`.
    pub fn to_text(&self, var: &str) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (&n, c) in &self.terms {
            let mono = match n {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{n}"),
            };
            let coeff = c.to_text(var);
            parts.push(if n == 0 {
                coeff
            } else if c.is_one() {
                mono
            } else if c.is_atomic() {
                format!("{coeff}*{mono}")
            } else {
                format!("({coeff})*{mono}")
            });
        }
        parts.push(format!("O(t^{})", self.prec));
        parts.join(" + ")
    }

    /// JSON form: `{"q", "prec", "weight", "type", "terms": [[n, coeff], …]}`
    /// with coefficients rendered in `T`.
    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            q: self.field.q(),
            prec: self.prec,
            weight: self.meta.map(|m| m.weight),
            ty: self.meta.map(|m| m.ty),
            terms: self.terms.iter().map(|(&n, c)| (n, c.to_text("T"))).collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("series JSON is always serializable")
    }

    pub fn from_json(json: &SeriesJson) -> Result<TSeries> {
        let field = PrimeField::new(json.q)?;
        let mut terms = Vec::with_capacity(json.terms.len());
        for (n, text) in &json.terms {
            terms.push((*n, parse_ratk(field, text)?));
        }
        let meta = match (json.weight, json.ty) {
            (Some(weight), Some(ty)) => Some(Meta { weight, ty }),
            _ => None,
        };
        Ok(TSeries::from_terms(field, json.prec, terms).with_meta(meta))
    }

    pub fn from_json_str(text: &str) -> Result<TSeries> {
        let json: SeriesJson = serde_json::from_str(text).map_err(|e| Error::parse(e.column(), e.to_string()))?;
        Self::from_json(&json)
    }
}

/// Wire format of a [`TSeries`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub q: u32,
    pub prec: usize,
    pub weight: Option<u32>,
    #[serde(rename = "type")]
    pub ty: Option<u32>,
    pub terms: Vec<(usize, String)>,
}

// Sum of products of polynomial pairs with a single reduction at the end.
fn convolve_integral<'a>(p: u32, pairs: impl Iterator<Item = (&'a RatK, &'a RatK)>) -> RatK {
    const BUDGET: u64 = 1 << 32;
    let mut acc: Vec<u64> = Vec::new();
    let mut used: u64 = 0;
    let mut template: Option<&PolyA> = None;
    for (a, b) in pairs {
        let (a, b) = (a.num(), b.num());
        let len = a.coeffs().len() + b.coeffs().len() - 1;
        if acc.len() < len {
            acc.resize(len, 0);
        }
        let load = a.coeffs().len().min(b.coeffs().len()) as u64;
        if used + load >= BUDGET {
            let m = p as u64;
            acc.iter_mut().for_each(|v| *v %= m);
            used = 0;
        }
        used += load;
        mul_accumulate(&mut acc, a.coeffs(), b.coeffs());
        template.get_or_insert(a);
    }
    match template {
        Some(_) => RatK::from_poly(from_accumulator(p, &acc)),
        None => RatK::zero(PrimeField::new(p).expect("valid field")),
    }
}

impl fmt::Display for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("θ"))
    }
}

impl fmt::Debug for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TSeries[F_{}]({})", self.field.p(), self.to_text("θ"))
    }
}
