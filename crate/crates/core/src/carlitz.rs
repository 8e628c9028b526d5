//! The Carlitz module and the objects built from it: the additive
//! polynomials ρ_a, the Carlitz factorials d_i, Goss polynomials of the
//! Carlitz period lattice, the parameters t_a = t(az) and A-expansions
//! `Σ_{a monic} a^w G_n(t_a)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::parse::parse_ratk;
use crate::poly::PolyA;
use crate::rat::RatK;
use crate::series::{Meta, TSeries};

/// An F_q-linear polynomial `Σ c_i x^{q^i}`, stored by Frobenius index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AddPoly {
    field: PrimeField,
    coeffs: Vec<RatK>,
}

impl AddPoly {
    pub fn new(field: PrimeField, mut coeffs: Vec<RatK>) -> Self {
        while coeffs.last().is_some_and(RatK::is_zero) {
            coeffs.pop();
        }
        AddPoly { field, coeffs }
    }

    /// The identity `x`.
    pub fn identity(field: PrimeField) -> Self {
        AddPoly { field, coeffs: vec![RatK::one(field)] }
    }

    /// Coefficient of `x^{q^i}`.
    pub fn coeff(&self, i: usize) -> RatK {
        self.coeffs.get(i).cloned().unwrap_or_else(|| RatK::zero(self.field))
    }

    pub fn coeffs(&self) -> &[RatK] {
        &self.coeffs
    }

    /// Degree in Frobenius powers; `None` for zero.
    pub fn frobenius_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// `self ∘ other`: `Σ_i c_i (Σ_j d_j x^{q^j})^{q^i} = Σ_{i,j} c_i d_j^{q^i} x^{q^{i+j}}`.
    pub fn compose(&self, other: &AddPoly) -> AddPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return AddPoly { field: self.field, coeffs: Vec::new() };
        }
        let q = self.field.q() as u64;
        let mut out = vec![RatK::zero(self.field); self.coeffs.len() + other.coeffs.len() - 1];
        let mut frob = 1u64;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                for (j, d) in other.coeffs.iter().enumerate() {
                    out[i + j] = &out[i + j] + &(c * &d.pow(frob));
                }
            }
            frob *= q;
        }
        AddPoly::new(self.field, out)
    }

    pub fn add(&self, other: &AddPoly) -> AddPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        AddPoly::new(self.field, (0..len).map(|i| &self.coeff(i) + &other.coeff(i)).collect())
    }

    fn scale(&self, c: u32) -> AddPoly {
        AddPoly::new(self.field, self.coeffs.iter().map(|a| a.scale(c)).collect())
    }
}

/// ρ_a: the Carlitz action of `a`, with ρ_θ(x) = θx + x^q.
pub fn carlitz_rho(a: &PolyA) -> Result<AddPoly> {
    if a.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let field = a.field();
    let rho_theta = AddPoly::new(field, vec![RatK::theta(field), RatK::one(field)]);
    let mut power = AddPoly::identity(field);
    let mut acc = AddPoly::new(field, Vec::new());
    for (k, &c) in a.coeffs().iter().enumerate() {
        if k > 0 {
            power = rho_theta.compose(&power);
        }
        if c != 0 {
            acc = acc.add(&power.scale(c));
        }
    }
    Ok(acc)
}

/// Goss polynomial G_n of the Carlitz period lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GossPoly {
    n: usize,
    terms: BTreeMap<usize, RatK>,
}

impl GossPoly {
    pub fn index(&self) -> usize {
        self.n
    }

    /// `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &RatK)> {
        self.terms.iter().map(|(&j, c)| (j, c))
    }

    pub fn coeff(&self, j: usize) -> Option<&RatK> {
        self.terms.get(&j)
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().next_back().copied().unwrap_or(0)
    }

    /// The polynomial as a series in X, exact below `prec`.
    pub fn to_series(&self, field: PrimeField, prec: usize) -> TSeries {
        TSeries::from_terms(field, prec, self.terms.iter().map(|(&j, c)| (j, c.clone())))
    }

    /// G_n(s) for a series `s` without constant term.
    pub fn eval_series(&self, s: &TSeries) -> Result<TSeries> {
        let field = s.field();
        let mut acc = TSeries::zero(field, usize::MAX);
        let mut power = s.clone();
        let mut last = 1;
        for (&j, c) in &self.terms {
            if j > last {
                power = power.mul(&s.pow((j - last) as u64)?)?;
                last = j;
            }
            acc = acc.add(&power.scale(c));
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> GossJson {
        GossJson { n: self.n, terms: self.terms.iter().map(|(&j, c)| (j, c.to_text("T"))).collect() }
    }

    pub fn from_json(field: PrimeField, json: &GossJson) -> Result<GossPoly> {
        let mut terms = BTreeMap::new();
        for (j, text) in &json.terms {
            let c = parse_ratk(field, text)?;
            if !c.is_zero() {
                terms.insert(*j, c);
            }
        }
        Ok(GossPoly { n: json.n, terms })
    }

    /// Text form in X, highest degree first.
    pub fn to_text(&self, var: &str) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&j, c)| {
                let mono = if j == 1 { "X".to_string() } else { format!("X^{j}") };
                if c.is_one() {
                    mono
                } else if c.is_atomic() {
                    format!("{}*{mono}", c.to_text(var))
                } else {
                    format!("({})*{mono}", c.to_text(var))
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Wire format of a [`GossPoly`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GossJson {
    pub n: usize,
    pub terms: Vec<(usize, String)>,
}

/// Carlitz data for one field, with write-once caches for d_i and G_n.
pub struct Carlitz {
    field: PrimeField,
    factorials: RwLock<Vec<PolyA>>,
    goss: RwLock<HashMap<usize, Arc<GossPoly>>>,
}

impl Carlitz {
    pub fn new(field: PrimeField) -> Self {
        Carlitz { field, factorials: RwLock::new(vec![PolyA::one(field)]), goss: RwLock::new(HashMap::new()) }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// d_0 = 1, d_i = (θ^{q^i} − θ)·d_{i−1}^q.
    pub fn carlitz_d(&self, i: usize) -> Result<PolyA> {
        if let Some(d) = self.factorials.read().expect("cache lock").get(i) {
            return Ok(d.clone());
        }
        let mut cache = self.factorials.write().expect("cache lock");
        while cache.len() <= i {
            let k = cache.len();
            let frob = self.field.frob_power(k as u32)?;
            let prev = cache[k - 1].pow(self.field.q() as u64);
            self.field.check_degree(prev.degree().unwrap_or(0) + frob.degree().unwrap_or(0))?;
            let next = &(&frob - &PolyA::theta(self.field)) * &prev;
            cache.push(next);
        }
        Ok(cache[i].clone())
    }

    /// G_n via G_1 = X and G_n = X·(G_{n−1} + Σ_{i≥1} G_{n−q^i}/d_i), with
    /// G_m = 0 for m ≤ 0.
    pub fn goss_poly(&self, n: usize) -> Result<Arc<GossPoly>> {
        if n == 0 {
            return Err(Error::Precondition("Goss polynomials are indexed from 1".into()));
        }
        if let Some(g) = self.goss.read().expect("cache lock").get(&n) {
            return Ok(g.clone());
        }
        let q = self.field.q() as usize;
        // Reciprocals 1/d_i for all q^i < n.
        let mut alphas = Vec::new();
        let mut qi = q;
        let mut i = 1;
        while qi < n {
            alphas.push((qi, RatK::new(PolyA::one(self.field), self.carlitz_d(i)?)?));
            i += 1;
            qi *= q;
        }
        let mut cache = self.goss.write().expect("cache lock");
        for m in 1..=n {
            if cache.contains_key(&m) {
                continue;
            }
            let terms = if m == 1 {
                BTreeMap::from([(1, RatK::one(self.field))])
            } else {
                let mut inner: BTreeMap<usize, RatK> = cache[&(m - 1)].terms.clone();
                for (qi, alpha) in alphas.iter().filter(|(qi, _)| *qi < m) {
                    for (&j, c) in &cache[&(m - qi)].terms {
                        let add = c * alpha;
                        let entry = inner.entry(j).or_insert_with(|| RatK::zero(self.field));
                        *entry = &*entry + &add;
                    }
                }
                inner.into_iter().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (j + 1, c)).collect()
            };
            cache.insert(m, Arc::new(GossPoly { n: m, terms }));
        }
        Ok(cache[&n].clone())
    }

    /// The coefficients of ρ_a(1/t)·t^{q^d} read as a unit power series,
    /// inverted to precision `prec`.
    fn unit_inverse(&self, a: &PolyA, prec: usize) -> Result<TSeries> {
        let rho = carlitz_rho(a)?;
        let d = a.degree().expect("nonzero");
        let top = self.field.q_pow(d as u32)?;
        let mut terms = Vec::with_capacity(d + 1);
        let mut qi = 1usize;
        for i in 0..=d {
            terms.push((top - qi, rho.coeff(i)));
            qi *= self.field.q() as usize;
        }
        TSeries::from_terms(self.field, prec, terms).inv()
    }

    /// t_a = t(az) = 1/ρ_a(1/t) as a power series in t, exact below `prec`.
    pub fn t_a_series(&self, a: &PolyA, prec: usize) -> Result<TSeries> {
        self.t_a_power(a, 1, prec)
    }

    /// t_a^j, exact below `prec`.
    pub fn t_a_power(&self, a: &PolyA, j: usize, prec: usize) -> Result<TSeries> {
        if a.is_zero() {
            return Err(Error::ZeroArgument);
        }
        if !a.is_monic() {
            return Err(Error::MonicRequired);
        }
        let d = a.degree().unwrap_or(0);
        let low = j * self.field.q_pow(d as u32)?;
        if low >= prec {
            return Ok(TSeries::zero(self.field, prec));
        }
        let unit = self.unit_inverse(a, prec - low)?;
        Ok(unit.pow(j as u64)?.truncate(prec - low).shift(low))
    }

    /// Monic polynomials whose t_a can contribute below `prec`, i.e. those of
    /// degree d with q^d < prec.
    fn contributing_degrees(&self, prec: usize) -> usize {
        let q = self.field.q() as usize;
        let mut d = 0;
        let mut qd = 1usize;
        while qd.saturating_mul(q) < prec {
            qd *= q;
            d += 1;
        }
        d
    }

    /// Σ_{a monic, q^{deg a} < prec} a^w · t_a^j, exact below `prec`.
    pub fn monic_power_sum(&self, weight_exp: u64, j: usize, prec: usize) -> Result<TSeries> {
        self.monic_power_sum_to_degree(weight_exp, j, prec, self.contributing_degrees(prec))
    }

    /// As [`monic_power_sum`](Self::monic_power_sum) but summing over all
    /// monic polynomials of degree at most `max_degree`.
    pub fn monic_power_sum_to_degree(
        &self,
        weight_exp: u64,
        j: usize,
        prec: usize,
        max_degree: usize,
    ) -> Result<TSeries> {
        let mut acc = TSeries::zero(self.field, prec);
        if prec <= 1 {
            return Ok(acc);
        }
        for d in 0..=max_degree {
            let monics = self.field.enumerate_monic(d);
            let pieces: Vec<TSeries> = monics
                .par_iter()
                .map(|a| {
                    let ta = self.t_a_power(a, j, prec)?;
                    Ok(if weight_exp == 0 { ta } else { ta.scale_poly(&a.pow(weight_exp)) })
                })
                .collect::<Result<_>>()?;
            for piece in pieces {
                acc = acc.add(&piece);
            }
        }
        Ok(acc)
    }

    /// f = Σ_{a monic} a^{weight_exp}·G_n(t_a), exact below `prec`, tagged with
    /// weight `weight_exp + n` and type `n mod (q−1)`.
    pub fn a_expansion(&self, n: usize, weight_exp: u64, prec: usize) -> Result<TSeries> {
        self.a_expansion_to_degree(n, weight_exp, prec, self.contributing_degrees(prec))
    }

    pub fn a_expansion_to_degree(&self, n: usize, weight_exp: u64, prec: usize, max_degree: usize) -> Result<TSeries> {
        let goss = self.goss_poly(n)?;
        // Σ_a a^w Σ_j c_j t_a^j = Σ_j c_j (Σ_a a^w t_a^j); the inner sums are integral.
        let mut acc = TSeries::zero(self.field, prec);
        for (j, c) in goss.terms() {
            let inner = self.monic_power_sum_to_degree(weight_exp, j, prec, max_degree)?;
            acc = acc.add(&inner.scale(c));
        }
        let types = (self.field.q() - 1).max(1) as usize;
        let meta = Meta { weight: weight_exp as u32 + n as u32, ty: (n % types) as u32 };
        Ok(acc.with_meta(Some(meta)))
    }
}
