use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::PolyA;

/// Sparse polynomial over F_p in a fixed number of variables.
///
/// Exponent vectors are stored in a map, so equality is structural and zero
/// coefficients never appear. In the universal-recurrence setting the
/// variables are `x_1, …, x_ℓ` followed by θ as the last slot.
#[derive(Clone, PartialEq, Eq)]
pub struct MVPoly {
    field: PrimeField,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, u32>,
}

impl MVPoly {
    pub fn zero(field: PrimeField, nvars: usize) -> Self {
        MVPoly { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: PrimeField, nvars: usize, c: i64) -> Self {
        let mut out = MVPoly::zero(field, nvars);
        out.add_term(vec![0; nvars], field.reduce(c));
        out
    }

    pub fn one(field: PrimeField, nvars: usize) -> Self {
        MVPoly::constant(field, nvars, 1)
    }

    /// The variable in slot `i`.
    pub fn var(field: PrimeField, nvars: usize, i: usize) -> Self {
        MVPoly::monomial(field, nvars, i, 1)
    }

    /// `v_i^e`.
    pub fn monomial(field: PrimeField, nvars: usize, i: usize, e: u32) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = e;
        let mut out = MVPoly::zero(field, nvars);
        out.add_term(exps, 1);
        out
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], u32)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    fn add_term(&mut self, exps: Vec<u32>, c: u32) {
        if c == 0 {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let sum = self.field.add(*slot.get(), c);
                if sum == 0 {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    fn check(&self, other: &MVPoly) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        assert_eq!(self.field.p(), other.field.p(), "field mismatch");
    }

    pub fn add(&self, other: &MVPoly) -> MVPoly {
        self.check(other);
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &MVPoly) -> MVPoly {
        self.add(&other.scale(self.field.p() - 1))
    }

    pub fn scale(&self, c: u32) -> MVPoly {
        let c = c % self.field.p();
        let mut out = MVPoly::zero(self.field, self.nvars);
        if c != 0 {
            out.terms = self.terms.iter().map(|(e, &v)| (e.clone(), self.field.mul(v, c))).collect();
        }
        out
    }

    pub fn mul(&self, other: &MVPoly) -> MVPoly {
        self.check(other);
        let mut acc: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        let p = self.field.p() as u64;
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let slot = acc.entry(e).or_insert(0);
                *slot = (*slot + ca as u64 * cb as u64) % p;
            }
        }
        MVPoly {
            field: self.field,
            nvars: self.nvars,
            terms: acc.into_iter().filter(|&(_, c)| c != 0).map(|(e, c)| (e, c as u32)).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> MVPoly {
        let mut base = self.clone();
        let mut acc = MVPoly::one(self.field, self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Relabels variables: slot `i` moves to slot `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> MVPoly {
        assert_eq!(perm.len(), self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(e, &c)| {
                let mut out = vec![0; self.nvars];
                for (i, &x) in e.iter().enumerate() {
                    out[perm[i]] = x;
                }
                (out, c)
            })
            .collect();
        MVPoly { field: self.field, nvars: self.nvars, terms }
    }

    /// f(v_1 + 1, …, v_n + 1) − f: every variable shifts by one.
    pub fn d1(&self) -> MVPoly {
        let mut shifted = MVPoly::zero(self.field, self.nvars);
        for (e, &c) in &self.terms {
            // Π (v_i + 1)^{e_i} = Π Σ_{k ≤ e_i} C(e_i, k) v_i^k; zero binomials mod p are skipped.
            let mut partial: Vec<(Vec<u32>, u32)> = vec![(Vec::with_capacity(self.nvars), c)];
            for &ei in e {
                let mut next = Vec::new();
                for (prefix, coeff) in &partial {
                    for k in 0..=ei {
                        let b = self.field.binom(ei as u64, k as u64);
                        if b == 0 {
                            continue;
                        }
                        let mut ex = prefix.clone();
                        ex.push(k);
                        next.push((ex, self.field.mul(*coeff, b)));
                    }
                }
                partial = next;
            }
            for (ex, coeff) in partial {
                shifted.add_term(ex, coeff);
            }
        }
        shifted.sub(self)
    }

    /// D_e = D_1 applied `e` times.
    pub fn d_pow(&self, e: u32) -> MVPoly {
        (0..e).fold(self.clone(), |acc, _| acc.d1())
    }

    /// Substitutes a polynomial in θ for each variable.
    pub fn specialize(&self, values: &[PolyA]) -> Result<PolyA> {
        if values.len() != self.nvars {
            return Err(Error::LengthMismatch(values.len(), self.nvars));
        }
        let mut acc = PolyA::zero(self.field);
        for (e, &c) in &self.terms {
            let mut term = PolyA::constant(self.field, c as i64);
            for (v, &k) in values.iter().zip(e) {
                if k > 0 {
                    term = &term * &v.pow(k as u64);
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Terms in descending graded-lex order, variables named by `names`.
    pub fn to_text(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.nvars);
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        if keys.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = keys
            .into_iter()
            .map(|e| {
                let c = self.terms[e];
                let mono: Vec<String> = e
                    .iter()
                    .zip(names)
                    .filter(|(&k, _)| k > 0)
                    .map(|(&k, n)| if k == 1 { n.to_string() } else { format!("{n}^{k}") })
                    .collect();
                match (c, mono.is_empty()) {
                    (_, true) => c.to_string(),
                    (1, false) => mono.join("*"),
                    _ => format!("{c}*{}", mono.join("*")),
                }
            })
            .collect();
        parts.join(" + ")
    }

    /// Default names `x1..xl, theta` for an `ℓ + 1` variable polynomial.
    pub fn universal_names(&self) -> Vec<String> {
        let l = self.nvars.saturating_sub(1);
        (1..=l).map(|i| format!("x{i}")).chain(std::iter::once("theta".to_string())).collect()
    }

    pub fn to_universal_text(&self) -> String {
        let names = self.universal_names();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        self.to_text(&refs)
    }
}

impl fmt::Debug for MVPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("v{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        write!(f, "MVPoly[F_{}]({})", self.field.p(), self.to_text(&refs))
    }
}
