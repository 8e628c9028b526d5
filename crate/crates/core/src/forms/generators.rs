use std::collections::HashMap;
use std::sync::RwLock;

use crate::carlitz::Carlitz;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::PolyA;
use crate::series::{Meta, TSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Key {
    H,
    G,
    Delta,
    F(u32, u32),
}

/// Expansions of the generators h, g, Δ and of the A-expansions f_{k,n} for
/// one field, cached at the highest precision requested so far.
pub struct Forms {
    carlitz: Carlitz,
    cache: RwLock<HashMap<Key, TSeries>>,
}

impl Forms {
    pub fn new(field: PrimeField) -> Self {
        Forms { carlitz: Carlitz::new(field), cache: RwLock::new(HashMap::new()) }
    }

    pub fn field(&self) -> PrimeField {
        self.carlitz.field()
    }

    pub fn carlitz(&self) -> &Carlitz {
        &self.carlitz
    }

    fn cached(&self, key: Key, prec: usize, build: impl FnOnce() -> Result<TSeries>) -> Result<TSeries> {
        if let Some(s) = self.cache.read().expect("cache lock").get(&key) {
            if s.prec() >= prec {
                return Ok(s.truncate(prec));
            }
        }
        let s = build()?;
        debug_assert!(s.prec() >= prec);
        self.cache.write().expect("cache lock").insert(key, s.clone());
        Ok(s.truncate(prec))
    }

    fn q(&self) -> u32 {
        self.field().q()
    }

    /// h = Σ_{a monic} a^q·t_a, weight q + 1, type 1.
    pub fn h(&self, prec: usize) -> Result<TSeries> {
        self.cached(Key::H, prec, || self.carlitz.a_expansion(1, self.q() as u64, prec))
    }

    /// The normalized Eisenstein series of weight q − 1,
    /// g = 1 − (θ^q − θ)·Σ_{a monic} t_a^{q−1}.
    pub fn g(&self, prec: usize) -> Result<TSeries> {
        self.cached(Key::G, prec, || {
            let field = self.field();
            let q = self.q();
            let sum = self.carlitz.monic_power_sum(0, q as usize - 1, prec)?;
            let factor = &PolyA::monomial(field, 1, q as usize) - &PolyA::theta(field);
            let g = TSeries::one(field, prec).sub(&sum.scale_poly(&factor));
            Ok(g.with_meta(Some(Meta { weight: q - 1, ty: 0 })))
        })
    }

    /// Δ = h^{q−1}, weight q² − 1, type 0.
    pub fn delta(&self, prec: usize) -> Result<TSeries> {
        self.cached(Key::Delta, prec, || {
            let q = self.q();
            let d = self.h(prec)?.pow(q as u64 - 1)?.truncate(prec);
            Ok(d.with_meta(Some(Meta { weight: q * q - 1, ty: 0 })))
        })
    }

    /// f_{k,n} = Σ_{a monic} a^{k−n}·G_n(t_a).
    pub fn f(&self, k: u32, n: u32, prec: usize) -> Result<TSeries> {
        if n == 0 || k < n {
            return Err(Error::Precondition(format!("f_{{k,n}} needs 1 ≤ n ≤ k, got k = {k}, n = {n}")));
        }
        self.cached(Key::F(k, n), prec, || self.carlitz.a_expansion(n as usize, (k - n) as u64, prec))
    }
}
