//! The prime field F_p and the per-computation context shared by every
//! polynomial, series and form.
//!
//! Only prime `q = p` is supported. The context also carries a degree bound
//! that guards Frobenius powers and series products against runaway
//! precision settings.

use crate::error::{Error, Result};
use crate::poly::PolyA;

/// Default cap on the θ-degree of any coefficient polynomial.
pub const DEFAULT_DEGREE_BOUND: usize = 1_000_000;

/// Largest admissible characteristic. Products of two residues must fit in
/// `u32` so the multiplication kernels can accumulate in `u64`.
pub const MAX_PRIME: u32 = 65_521;

/// Computation context: the characteristic `p` (= q) and the degree bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
    degree_bound: usize,
}

impl PrimeField {
    /// Creates the context for `q = p`. Prime powers and composites are rejected.
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(PrimeField { p, degree_bound: DEFAULT_DEGREE_BOUND })
    }

    pub fn with_degree_bound(mut self, bound: usize) -> Self {
        self.degree_bound = bound;
        self
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    /// `q`, which equals `p` here.
    #[inline]
    pub fn q(&self) -> u32 {
        self.p
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn check_degree(&self, degree: usize) -> Result<()> {
        if degree > self.degree_bound {
            Err(Error::DegreeOverflow { degree: degree as u64, bound: self.degree_bound as u64 })
        } else {
            Ok(())
        }
    }

    /// `q^n` as a `usize`, or `DegreeOverflow` if it exceeds the degree bound.
    pub fn q_pow(&self, n: u32) -> Result<usize> {
        let mut acc: usize = 1;
        for _ in 0..n {
            acc = acc
                .checked_mul(self.p as usize)
                .filter(|&v| v <= self.degree_bound)
                .ok_or(Error::DegreeOverflow { degree: u64::MAX, bound: self.degree_bound as u64 })?;
        }
        self.check_degree(acc)?;
        Ok(acc)
    }

    /// θ^{q^n}.
    pub fn frob_power(&self, n: u32) -> Result<PolyA> {
        let deg = self.q_pow(n)?;
        Ok(PolyA::monomial(*self, 1, deg))
    }

    #[inline]
    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `ZeroDivisor` for 0.
    pub fn inv(&self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.p) {
            return Err(Error::ZeroDivisor);
        }
        Ok(self.pow(a, (self.p - 2) as u64))
    }

    /// n! mod p.
    pub fn factorial(&self, n: u64) -> u32 {
        if n >= self.p as u64 {
            return 0;
        }
        (1..=n).fold(1u32, |acc, i| self.mul(acc, (i % self.p as u64) as u32))
    }

    /// C(n, k) mod p via Lucas' theorem (product of base-p digit binomials).
    pub fn binom(&self, mut n: u64, mut k: u64) -> u32 {
        if k > n {
            return 0;
        }
        let p = self.p as u64;
        let mut acc = 1u32;
        while k > 0 {
            let (nd, kd) = (n % p, k % p);
            if kd > nd {
                return 0;
            }
            acc = self.mul(acc, self.small_binom(nd as u32, kd as u32));
            n /= p;
            k /= p;
        }
        acc
    }

    // C(n, k) mod p for 0 <= k <= n < p.
    fn small_binom(&self, n: u32, k: u32) -> u32 {
        let k = k.min(n - k);
        let mut num = 1u32;
        let mut den = 1u32;
        for i in 0..k {
            num = self.mul(num, n - i);
            den = self.mul(den, i + 1);
        }
        // den is a product of residues below p, hence a unit.
        self.mul(num, self.inv(den).expect("nonzero"))
    }

    /// All monic polynomials of exact degree `d`, ordered lexicographically by
    /// their coefficient vectors (constant term varying fastest).
    pub fn enumerate_monic(&self, d: usize) -> Vec<PolyA> {
        let count = (self.p as usize).pow(d as u32);
        let mut out = Vec::with_capacity(count);
        let mut digits = vec![0u32; d];
        for _ in 0..count {
            let mut coeffs = digits.clone();
            coeffs.push(1);
            out.push(PolyA::from_residues(*self, coeffs));
            for digit in digits.iter_mut() {
                *digit += 1;
                if *digit < self.p {
                    break;
                }
                *digit = 0;
            }
        }
        out
    }
}

/// Standalone `C(n, k) mod p`.
pub fn binom_mod_p(field: &PrimeField, n: u64, k: u64) -> u32 {
    field.binom(n, k)
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
