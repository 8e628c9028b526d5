//! Dense univariate polynomials over F_p: the ring A = F_p[θ].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::PrimeField;

/// An element of A = F_p[θ], stored densely by θ-degree with trailing zeros
/// trimmed. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyA {
    p: u32,
    coeffs: Vec<u32>,
}

impl PolyA {
    pub fn zero(field: PrimeField) -> Self {
        PolyA { p: field.p(), coeffs: Vec::new() }
    }

    pub fn one(field: PrimeField) -> Self {
        Self::constant(field, 1)
    }

    pub fn constant(field: PrimeField, c: i64) -> Self {
        Self::from_residues(field, vec![field.reduce(c)])
    }

    /// θ
    pub fn theta(field: PrimeField) -> Self {
        Self::monomial(field, 1, 1)
    }

    /// c·θ^deg
    pub fn monomial(field: PrimeField, c: i64, deg: usize) -> Self {
        let c = field.reduce(c);
        if c == 0 {
            return Self::zero(field);
        }
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c;
        PolyA { p: field.p(), coeffs }
    }

    /// Builds from signed coefficients in ascending degree order.
    pub fn from_coeffs(field: PrimeField, coeffs: &[i64]) -> Self {
        Self::from_residues(field, coeffs.iter().map(|&c| field.reduce(c)).collect())
    }

    /// Builds from residues already in `[0, p)`.
    pub fn from_residues(field: PrimeField, coeffs: Vec<u32>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < field.p()));
        let mut poly = PolyA { p: field.p(), coeffs };
        poly.trim();
        poly
    }

    /// The constant `c` in the same ring as `self`.
    pub fn constant_like(&self, c: u32) -> Self {
        PolyA::raw(self.p, vec![c % self.p])
    }

    fn raw(p: u32, coeffs: Vec<u32>) -> Self {
        let mut poly = PolyA { p, coeffs };
        poly.trim();
        poly
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    /// The characteristic of the coefficient field.
    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.p).expect("polynomials are only built from valid fields")
    }

    #[inline]
    fn fld(&self) -> FieldOps {
        FieldOps(self.p)
    }

    /// Ascending coefficients, highest one nonzero.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 1
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    /// Lowest index with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = self.fld();
        let c = c % self.p;
        if c == 0 {
            return PolyA { p: self.p, coeffs: Vec::new() };
        }
        PolyA::raw(self.p, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// self · θ^k
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        PolyA { p: self.p, coeffs }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn make_monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.fld().inv(self.leading());
        self.scale(inv)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = PolyA { p: self.p, coeffs: vec![1] };
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Quotient and remainder; `ZeroDivisor` when `divisor` is zero.
    pub fn divmod(&self, divisor: &PolyA) -> Result<(PolyA, PolyA)> {
        if divisor.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let f = self.fld();
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((PolyA { p: self.p, coeffs: Vec::new() }, self.clone()));
        }
        let lead_inv = f.inv(divisor.leading());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u32; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = f.mul(rem[i + dd], lead_inv);
            quot[i] = c;
            if c == 0 {
                continue;
            }
            let neg_c = f.neg(c);
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = f.add(rem[i + j], f.mul(neg_c, d));
            }
        }
        rem.truncate(dd);
        Ok((PolyA::raw(self.p, quot), PolyA::raw(self.p, rem)))
    }

    /// Exact division; panics in debug builds if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &PolyA) -> Result<PolyA> {
        let (q, r) = self.divmod(divisor)?;
        debug_assert!(r.is_zero(), "inexact division");
        Ok(q)
    }

    /// Monic gcd; zero when both inputs are zero.
    pub fn gcd(&self, other: &PolyA) -> PolyA {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divmod(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// Evaluates at θ = x in F_p.
    pub fn eval(&self, x: u32) -> u32 {
        let f = self.fld();
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// The polynomial f(θ + c).
    pub fn translate(&self, c: u32) -> PolyA {
        let f = self.fld();
        let c = c % self.p;
        if c == 0 || self.is_constant() {
            return self.clone();
        }
        // Horner with the linear factor (θ + c).
        let mut acc: Vec<u32> = Vec::with_capacity(self.coeffs.len());
        for &a in self.coeffs.iter().rev() {
            // acc <- acc·(θ + c) + a
            let mut next = vec![0u32; acc.len() + 1];
            for (i, &v) in acc.iter().enumerate() {
                next[i + 1] = f.add(next[i + 1], v);
                next[i] = f.add(next[i], f.mul(v, c));
            }
            next[0] = f.add(next[0], a);
            acc = next;
        }
        PolyA::raw(self.p, acc)
    }

    /// Canonical text: descending θ-degree, zero terms omitted, e.g.
    /// `2*θ^12 + θ^10 + 2`.
    pub fn to_text(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (deg, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match deg {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{deg}"),
            };
            parts.push(match (c, deg) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        parts.join(" + ")
    }

    /// Number of nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }
}

impl fmt::Display for PolyA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("θ"))
    }
}

impl fmt::Debug for PolyA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyA[F_{}]({})", self.p, self.to_text("θ"))
    }
}

#[derive(Clone, Copy)]
struct FieldOps(u32);

impl FieldOps {
    #[inline]
    fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }
    #[inline]
    fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }
    #[inline]
    fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }
    fn inv(self, a: u32) -> u32 {
        let (mut base, mut e, mut acc) = (a as u64, self.0 as u64 - 2, 1u64);
        let m = self.0 as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        acc as u32
    }
}

/// Accumulates `a·b` into `acc` without reducing mod p.
///
/// Each product of residues is below 2^32, so callers may add up to 2^32
/// products into one slot before reducing.
#[inline]
pub(crate) fn mul_accumulate(acc: &mut [u64], a: &[u32], b: &[u32]) {
    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    for (i, &x) in short.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let x = x as u64;
        let dst = &mut acc[i..i + long.len()];
        for (d, &y) in dst.iter_mut().zip(long) {
            *d += x * y as u64;
        }
    }
}

/// Reduces an accumulator buffer into a trimmed polynomial.
pub(crate) fn from_accumulator(p: u32, acc: &[u64]) -> PolyA {
    let m = p as u64;
    PolyA::raw(p, acc.iter().map(|&v| (v % m) as u32).collect())
}

impl<'a> Add<&'a PolyA> for &'a PolyA {
    type Output = PolyA;
    fn add(self, rhs: &PolyA) -> PolyA {
        debug_assert_eq!(self.p, rhs.p);
        let f = self.fld();
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (&self.coeffs, &rhs.coeffs)
        } else {
            (&rhs.coeffs, &self.coeffs)
        };
        let mut out = long.clone();
        for (o, &s) in out.iter_mut().zip(short.iter()) {
            *o = f.add(*o, s);
        }
        PolyA::raw(self.p, out)
    }
}

impl<'a> Sub<&'a PolyA> for &'a PolyA {
    type Output = PolyA;
    fn sub(self, rhs: &PolyA) -> PolyA {
        self + &(-rhs)
    }
}

impl Neg for &PolyA {
    type Output = PolyA;
    fn neg(self) -> PolyA {
        let f = self.fld();
        PolyA { p: self.p, coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }
}

impl Neg for PolyA {
    type Output = PolyA;
    fn neg(self) -> PolyA {
        -&self
    }
}

impl<'a> Mul<&'a PolyA> for &'a PolyA {
    type Output = PolyA;
    fn mul(self, rhs: &PolyA) -> PolyA {
        debug_assert_eq!(self.p, rhs.p);
        if self.is_zero() || rhs.is_zero() {
            return PolyA { p: self.p, coeffs: Vec::new() };
        }
        let mut acc = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        mul_accumulate(&mut acc, &self.coeffs, &rhs.coeffs);
        from_accumulator(self.p, &acc)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<PolyA> for PolyA {
            type Output = PolyA;
            fn $m(self, rhs: PolyA) -> PolyA {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a PolyA> for PolyA {
            type Output = PolyA;
            fn $m(self, rhs: &'a PolyA) -> PolyA {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
