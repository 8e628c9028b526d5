use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A multiset of nonnegative integers, kept sorted non-ascending.
///
/// `ν = {ν_1, …, ν_ℓ}` indexes the coefficient `a_{1+q^ν}` with
/// `q^ν = q^{ν_1} + … + q^{ν_ℓ}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiset {
    entries: Vec<u32>,
}

/// Exponents `N` of a power eigenvalue `θ^{1+q^{N_1}+…+q^{N_ℓ}}`.
pub type EigenExponents = Multiset;

impl Multiset {
    pub fn new(mut entries: Vec<u32>) -> Self {
        entries.sort_unstable_by(|a, b| b.cmp(a));
        Multiset { entries }
    }

    /// `{0, …, 0}` of length `len`.
    pub fn zeros(len: usize) -> Self {
        Multiset { entries: vec![0; len] }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_all_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// `q^ν = Σ q^{ν_i}`.
    pub fn q_power_sum(&self, q: u32) -> Result<u64> {
        self.entries.iter().try_fold(0u64, |acc, &e| {
            (q as u64)
                .checked_pow(e)
                .and_then(|t| acc.checked_add(t))
                .ok_or(Error::DegreeOverflow { degree: e as u64, bound: 63 })
        })
    }

    /// `1 + q^ν`.
    pub fn index_of(&self, q: u32) -> Result<u64> {
        Ok(1 + self.q_power_sum(q)?)
    }

    /// ν⁺(I): entries at the positions in the bitmask `mask` (over the
    /// sorted order) are incremented, then the result is re-sorted.
    pub fn nu_plus(&self, mask: u32) -> Multiset {
        let entries =
            self.entries.iter().enumerate().map(|(i, &e)| if mask >> i & 1 == 1 { e + 1 } else { e }).collect();
        Multiset::new(entries)
    }

    /// `Σ_{j ∉ I} q^{ν_j}`, the exponent contributed by the complement of `mask`.
    pub fn complement_power_sum(&self, mask: u32, q: u32) -> u64 {
        self.entries.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 0).map(|(_, &e)| (q as u64).pow(e)).sum()
    }

    /// All multisets of length `len` with entries in `0..=max_entry`, in
    /// ascending lexicographic order of their sorted entry vectors.
    pub fn enumerate(len: usize, max_entry: u32) -> Vec<Multiset> {
        fn rec(len: usize, cap: u32, prefix: &mut Vec<u32>, out: &mut Vec<Multiset>) {
            if prefix.len() == len {
                out.push(Multiset { entries: prefix.clone() });
                return;
            }
            for e in 0..=cap {
                prefix.push(e);
                rec(len, e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(len, max_entry, &mut Vec::with_capacity(len), &mut out);
        out.sort();
        out
    }
}

/// The multiset ν with `n = 1 + q^ν`, read off the base-q digits of n − 1.
pub fn multiset_of(n: u64, q: u32) -> Result<Multiset> {
    if n <= 1 {
        return Err(Error::Precondition(format!("multiset_of needs n ≥ 2, got {n}")));
    }
    let mut rest = n - 1;
    let mut entries = Vec::new();
    let mut pos = 0u32;
    while rest > 0 {
        let digit = rest % q as u64;
        entries.extend(std::iter::repeat_n(pos, digit as usize));
        rest /= q as u64;
        pos += 1;
    }
    Ok(Multiset::new(entries))
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl FromStr for Multiset {
    type Err = Error;

    /// Accepts `{2,1,0}` (braces optional, any order, whitespace ignored);
    /// `{}` is the empty multiset.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let inner = trimmed.strip_prefix('{').unwrap_or(trimmed);
        let inner = match inner.strip_suffix('}') {
            Some(body) => body,
            None if trimmed.starts_with('{') => return Err(Error::parse(s.len(), "expected '}'")),
            None => inner,
        };
        if inner.trim().is_empty() {
            return if trimmed.starts_with('{') {
                Ok(Multiset::new(Vec::new()))
            } else {
                Err(Error::parse(0, "empty multiset"))
            };
        }
        let mut entries = Vec::new();
        let mut offset = s.find(inner).unwrap_or(0);
        for part in inner.split(',') {
            let value =
                part.trim().parse::<u32>().map_err(|_| Error::parse(offset, format!("bad entry '{}'", part.trim())))?;
            entries.push(value);
            offset += part.len() + 1;
        }
        Ok(Multiset::new(entries))
    }
}
