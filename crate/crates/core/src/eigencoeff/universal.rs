//! The universal recurrence
//!
//! b_ν·Π x_i = Σ_{I ⊆ {1..ℓ}} b_{ν⁺(I)}·Π_{j ∉ I} θ^{q^{ν_j}}
//!
//! in F_p[x_1, …, x_ℓ, θ], its symmetrized explicit solution, the translation
//! operator D_1, and an independent reconstruction of the solution from the
//! translation-invariance argument.

use std::collections::BTreeMap;

use itertools::Itertools;

use super::multiset::Multiset;
use super::mvpoly::MVPoly;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::PolyA;

fn check_length(field: PrimeField, len: usize) -> Result<()> {
    if len == 0 {
        return Err(Error::Precondition("ν must be nonempty".into()));
    }
    if len >= field.p() as usize {
        return Err(Error::FactorialVanishes { len, p: field.p() });
    }
    Ok(())
}

/// θ^{q^e} in the `ℓ + 1` variable ring.
fn theta_frob(field: PrimeField, len: usize, e: u32) -> Result<MVPoly> {
    let exp = field.q_pow(e)?;
    Ok(MVPoly::monomial(field, len + 1, len, exp as u32))
}

/// Π_i x_i.
fn x_product(field: PrimeField, len: usize) -> MVPoly {
    (0..len).fold(MVPoly::one(field, len + 1), |acc, i| acc.mul(&MVPoly::var(field, len + 1, i)))
}

/// P(ν) = Π_i Π_{j<ν_i} (x_i − θ^{q^j}).
pub fn universal_p(field: PrimeField, nu: &Multiset) -> Result<MVPoly> {
    let len = nu.len();
    if len == 0 {
        return Err(Error::Precondition("ν must be nonempty".into()));
    }
    let mut acc = MVPoly::one(field, len + 1);
    for (i, &v) in nu.entries().iter().enumerate() {
        let x = MVPoly::var(field, len + 1, i);
        for j in 0..v {
            acc = acc.mul(&x.sub(&theta_frob(field, len, j)?));
        }
    }
    Ok(acc)
}

/// σ ∈ S_ℓ acting on x-slots, θ fixed.
fn act(f: &MVPoly, sigma: &[usize]) -> MVPoly {
    let mut perm = sigma.to_vec();
    perm.push(sigma.len());
    f.permute(&perm)
}

/// (1/ℓ!)·Σ_{σ ∈ S_ℓ} σ(P(ν)).
pub fn universal_solution(field: PrimeField, nu: &Multiset) -> Result<MVPoly> {
    check_length(field, nu.len())?;
    let p = universal_p(field, nu)?;
    let len = nu.len();
    let mut acc = MVPoly::zero(field, len + 1);
    for sigma in (0..len).permutations(len) {
        acc = acc.add(&act(&p, &sigma));
    }
    let inv = field.inv(field.factorial(len as u64))?;
    Ok(acc.scale(inv))
}

/// The universal solution at x_i = θ^{q^{N_i}}.
pub fn specialize_solution(f: &MVPoly, n: &Multiset) -> Result<PolyA> {
    let field = f.field();
    let mut values: Vec<PolyA> = n.entries().iter().map(|&e| field.frob_power(e)).collect::<Result<_>>()?;
    values.push(PolyA::theta(field));
    f.specialize(&values)
}

/// True iff every x-permutation fixes `f`.
pub fn is_symmetric(f: &MVPoly) -> bool {
    let len = f.nvars() - 1;
    (0..len).permutations(len).all(|sigma| &act(f, &sigma) == f)
}

/// Checks the recurrence at ν for a family `b` indexed by multisets.
pub fn recurrence_check(field: PrimeField, b: &BTreeMap<Multiset, MVPoly>, nu: &Multiset) -> Result<bool> {
    let len = nu.len();
    let get = |m: &Multiset| b.get(m).ok_or_else(|| Error::MissingEntry(m.to_string()));
    let lhs = get(nu)?.mul(&x_product(field, len));
    let mut rhs = MVPoly::zero(field, len + 1);
    for mask in 0..(1u32 << len) {
        let mut term = get(&nu.nu_plus(mask))?.clone();
        for (j, &v) in nu.entries().iter().enumerate() {
            if mask >> j & 1 == 0 {
                term = term.mul(&theta_frob(field, len, v)?);
            }
        }
        rhs = rhs.add(&term);
    }
    Ok(lhs == rhs)
}

/// The identity Π x_i = Σ_I Π_{i∈I}(x_i − t_i)·Π_{j∉I} t_j, expanded in
/// 2ℓ variables (x's first, then t's).
pub fn xt_identity_check(field: PrimeField, len: usize) -> bool {
    xt_identity_sides(field, len, false).0 == xt_identity_sides(field, len, false).1
}

/// Both sides of the identity; with `t_zero` every t_i is replaced by 0.
pub fn xt_identity_sides(field: PrimeField, len: usize, t_zero: bool) -> (MVPoly, MVPoly) {
    let n = 2 * len;
    let x = |i| MVPoly::var(field, n, i);
    let t = |i| if t_zero { MVPoly::zero(field, n) } else { MVPoly::var(field, n, len + i) };
    let lhs = (0..len).fold(MVPoly::one(field, n), |acc, i| acc.mul(&x(i)));
    let mut rhs = MVPoly::zero(field, n);
    for mask in 0..(1u32 << len) {
        let mut term = MVPoly::one(field, n);
        for i in 0..len {
            term = term.mul(&if mask >> i & 1 == 1 { x(i).sub(&t(i)) } else { t(i) });
        }
        rhs = rhs.add(&term);
    }
    (lhs, rhs)
}

/// Rebuilds the translation-invariant solution with b_{0,…,0} = 1 from the
/// uniqueness argument alone, for all ν of length ℓ with entries ≤ `max_entry`.
///
/// For ν ≠ 0 let μ_j = max(ν_j − 1, 0), e = #zeros of ν, e′ = #zeros of μ.
/// Applying D_e to the recurrence at μ kills every term with |I^c| < e and
/// leaves
///
/// C(e′, e)·e!·b_ν = b_μ·D_e(Π x_i) − Σ_{|I| ≤ ℓ−e, μ⁺(I) ≠ ν} b_{μ⁺(I)}·D_e(Π_{j∉I} θ^{q^{μ_j}})
///
/// where every b on the right is lexicographically smaller than ν.
pub fn reconstruct_by_uniqueness(field: PrimeField, len: usize, max_entry: u32) -> Result<BTreeMap<Multiset, MVPoly>> {
    check_length(field, len)?;
    let mut b: BTreeMap<Multiset, MVPoly> = BTreeMap::new();
    let xs = x_product(field, len);
    for nu in Multiset::enumerate(len, max_entry) {
        if nu.is_all_zero() {
            b.insert(nu, MVPoly::one(field, len + 1));
            continue;
        }
        let mu = Multiset::new(nu.entries().iter().map(|&v| v.saturating_sub(1)).collect());
        let zeros = |m: &Multiset| m.entries().iter().filter(|&&v| v == 0).count() as u32;
        let (e, e_prime) = (zeros(&nu), zeros(&mu));
        let mut acc = b[&mu].mul(&xs.d_pow(e));
        let mut hits = 0u64;
        for mask in 0..(1u32 << len) {
            let size = mask.count_ones();
            if size > len as u32 - e {
                continue;
            }
            let target = mu.nu_plus(mask);
            if target == nu {
                hits += 1;
                continue;
            }
            let prev = b.get(&target).ok_or_else(|| Error::MissingEntry(target.to_string()))?;
            let mut theta_part = MVPoly::one(field, len + 1);
            for (j, &v) in mu.entries().iter().enumerate() {
                if mask >> j & 1 == 0 {
                    theta_part = theta_part.mul(&theta_frob(field, len, v)?);
                }
            }
            acc = acc.sub(&prev.mul(&theta_part.d_pow(e)));
        }
        let scale = field.mul(field.binom(e_prime as u64, e as u64), field.factorial(e as u64));
        let exact: u64 = (0..e as u64).map(|i| e_prime as u64 - i).product::<u64>() / (1..=e as u64).product::<u64>();
        if hits != exact {
            return Err(Error::Precondition(format!("expected C({e_prime},{e}) subsets hitting {nu}, found {hits}")));
        }
        b.insert(nu, acc.scale(field.inv(scale)?));
    }
    Ok(b)
}

/// Outcome of [`uniqueness_probe`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniquenessReport {
    pub checked: usize,
    /// Members of the explicit family with D_1 ≠ 0.
    pub not_invariant: Vec<Multiset>,
    /// Multisets where the recurrence fails (only those whose ν⁺ stay in range).
    pub recurrence_failures: Vec<Multiset>,
    /// Multisets where the reconstruction differs from the explicit family.
    pub mismatches: Vec<Multiset>,
}

impl UniquenessReport {
    pub fn holds(&self) -> bool {
        self.not_invariant.is_empty() && self.recurrence_failures.is_empty() && self.mismatches.is_empty()
    }
}

/// Builds the explicit family for all ν of length ℓ with entries ≤
/// `max_entry`, checks translation invariance and the recurrence, and
/// compares with [`reconstruct_by_uniqueness`].
pub fn uniqueness_probe(field: PrimeField, len: usize, max_entry: u32) -> Result<UniquenessReport> {
    check_length(field, len)?;
    let all = Multiset::enumerate(len, max_entry + 1);
    let explicit: BTreeMap<Multiset, MVPoly> =
        all.iter().map(|nu| Ok((nu.clone(), universal_solution(field, nu)?))).collect::<Result<_>>()?;
    let rebuilt = reconstruct_by_uniqueness(field, len, max_entry)?;
    let mut report =
        UniquenessReport { checked: 0, not_invariant: vec![], recurrence_failures: vec![], mismatches: vec![] };
    for nu in Multiset::enumerate(len, max_entry) {
        report.checked += 1;
        let b = &explicit[&nu];
        if !b.d1().is_zero() {
            report.not_invariant.push(nu.clone());
        }
        if !recurrence_check(field, &explicit, &nu)? {
            report.recurrence_failures.push(nu.clone());
        }
        if rebuilt.get(&nu) != Some(b) {
            report.mismatches.push(nu.clone());
        }
    }
    Ok(report)
}
