//! The specialized products B^σ(ν), the closed coefficient formula for
//! power-eigenvalue eigenforms, and the vanishing criterion.

use itertools::Itertools;

use super::multiset::{EigenExponents, Multiset};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::PolyA;
use crate::rat::RatK;

fn check_lengths(nu: &Multiset, n: &EigenExponents) -> Result<()> {
    if nu.len() != n.len() {
        return Err(Error::LengthMismatch(nu.len(), n.len()));
    }
    Ok(())
}

fn check_factorial(field: PrimeField, len: usize) -> Result<()> {
    if len >= field.p() as usize {
        return Err(Error::FactorialVanishes { len, p: field.p() });
    }
    Ok(())
}

/// B^σ(ν) = Π_i Π_{j<ν_i} (θ^{q^{N_σ(i)}} − θ^{q^j}), pairing the sorted ν
/// with the σ-permuted sorted N. `sigma` is 0-based.
pub fn b_sigma(field: PrimeField, nu: &Multiset, n: &EigenExponents, sigma: &[usize]) -> Result<PolyA> {
    check_lengths(nu, n)?;
    if sigma.len() != nu.len() {
        return Err(Error::LengthMismatch(sigma.len(), nu.len()));
    }
    let mut acc = PolyA::one(field);
    for (i, &nu_i) in nu.entries().iter().enumerate() {
        let x = field.frob_power(n.entries()[sigma[i]])?;
        for j in 0..nu_i {
            let factor = &x - &field.frob_power(j)?;
            if factor.is_zero() {
                return Ok(PolyA::zero(field));
            }
            acc = &acc * &factor;
        }
    }
    Ok(acc)
}

/// Σ_{σ ∈ S_ℓ} B^σ(ν).
pub fn b_sigma_sum(field: PrimeField, nu: &Multiset, n: &EigenExponents) -> Result<PolyA> {
    check_lengths(nu, n)?;
    let mut acc = PolyA::zero(field);
    for sigma in (0..nu.len()).permutations(nu.len()) {
        acc = &acc + &b_sigma(field, nu, n, &sigma)?;
    }
    Ok(acc)
}

/// a_{1+q^ν} = a_{1+ℓ}·(1/ℓ!)·Σ_σ B^σ(ν).
pub fn closed_form_coeff(field: PrimeField, nu: &Multiset, n: &EigenExponents, a_base: &RatK) -> Result<RatK> {
    check_factorial(field, nu.len())?;
    let sum = b_sigma_sum(field, nu, n)?;
    let inv = field.inv(field.factorial(nu.len() as u64))?;
    Ok(a_base.mul_poly(&sum).scale(inv))
}

/// True iff some N_i < ν_i in the sorted pairing; by the vanishing theorem
/// this is equivalent to Σ_σ B^σ(ν) = 0.
pub fn vanishing_predicate(nu: &Multiset, n: &EigenExponents) -> Result<bool> {
    check_lengths(nu, n)?;
    Ok(nu.entries().iter().zip(n.entries()).any(|(v, m)| m < v))
}

fn check_admissible(field: PrimeField, nu: &Multiset, n: &EigenExponents) -> Result<()> {
    check_lengths(nu, n)?;
    if nu.len() >= field.q() as usize {
        return Err(Error::LengthExceedsQMinus1 { len: nu.len(), q: field.q() });
    }
    if vanishing_predicate(nu, n)? {
        return Err(Error::Precondition(format!("need ν_i ≤ N_i for all i, got ν = {nu}, N = {n}")));
    }
    Ok(())
}

/// |U| = Π_{j=2}^ℓ (j − i_j + 1) with i_j = min{i : N_j ≥ ν_i}.
pub fn u_set_count(field: PrimeField, nu: &Multiset, n: &EigenExponents) -> Result<u64> {
    check_admissible(field, nu, n)?;
    let nus = nu.entries();
    let mut count = 1u64;
    for (j0, &n_j) in n.entries().iter().enumerate().skip(1) {
        let i_j = nus.iter().position(|&v| n_j >= v).expect("ν_j ≤ N_j") + 1;
        count *= (j0 + 1 - i_j + 1) as u64;
    }
    Ok(count)
}

/// Number of σ ∈ S_ℓ with B^σ(ν) ≠ 0, by enumeration.
pub fn u_set_count_brute(field: PrimeField, nu: &Multiset, n: &EigenExponents) -> Result<u64> {
    check_lengths(nu, n)?;
    let mut count = 0;
    for sigma in (0..nu.len()).permutations(nu.len()) {
        if !b_sigma(field, nu, n, &sigma)?.is_zero() {
            count += 1;
        }
    }
    Ok(count)
}

/// The lowest-degree term of Σ_σ B^σ(ν) against the predicted |U|·(−θ)^w.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowestTerm {
    /// w = Σ (q^{ν_i} − 1)/(q − 1).
    pub w: u64,
    pub u_count: u64,
    /// Lowest degree actually present in the sum.
    pub degree: Option<usize>,
    /// Its coefficient.
    pub coefficient: u32,
    /// |U|·(−1)^w mod p.
    pub expected: u32,
}

impl LowestTerm {
    pub fn holds(&self) -> bool {
        self.degree == Some(self.w as usize) && self.coefficient == self.expected
    }
}

pub fn lowest_term_check(field: PrimeField, nu: &Multiset, n: &EigenExponents) -> Result<LowestTerm> {
    let u_count = u_set_count(field, nu, n)?;
    let q = field.q() as u64;
    let w: u64 = nu.entries().iter().map(|&v| (q.pow(v) - 1) / (q - 1)).sum();
    let sum = b_sigma_sum(field, nu, n)?;
    let degree = sum.low_degree();
    let coefficient = degree.map_or(0, |d| sum.coeff(d));
    let magnitude = (u_count % field.p() as u64) as u32;
    let expected = if w % 2 == 1 { field.neg(magnitude) } else { magnitude };
    Ok(LowestTerm { w, u_count, degree, coefficient, expected })
}
