//! Closed-form coefficient families of power-eigenvalue eigenforms.
//!
//! For a double-cuspidal eigenform with T_θ f = θ^{1+q^{N_1}+…+q^{N_ℓ}} f,
//! the coefficients a_{1+q^ν} indexed by length-ℓ multisets ν are given by
//! `ℓ!·a_{1+q^ν} = a_{1+ℓ}·Σ_σ B^σ(ν)`. This module provides the multiset
//! bookkeeping, that formula and its vanishing criterion, and the universal
//! multivariate recurrence behind it.

mod closed_form;
mod multiset;
mod mvpoly;
mod universal;

pub use closed_form::{
    b_sigma, b_sigma_sum, closed_form_coeff, lowest_term_check, u_set_count, u_set_count_brute, vanishing_predicate,
    LowestTerm,
};
pub use multiset::{multiset_of, EigenExponents, Multiset};
pub use mvpoly::MVPoly;
pub use universal::{
    is_symmetric, reconstruct_by_uniqueness, recurrence_check, specialize_solution, uniqueness_probe, universal_p,
    universal_solution, xt_identity_check, xt_identity_sides, UniquenessReport,
};
