//! Drinfeld modular forms of level one as t-expansions: the generators h, g
//! and Δ, Petrov's A-expansions f_{k,n}, polynomial expressions in them,
//! bases of double-cuspidal forms, and eigenform search over K.

mod basis;
mod expr;
mod generators;

pub use basis::{combine, double_cuspidal_basis, double_cuspidal_monomials, eigenform_search, Eigenform, GradedBasis};
pub use expr::{FormExpr, FormTerm, Generator};
pub use generators::Forms;

use crate::error::{Error, Result};
use crate::series::TSeries;

/// True when every coefficient is fixed by θ ↦ θ + c for all c ∈ F_p.
pub fn is_translation_invariant(f: &TSeries) -> bool {
    (1..f.field().p()).all(|c| &f.translate_theta(c) == f)
}

/// A failed instance of one of the Δ coefficient properties below.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GekelerViolation {
    /// Index i in Δ = Σ a_i s^i, s = t².
    pub index: usize,
    pub property: &'static str,
}

/// Outcome of [`gekeler_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GekelerReport {
    /// Number of s-indices inspected.
    pub checked: usize,
    pub violations: Vec<GekelerViolation>,
}

/// Checks the coefficient properties of Δ over F_3 in the variable s = t²:
/// only even t-powers occur, a_i ≠ 0 forces i ≡ 0, 1 mod 3, deg a_{1+i} ≤ i,
/// and deg a_{1+i} = i exactly when i ≡ 0, 3 mod 9.
pub fn gekeler_check(delta: &TSeries) -> Result<GekelerReport> {
    if delta.field().p() != 3 {
        return Err(Error::Precondition("these properties are stated for q = 3".into()));
    }
    let mut violations = Vec::new();
    let mut flag = |index, property| violations.push(GekelerViolation { index, property });
    for (n, _) in delta.terms() {
        if n % 2 == 1 {
            flag(n, "odd power of t");
        }
    }
    let s_prec = delta.prec().div_ceil(2);
    for i in 0..s_prec {
        let a = delta.coeff(2 * i)?;
        if !a.is_zero() && i % 3 == 2 {
            flag(i, "a_i ≠ 0 with i ≡ 2 mod 3");
        }
        if i == 0 {
            continue;
        }
        let shifted = i - 1;
        let degree = a.num().degree();
        if !a.is_integral() {
            flag(i, "non-integral coefficient");
        }
        if degree.is_some_and(|d| d > shifted) {
            flag(i, "deg a_{1+i} > i");
        }
        let top = degree == Some(shifted);
        let predicted = shifted % 9 == 0 || shifted % 9 == 3;
        if top != predicted {
            flag(i, "deg a_{1+i} = i disagrees with i ≡ 0, 3 mod 9");
        }
    }
    Ok(GekelerReport { checked: s_prec, violations })
}
