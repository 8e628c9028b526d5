use rayon::prelude::*;

use super::generators::Forms;
use crate::error::{Error, Result};
use crate::hecke::{hecke_apply, hecke_required_prec, DegOnePrime};
use crate::linalg::kernel;
use crate::poly::PolyA;
use crate::rat::RatK;
use crate::series::{Meta, TSeries};

/// The monomials g^i·h^j spanning the double-cuspidal forms of weight k
/// and type m (those with j ≥ 2), expanded to a common precision.
#[derive(Debug, Clone)]
pub struct GradedBasis {
    pub weight: u32,
    pub ty: u32,
    /// `(i, j)` for g^i·h^j, ordered by increasing j.
    pub labels: Vec<(u32, u32)>,
    pub series: Vec<TSeries>,
}

impl GradedBasis {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn prec(&self) -> usize {
        self.series.iter().map(TSeries::prec).min().unwrap_or(0)
    }
}

/// Exponent pairs (i, j) with i(q−1) + j(q+1) = k, j ≡ m mod (q−1), j ≥ 2.
pub fn double_cuspidal_monomials(q: u32, k: u32, m: u32) -> Vec<(u32, u32)> {
    let types = (q - 1).max(1);
    (2..=k / (q + 1))
        .filter(|j| j % types == m % types)
        .filter_map(|j| {
            let rest = k - j * (q + 1);
            rest.is_multiple_of(q - 1).then_some((rest / (q - 1), j))
        })
        .collect()
}

pub fn double_cuspidal_basis(forms: &Forms, k: u32, m: u32, prec: usize) -> Result<GradedBasis> {
    let q = forms.field().q();
    if m >= (q - 1).max(1) {
        return Err(Error::Precondition(format!("type {m} out of range for q = {q}")));
    }
    let labels = double_cuspidal_monomials(q, k, m);
    let (g, h) = if labels.is_empty() { (None, None) } else { (Some(forms.g(prec)?), Some(forms.h(prec)?)) };
    let series = labels
        .par_iter()
        .map(|&(i, j)| {
            let (g, h) = (g.as_ref().expect("nonempty basis"), h.as_ref().expect("nonempty basis"));
            let s = g.pow(i as u64)?.mul(&h.pow(j as u64)?)?.truncate(prec);
            Ok(s.with_meta(Some(Meta { weight: k, ty: m })))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GradedBasis { weight: k, ty: m, labels, series })
}

/// A normalized eigenform found in the span of a basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eigenform {
    /// Coordinates against the basis monomials.
    pub coords: Vec<RatK>,
    pub series: TSeries,
}

/// Combines the basis with `coords`, at the basis precision.
pub fn combine(basis: &GradedBasis, coords: &[RatK]) -> TSeries {
    let field = basis.series[0].field();
    let mut acc = TSeries::zero(field, basis.prec());
    for (s, c) in basis.series.iter().zip(coords) {
        acc = acc.add(&s.scale(c));
    }
    acc.with_meta(Some(Meta { weight: basis.weight, ty: basis.ty }))
}

/// All f in the span of `basis` with T_θ f = λ·f to the certified precision
/// of the basis, as a kernel basis over K with each form scaled so its lowest
/// nonzero coefficient is 1.
pub fn eigenform_search(basis: &GradedBasis, eigenvalue: &PolyA) -> Result<Vec<Eigenform>> {
    if basis.dim() == 0 {
        return Ok(Vec::new());
    }
    let field = basis.series[0].field();
    let q = field.q();
    let dim = basis.dim();
    let p = DegOnePrime::theta(field);
    let images = basis
        .series
        .par_iter()
        .map(|s| {
            let t = hecke_apply(s, p, basis.weight)?;
            Ok(t.sub(&s.truncate(t.prec()).scale_poly(eigenvalue)))
        })
        .collect::<Result<Vec<_>>>()?;
    let rows_available = images.iter().map(TSeries::prec).min().unwrap_or(0);
    if rows_available < dim + 2 {
        return Err(Error::InsufficientPrecision {
            needed: hecke_required_prec(q, dim + 2) as u64,
            available: basis.prec() as u64,
        });
    }
    let rows: Vec<Vec<RatK>> = (0..rows_available)
        .map(|n| images.iter().map(|img| img.coeff(n).expect("below image precision")).collect())
        .filter(|row: &Vec<RatK>| row.iter().any(|c| !c.is_zero()))
        .collect();
    let kernel_basis = if rows.is_empty() {
        (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { RatK::one(field) } else { RatK::zero(field) }).collect())
            .collect()
    } else {
        kernel(&rows, dim)?
    };
    kernel_basis
        .into_iter()
        .map(|coords| {
            let series = combine(basis, &coords);
            let (_, lead) = series
                .leading_term()
                .ok_or_else(|| Error::Precondition("kernel vector gives the zero form at this precision".into()))?;
            let norm = lead.inv()?;
            let coords: Vec<RatK> = coords.iter().map(|c| c * &norm).collect();
            Ok(Eigenform { series: series.scale(&norm), coords })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn monomial_enumeration_matches_brute_force() {
        for q in [3u32, 5] {
            for k in 0..80 {
                for m in 0..q - 1 {
                    let mut brute = Vec::new();
                    for j in 0..=k {
                        for i in 0..=k {
                            if i * (q - 1) + j * (q + 1) == k && j >= 2 && j % (q - 1) == m {
                                brute.push((i, j));
                            }
                        }
                    }
                    assert_eq!(double_cuspidal_monomials(q, k, m), brute, "q={q} k={k} m={m}");
                }
            }
        }
        assert_eq!(double_cuspidal_monomials(3, 12, 0), vec![(2, 2)]);
        assert_eq!(double_cuspidal_monomials(3, 20, 0), vec![(6, 2), (2, 4)]);
        assert!(double_cuspidal_monomials(3, 3, 0).is_empty());
    }

    #[test]
    fn empty_basis_and_precision_errors() {
        let forms = Forms::new(PrimeField::new(3).unwrap());
        let b = double_cuspidal_basis(&forms, 3, 0, 30).unwrap();
        assert_eq!(b.dim(), 0);
        assert!(eigenform_search(&b, &PolyA::theta(forms.field())).unwrap().is_empty());
        let tiny = double_cuspidal_basis(&forms, 20, 0, 6).unwrap();
        assert!(matches!(
            eigenform_search(&tiny, &PolyA::theta(forms.field())),
            Err(Error::InsufficientPrecision { .. })
        ));
    }
}
