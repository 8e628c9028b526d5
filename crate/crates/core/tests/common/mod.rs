#![allow(dead_code)]

use drinfeld_core::forms::{double_cuspidal_basis, eigenform_search, FormExpr, Forms};
use drinfeld_core::hecke::hecke_required_prec;
use drinfeld_core::{eigencoeff::Multiset, PolyA, PrimeField, TSeries};

pub fn field(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

pub fn fixture(name: &str) -> TSeries {
    let text = match name {
        "delta" => include_str!("../../fixtures/q3_delta_prec32.json"),
        "phi12" => include_str!("../../fixtures/q3_phi12_prec32.json"),
        "phi20" => include_str!("../../fixtures/q3_phi20_prec32.json"),
        "phi22" => include_str!("../../fixtures/q3_phi22_prec32.json"),
        other => panic!("no fixture {other}"),
    };
    TSeries::from_json_str(text).unwrap()
}

/// A Hecke eigenform for T_θ with eigenvalue θ^{1 + Σ q^{N_i}}.
pub struct Eigen {
    pub name: &'static str,
    pub weight: u32,
    pub series: TSeries,
    /// Exponent of θ in the eigenvalue.
    pub lam_exp: usize,
    /// N in the eigenvalue θ^{1+q^N}; empty when the exponent is 1.
    pub n: Multiset,
}

pub fn eval(forms: &Forms, expr: &str, prec: usize) -> TSeries {
    FormExpr::parse(forms.field(), expr).unwrap().eval(forms, prec).unwrap()
}

/// φ₂₀ found by kernel search in the weight-20 double-cuspidal space.
pub fn phi20(forms: &Forms, prec: usize) -> TSeries {
    let basis = double_cuspidal_basis(forms, 20, 0, prec).unwrap();
    let theta4 = PolyA::monomial(forms.field(), 1, 4);
    let found = eigenform_search(&basis, &theta4).unwrap();
    assert_eq!(found.len(), 1, "expected a unique eigenform of weight 20");
    found.into_iter().next().unwrap().series
}

/// Input precision that certifies T f below `out`.
pub fn input_prec(q: u32, out: usize) -> usize {
    hecke_required_prec(q, out)
}

pub fn q3_eigenforms(forms: &Forms, prec: usize) -> Vec<Eigen> {
    let ms = |s: &str| s.parse::<Multiset>().unwrap();
    vec![
        Eigen { name: "g", weight: 2, series: forms.g(prec).unwrap(), lam_exp: 2, n: ms("{0}") },
        Eigen { name: "Delta", weight: 8, series: forms.delta(prec).unwrap(), lam_exp: 2, n: ms("{0}") },
        Eigen { name: "h", weight: 4, series: forms.h(prec).unwrap(), lam_exp: 1, n: Multiset::new(vec![]) },
        Eigen { name: "phi12", weight: 12, series: eval(forms, "h^2 g^2", prec), lam_exp: 4, n: ms("{1}") },
        Eigen { name: "phi20", weight: 20, series: phi20(forms, prec), lam_exp: 4, n: ms("{1}") },
        Eigen {
            name: "phi22",
            weight: 22,
            series: eval(forms, "h^2 g^7 - (θ^3-θ) h^4 g^3", prec),
            lam_exp: 4,
            n: ms("{1}"),
        },
    ]
}

pub fn q5_eigenforms(forms: &Forms, prec: usize) -> Vec<Eigen> {
    vec![
        Eigen { name: "h", weight: 6, series: forms.h(prec).unwrap(), lam_exp: 1, n: Multiset::new(vec![]) },
        Eigen { name: "Delta", weight: 24, series: forms.delta(prec).unwrap(), lam_exp: 4, n: Multiset::zeros(3) },
    ]
}
