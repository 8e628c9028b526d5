//! The Hecke operator T_{𝔭,k} for monic primes 𝔭 = θ + c of degree one,
//! acting on t-expansions through Gekeler's coefficient formula
//!
//! a_n(T f) = 𝔭^k Σ_{jq+s(q−1)=n} (−1)^s C(j+s−1, s) 𝔭^s a_j
//!          + Σ_{i=0}^{n−1} C(n−1, i) 𝔭^{n−i} a_{n+i(q−1)}.
//!
//! Output coefficient n reads input coefficients up to n + (n−1)(q−1), so
//! the operator shrinks precision; see [`hecke_required_prec`].

use rayon::prelude::*;

use crate::eigencoeff::Multiset;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::PolyA;
use crate::rat::RatK;
use crate::series::TSeries;

/// The prime 𝔭 = θ + c.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegOnePrime {
    field: PrimeField,
    c: u32,
}

impl DegOnePrime {
    pub fn new(field: PrimeField, c: i64) -> Self {
        DegOnePrime { field, c: field.reduce(c) }
    }

    /// θ itself.
    pub fn theta(field: PrimeField) -> Self {
        DegOnePrime { field, c: 0 }
    }

    /// Accepts a monic polynomial of degree one.
    pub fn from_poly(a: &PolyA) -> Result<Self> {
        match a.degree() {
            Some(1) if a.is_monic() => Ok(DegOnePrime { field: a.field(), c: a.coeff(0) }),
            Some(1) => Err(Error::MonicRequired),
            Some(d) => Err(Error::UnsupportedPrimeDegree(d)),
            None => Err(Error::ZeroArgument),
        }
    }

    pub fn constant(&self) -> u32 {
        self.c
    }

    pub fn poly(&self) -> PolyA {
        &PolyA::theta(self.field) + &PolyA::constant(self.field, self.c as i64)
    }
}

/// Input precision needed to certify the output below `out_prec`: with
/// N = out_prec − 1 the largest coefficient read is a_{N+(N−1)(q−1)}.
pub fn hecke_required_prec(q: u32, out_prec: usize) -> usize {
    if out_prec <= 1 {
        return out_prec;
    }
    let n = out_prec - 1;
    n + (n - 1) * (q as usize - 1) + 1
}

/// The largest output precision certified by an input of precision `prec`;
/// inverse of [`hecke_required_prec`].
pub fn hecke_certified_prec(q: u32, prec: usize) -> usize {
    if prec == 0 {
        return 0;
    }
    let q = q as usize;
    prec.saturating_add(q - 2) / q + 1
}

fn check_weight(f: &TSeries, k: u32) -> Result<()> {
    match f.meta() {
        Some(meta) if meta.weight != k => Err(Error::WeightMismatch { operator: k, form: meta.weight }),
        _ => Ok(()),
    }
}

/// T_{𝔭,k} f at the largest certified precision.
pub fn hecke_apply(f: &TSeries, p: DegOnePrime, k: u32) -> Result<TSeries> {
    let out = hecke_certified_prec(f.field().q(), f.prec());
    hecke_apply_to(f, p, k, out)
}

/// T_{𝔭,k} f exact below `out_prec`.
///
/// A nonzero constant term is accepted and maps to 𝔭^k·a_0: the q translates
/// of a constant sum to zero in characteristic p, and a_0 does not feed any
/// coefficient with n ≥ 1.
pub fn hecke_apply_to(f: &TSeries, p: DegOnePrime, k: u32, out_prec: usize) -> Result<TSeries> {
    check_weight(f, k)?;
    let field = f.field();
    if p.field.p() != field.p() {
        return Err(Error::FieldMismatch(p.field.p(), field.p()));
    }
    let q = field.q() as usize;
    let needed = hecke_required_prec(q as u32, out_prec);
    if needed > f.prec() {
        return Err(Error::InsufficientPrecision { needed: needed as u64, available: f.prec() as u64 });
    }
    if f.is_zero() || out_prec == 0 {
        return Ok(TSeries::zero(field, out_prec).with_meta(f.meta()));
    }
    let pp = p.poly();
    let top = k as usize + out_prec;
    let mut powers = Vec::with_capacity(top + 1);
    powers.push(PolyA::one(field));
    for e in 1..=top {
        let next = &powers[e - 1] * &pp;
        powers.push(next);
    }
    let coeffs: Vec<(usize, RatK)> = (0..out_prec)
        .into_par_iter()
        .map(|n| -> Result<(usize, RatK)> { Ok((n, hecke_coeff(f, field, &powers, k as usize, n)?)) })
        .collect::<Result<_>>()?;
    Ok(TSeries::from_terms(field, out_prec, coeffs).with_meta(f.meta()))
}

fn hecke_coeff(f: &TSeries, field: PrimeField, powers: &[PolyA], k: usize, n: usize) -> Result<RatK> {
    let q = field.q() as usize;
    let zero = RatK::zero(field);
    if n == 0 {
        return Ok(f.coeff(0)?.mul_poly(&powers[k]));
    }
    let mut first = zero.clone();
    for (s, power) in powers.iter().enumerate().take(n / (q - 1) + 1) {
        let rest = n - s * (q - 1);
        if !rest.is_multiple_of(q) || rest == 0 {
            continue;
        }
        let j = rest / q;
        let Some(a) = f.coeff_ref(j)? else { continue };
        let mut b = field.binom((j + s - 1) as u64, s as u64);
        if b == 0 {
            continue;
        }
        if s % 2 == 1 {
            b = field.neg(b);
        }
        first = &first + &a.mul_poly(power).scale(b);
    }
    let mut acc = first.mul_poly(&powers[k]);
    for i in 0..n {
        let b = field.binom((n - 1) as u64, i as u64);
        if b == 0 {
            continue;
        }
        if let Some(a) = f.coeff_ref(n + i * (q - 1))? {
            acc = &acc + &a.mul_poly(&powers[n - i]).scale(b);
        }
    }
    Ok(acc)
}

/// First index where T f and λ f disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub index: usize,
    pub hecke: RatK,
    pub expected: RatK,
}

/// Outcome of [`eigen_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenCheck {
    pub certified_prec: usize,
    pub discrepancy: Option<Discrepancy>,
}

impl EigenCheck {
    pub fn holds(&self) -> bool {
        self.discrepancy.is_none()
    }
}

/// Compares T_{𝔭,k} f with λ·f below the certified precision.
pub fn eigen_check(f: &TSeries, p: DegOnePrime, k: u32, lam: &PolyA) -> Result<EigenCheck> {
    let tf = hecke_apply(f, p, k)?;
    let expected = f.truncate(tf.prec()).scale_poly(lam);
    let discrepancy = tf.first_difference(&expected).map(|index| Discrepancy {
        index,
        hecke: tf.coeff(index).expect("below certified precision"),
        expected: expected.coeff(index).expect("below certified precision"),
    });
    Ok(EigenCheck { certified_prec: tf.prec(), discrepancy })
}

/// The simplified eigen-recurrence for the family a_{1+q^ν}:
///
/// θ^{1+q^N}·a_{1+q^ν} = Σ_{I ⊆ {1..ℓ}} θ^{1+q^{ν̂(I)}}·a_{1+q^{ν⁺(I)}}
///
/// for an eigenform f of T_θ with eigenvalue θ^{1+Σ q^{N_i}}. Requires
/// ℓ ≤ q − 1 and a_1(f) = 0.
pub fn lemma_recurrence_check(f: &TSeries, nu: &Multiset, lam_exponents: &Multiset) -> Result<bool> {
    let field = f.field();
    let q = field.q();
    if nu.len() > q as usize - 1 {
        return Err(Error::LengthExceedsQMinus1 { len: nu.len(), q });
    }
    if nu.is_empty() {
        return Err(Error::Precondition("ν must be nonempty".into()));
    }
    let full = (1u32 << nu.len()) - 1;
    let top = nu.nu_plus(full).index_of(q)? as usize;
    if top >= f.prec() {
        return Err(Error::InsufficientPrecision { needed: top as u64 + 1, available: f.prec() as u64 });
    }
    if !f.coeff(1)?.is_zero() {
        return Err(Error::NotDoubleCuspidal("a_1 ≠ 0".into()));
    }
    let lam = 1 + lam_exponents.q_power_sum(q)?;
    let lhs = f.coeff(nu.index_of(q)? as usize)?.mul_poly(&PolyA::monomial(field, 1, lam as usize));
    let mut rhs = RatK::zero(field);
    for mask in 0..=full {
        let a = f.coeff(nu.nu_plus(mask).index_of(q)? as usize)?;
        let e = 1 + nu.complement_power_sum(mask, q) as usize;
        rhs = &rhs + &a.mul_poly(&PolyA::monomial(field, 1, e));
    }
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ratk;

    fn f3() -> PrimeField {
        PrimeField::new(3).unwrap()
    }

    #[test]
    fn required_precision() {
        assert_eq!(hecke_required_prec(3, 2), 2);
        assert_eq!(hecke_required_prec(3, 11), 29);
        assert_eq!(hecke_required_prec(5, 11), 47);
        assert_eq!(hecke_required_prec(3, 1), 1);
        for q in [2u32, 3, 5, 7] {
            for out in 1..300 {
                let need = hecke_required_prec(q, out);
                assert_eq!(hecke_certified_prec(q, need), out, "q={q} out={out}");
                assert!(hecke_certified_prec(q, need - 1) < out);
            }
        }
    }

    #[test]
    fn prime_construction() {
        let f = f3();
        let p = DegOnePrime::new(f, -1);
        assert_eq!(p.constant(), 2);
        assert_eq!(p.poly().to_string(), "θ + 2");
        let sq = PolyA::from_coeffs(f, &[0, 0, 1]);
        assert_eq!(DegOnePrime::from_poly(&sq), Err(Error::UnsupportedPrimeDegree(2)));
        assert_eq!(DegOnePrime::from_poly(&PolyA::from_coeffs(f, &[0, 2])), Err(Error::MonicRequired));
    }

    #[test]
    fn zero_and_errors() {
        let f = f3();
        let z = TSeries::zero(f, 29);
        let out = hecke_apply(&z, DegOnePrime::theta(f), 8).unwrap();
        assert!(out.is_zero());
        assert_eq!(out.prec(), 11);
        let tagged = z.with_meta(Some(crate::series::Meta { weight: 8, ty: 0 }));
        assert_eq!(hecke_apply(&tagged, DegOnePrime::theta(f), 4), Err(Error::WeightMismatch { operator: 4, form: 8 }));
        assert!(matches!(
            hecke_apply_to(&tagged, DegOnePrime::theta(f), 8, 12),
            Err(Error::InsufficientPrecision { .. })
        ));
    }

    #[test]
    fn direct_small_coefficients() {
        // f = t² at q = 3, k = 8, output below 11.
        // Second sum: only n = 2, i = 0 reaches a_2, giving C(1,0)·θ²·a_2.
        // First sum: j = 2 needs n = 6 + 2s; s = 0 gives θ⁸, s = 1 gives −C(2,1)θ⁹ = θ⁹.
        let f = f3();
        let t2 = TSeries::monomial(RatK::one(f), 2, 29);
        let out = hecke_apply(&t2, DegOnePrime::theta(f), 8).unwrap();
        assert_eq!(out.prec(), 11);
        assert_eq!(out.coeff(2).unwrap(), parse_ratk(f, "θ^2").unwrap());
        assert_eq!(out.coeff(6).unwrap(), parse_ratk(f, "θ^8").unwrap());
        assert_eq!(out.coeff(8).unwrap(), parse_ratk(f, "θ^9").unwrap());
        assert_eq!(out.num_terms(), 3);
    }
}
