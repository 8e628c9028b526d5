//! The rational function field K = F_p(θ).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::PolyA;

/// A reduced fraction `num/den` with `den` monic and `gcd(num, den) = 1`.
/// Zero is `0/1`. Equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatK {
    num: PolyA,
    den: PolyA,
}

impl RatK {
    pub fn zero(field: PrimeField) -> Self {
        RatK { num: PolyA::zero(field), den: PolyA::one(field) }
    }

    pub fn one(field: PrimeField) -> Self {
        RatK { num: PolyA::one(field), den: PolyA::one(field) }
    }

    pub fn constant(field: PrimeField, c: i64) -> Self {
        RatK::from_poly(PolyA::constant(field, c))
    }

    pub fn theta(field: PrimeField) -> Self {
        RatK::from_poly(PolyA::theta(field))
    }

    pub fn from_poly(num: PolyA) -> Self {
        let den = num.constant_like(1);
        RatK { num, den }
    }

    /// Reduces `num/den` to canonical form.
    pub fn new(num: PolyA, den: PolyA) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if num.is_zero() {
            return Ok(RatK::from_poly(num));
        }
        if den.is_constant() {
            let inv = inv_mod(den.leading(), den.modulus());
            return Ok(RatK { num: num.scale(inv), den: den.scale(inv) });
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.div_exact(&g)?, den.div_exact(&g)?) };
        let inv = inv_mod(den.leading(), den.modulus());
        Ok(RatK { num: num.scale(inv), den: den.scale(inv) })
    }

    pub fn num(&self) -> &PolyA {
        &self.num
    }

    pub fn den(&self) -> &PolyA {
        &self.den
    }

    pub fn modulus(&self) -> u32 {
        self.num.modulus()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1, i.e. the value lies in A.
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn into_poly(self) -> Option<PolyA> {
        self.den.is_one().then_some(self.num)
    }

    pub fn inv(&self) -> Result<RatK> {
        if self.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let inv = inv_mod(self.num.leading(), self.num.modulus());
        Ok(RatK { num: self.den.scale(inv), den: self.num.scale(inv) })
    }

    pub fn div(&self, other: &RatK) -> Result<RatK> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, c: u32) -> RatK {
        if c.is_multiple_of(self.modulus()) {
            return RatK::from_poly(self.num.scale(0));
        }
        RatK { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, a: &PolyA) -> RatK {
        if self.den.is_one() {
            return RatK { num: &self.num * a, den: self.den.clone() };
        }
        self * &RatK::from_poly(a.clone())
    }

    pub fn pow(&self, e: u64) -> RatK {
        // Powers of a reduced fraction stay reduced.
        RatK { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// The value at θ + c (coefficientwise translation).
    pub fn translate(&self, c: u32) -> RatK {
        RatK::new(self.num.translate(c), self.den.translate(c)).expect("translation preserves nonzero denominators")
    }

    /// `num` when the denominator is 1, else `(num)/(den)`.
    pub fn to_text(&self, var: &str) -> String {
        if self.den.is_one() {
            self.num.to_text(var)
        } else {
            format!("({})/({})", self.num.to_text(var), self.den.to_text(var))
        }
    }

    /// True when the text form is a single token that needs no parentheses
    /// as a factor (a constant, or a bare θ-power).
    pub(crate) fn is_atomic(&self) -> bool {
        self.den.is_one() && self.num.term_count() <= 1 && (self.num.is_constant() || self.num.leading() == 1)
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut base, mut e, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

impl fmt::Display for RatK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("θ"))
    }
}

impl fmt::Debug for RatK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatK[F_{}]({})", self.modulus(), self.to_text("θ"))
    }
}

impl<'a> Add<&'a RatK> for &'a RatK {
    type Output = RatK;
    fn add(self, rhs: &RatK) -> RatK {
        if self.den.is_one() && rhs.den.is_one() {
            return RatK { num: &self.num + &rhs.num, den: self.den.clone() };
        }
        if self.den == rhs.den {
            return RatK::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero denominator");
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatK::new(num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl<'a> Sub<&'a RatK> for &'a RatK {
    type Output = RatK;
    fn sub(self, rhs: &RatK) -> RatK {
        self + &(-rhs)
    }
}

impl Neg for &RatK {
    type Output = RatK;
    fn neg(self) -> RatK {
        RatK { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatK {
    type Output = RatK;
    fn neg(self) -> RatK {
        -&self
    }
}

impl<'a> Mul<&'a RatK> for &'a RatK {
    type Output = RatK;
    fn mul(self, rhs: &RatK) -> RatK {
        if self.den.is_one() && rhs.den.is_one() {
            return RatK { num: &self.num * &rhs.num, den: self.den.clone() };
        }
        if self.is_zero() || rhs.is_zero() {
            return RatK::from_poly(self.num.scale(0));
        }
        // Cross-cancel so the product is reduced without a final gcd.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let inv = inv_mod(den.leading(), den.modulus());
        RatK { num: num.scale(inv), den: den.scale(inv) }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatK> for RatK {
            type Output = RatK;
            fn $m(self, rhs: RatK) -> RatK {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a RatK> for RatK {
            type Output = RatK;
            fn $m(self, rhs: &'a RatK) -> RatK {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
