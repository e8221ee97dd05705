//! Exact scalar arithmetic over prime fields GF(p) and the rationals.
//!
//! Every value in the system is either a canonical residue `0..p-1` or a
//! reduced `BigRational`; there is no floating point anywhere.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// The coefficient field of an algebra and of everything built over it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    /// GF(p) for a prime p.
    Prime(u64),
    /// The field of rational numbers.
    Rational,
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::Input(format!("{p} is not prime")));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime(p) => *p,
            FieldSpec::Rational => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Prime(p) => Scalar::Fp { p: *p, v: 0 },
            FieldSpec::Rational => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Prime(p) => Scalar::Fp { p: *p, v: 1 },
            FieldSpec::Rational => Scalar::Rat(BigRational::one()),
        }
    }

    /// Canonical image of an integer.
    pub fn from_int(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Prime(p) => {
                let m = n.rem_euclid(*p as i64) as u64;
                Scalar::Fp { p: *p, v: m }
            }
            FieldSpec::Rational => Scalar::Rat(BigRational::from(BigInt::from(n))),
        }
    }

    pub fn from_fraction(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::Input("zero denominator".into()));
        }
        let d = self.from_int(den);
        let inv = d
            .inv()
            .ok_or_else(|| Error::Input(format!("denominator {den} vanishes in {self:?}")))?;
        Ok(self.from_int(num).mul(&inv))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "gf({p})"),
            FieldSpec::Rational => write!(f, "Q"),
        }
    }
}

/// A single field element. GF(p) elements carry their modulus so that
/// arithmetic can check consistency; mixing moduli is a programming error.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp { p: u64, v: u64 },
    Rat(BigRational),
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Fp { p, .. } => FieldSpec::Prime(*p),
            Scalar::Rat(_) => FieldSpec::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp { v, .. } => *v == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp { v, .. } => *v == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Fp { p, v }, Scalar::Fp { p: q, v: w }) => {
                debug_assert_eq!(p, q, "mixed moduli");
                Scalar::Fp { p: *p, v: (v + w) % p }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => panic!("mixed fields in scalar arithmetic"),
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Fp { p, v } => Scalar::Fp { p: *p, v: if *v == 0 { 0 } else { p - v } },
            Scalar::Rat(r) => Scalar::Rat(-r),
        }
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Fp { p, v }, Scalar::Fp { p: q, v: w }) => {
                debug_assert_eq!(p, q, "mixed moduli");
                let prod = (*v as u128 * *w as u128) % (*p as u128);
                Scalar::Fp { p: *p, v: prod as u64 }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            _ => panic!("mixed fields in scalar arithmetic"),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Fp { p, v } => {
                if *v == 0 {
                    None
                } else {
                    Some(Scalar::Fp { p: *p, v: mod_inverse(*v, *p) })
                }
            }
            Scalar::Rat(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(r.recip()))
                }
            }
        }
    }

    pub fn div(&self, o: &Scalar) -> Scalar {
        self.mul(&o.inv().expect("division by zero"))
    }

    /// Residue value for GF(p) scalars.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Fp { v, .. } => Some(*v),
            Scalar::Rat(_) => None,
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp { v, .. } => write!(f, "{v}"),
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else if r.is_negative() && (-r).denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

pub(crate) fn mod_inverse(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p)
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "element not invertible");
    t.rem_euclid(p as i128) as u64
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf5_arithmetic() {
        let f = FieldSpec::prime(5).unwrap();
        let a = f.from_int(3);
        let b = f.from_int(4);
        assert_eq!(a.add(&b), f.from_int(2));
        assert_eq!(a.mul(&b), f.from_int(2));
        assert_eq!(a.inv().unwrap(), f.from_int(2));
        assert!(f.from_int(0).inv().is_none());
        assert_eq!(f.from_int(-1), f.from_int(4));
    }

    #[test]
    fn rational_arithmetic_is_reduced() {
        let f = FieldSpec::Rational;
        let half = f.from_fraction(2, 4).unwrap();
        assert_eq!(half, f.from_fraction(1, 2).unwrap());
        assert_eq!(half.add(&half), f.one());
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(FieldSpec::prime(6).is_err());
        assert!(FieldSpec::prime(1).is_err());
    }
}
