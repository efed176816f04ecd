//! Exact scalars: the rationals and prime fields `F_p` with `p < 2^31`.
//!
//! Containers (matrices, subspaces) carry a [`FieldSpec`] and store bare
//! [`Scalar`] values; arithmetic on bare scalars goes through the field so the
//! residue modulus is never duplicated per entry. [`FieldElement`] pairs the two
//! for standalone, checked arithmetic.

use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest admissible prime characteristic (exclusive).
pub const PRIME_BOUND: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

/// A field value without its field. Rationals are always kept reduced with a
/// positive denominator; residues always lie in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Residue(u32),
    Rational(BigRational),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if p >= PRIME_BOUND || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::zero()),
            FieldSpec::Prime(_) => Scalar::Residue(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::one()),
            FieldSpec::Prime(p) => Scalar::Residue(1 % p),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(v.into())),
            FieldSpec::Prime(p) => Scalar::Residue(v.rem_euclid(*p as i64) as u32),
        }
    }

    /// `±1` according to the parity of `exp`.
    pub fn sign(&self, exp: i64) -> Scalar {
        if exp.rem_euclid(2) == 0 {
            self.one()
        } else {
            self.from_i64(-1)
        }
    }

    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            FieldSpec::Rationals => {
                Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone())))
            }
            FieldSpec::Prime(p) => {
                let m = BigInt::from(*p);
                let n = num.mod_floor(&m).to_u32().unwrap_or(0);
                let d = den.mod_floor(&m).to_u32().unwrap_or(0);
                if d == 0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Residue(mul_mod(n, inv_mod(d, *p), *p)))
            }
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Residue(v) => *v == 0,
            Scalar::Rational(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Residue(v) => *v == 1,
            Scalar::Rational(q) => q.is_one(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(((*x as u64 + *y as u64) % *p as u64) as u32)
            }
            (FieldSpec::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => {
                Scalar::Rational(x + y)
            }
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Prime(p), Scalar::Residue(x)) => {
                Scalar::Residue(if *x == 0 { 0 } else { p - x })
            }
            (FieldSpec::Rationals, Scalar::Rational(x)) => Scalar::Rational(-x),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(mul_mod(*x, *y, *p))
            }
            (FieldSpec::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => {
                Scalar::Rational(x * y)
            }
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match (self, a) {
            (FieldSpec::Prime(p), Scalar::Residue(x)) => Scalar::Residue(inv_mod(*x, *p)),
            (FieldSpec::Rationals, Scalar::Rational(x)) => Scalar::Rational(x.recip()),
            _ => panic!("scalar does not belong to {self}"),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Whether `a` is a well-formed canonical value of this field.
    pub fn contains(&self, a: &Scalar) -> bool {
        match (self, a) {
            (FieldSpec::Prime(p), Scalar::Residue(x)) => x < p,
            (FieldSpec::Rationals, Scalar::Rational(q)) => {
                q.denom().is_positive() && q.numer().gcd(q.denom()).is_one()
            }
            _ => false,
        }
    }

    /// Parses `n`, `-n`, `n/d` (a leading U+2212 minus is accepted too).
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let err = || Error::Parse { what: "scalar", input: s.to_string() };
        let t = s.trim();
        let (neg, body) = if let Some(rest) = t.strip_prefix('-') {
            (true, rest)
        } else if let Some(rest) = t.strip_prefix('\u{2212}') {
            (true, rest)
        } else {
            (false, t)
        };
        let (n, d) = match body.split_once('/') {
            Some((n, d)) => (n, d),
            None => (body, "1"),
        };
        let digits = |x: &str| !x.is_empty() && x.bytes().all(|b| b.is_ascii_digit());
        if !digits(n) || !digits(d) {
            return Err(err());
        }
        let mut num = BigInt::from_str(n).map_err(|_| err())?;
        let den = BigInt::from_str(d).map_err(|_| err())?;
        if neg {
            num = -num;
        }
        self.from_ratio(&num, &den)
    }

    pub fn display<'a>(&self, a: &'a Scalar) -> ScalarDisplay<'a> {
        ScalarDisplay(a)
    }

    /// Rough size of a scalar in bits, used to pick elimination pivots.
    pub fn bit_size(&self, a: &Scalar) -> u64 {
        match a {
            Scalar::Residue(_) => 0,
            Scalar::Rational(q) => q.numer().bits() + q.denom().bits(),
        }
    }
}

pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    // extended Euclid on i64; p < 2^31 keeps everything in range
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(p as i64) as u32
}

pub struct ScalarDisplay<'a>(&'a Scalar);

impl fmt::Display for ScalarDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self.0, f)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Residue(v) => write!(f, "{v}"),
            Scalar::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => f.write_str("QQ"),
            FieldSpec::Prime(p) => write!(f, "ZZ/{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `QQ` and `ZZ/p`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "QQ" {
            return Ok(FieldSpec::Rationals);
        }
        let p = t
            .strip_prefix("ZZ/")
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| Error::Parse { what: "field", input: String::from(t) })?;
        FieldSpec::prime(p)
    }
}

/// A scalar tagged with its field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: FieldSpec,
    value: Scalar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElement {
    pub fn new(field: FieldSpec, value: Scalar) -> Result<Self> {
        if !field.contains(&value) {
            return Err(Error::MixedFields);
        }
        Ok(FieldElement { field, value })
    }

    pub fn from_i64(field: FieldSpec, v: i64) -> Self {
        FieldElement { field, value: field.from_i64(v) }
    }

    pub fn parse(field: FieldSpec, s: &str) -> Result<Self> {
        Ok(FieldElement { field, value: field.parse_scalar(s)? })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn value(&self) -> &Scalar {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.value)
    }

    pub fn arith(&self, other: &FieldElement, op: ArithOp) -> Result<FieldElement> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        let f = self.field;
        let value = match op {
            ArithOp::Add => f.add(&self.value, &other.value),
            ArithOp::Sub => f.sub(&self.value, &other.value),
            ArithOp::Mul => f.mul(&self.value, &other.value),
            ArithOp::Div => f.div(&self.value, &other.value)?,
        };
        Ok(FieldElement { field: f, value })
    }

    pub fn inverse(&self) -> Result<FieldElement> {
        Ok(FieldElement { field: self.field, value: self.field.inv(&self.value)? })
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    fn q(s: &str) -> FieldElement {
        FieldElement::parse(FieldSpec::Rationals, s).unwrap()
    }

    fn f7(v: i64) -> FieldElement {
        FieldElement::from_i64(FieldSpec::Prime(7), v)
    }

    #[test]
    fn arith_examples() {
        assert_eq!(q("1/2").arith(&q("1/3"), ArithOp::Add).unwrap(), q("5/6"));
        assert_eq!(f7(3).arith(&f7(3), ArithOp::Div).unwrap(), f7(1));
        assert_eq!(f7(3).arith(&f7(5), ArithOp::Mul).unwrap(), f7(1));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(q("2").inverse().unwrap(), q("1/2"));
        assert_eq!(f7(3).inverse().unwrap(), f7(5));
        assert_eq!(q("-1").inverse().unwrap(), q("-1"));
        assert_eq!(q("0").inverse(), Err(Error::DivisionByZero));
        assert_eq!(f7(0).inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn errors() {
        assert_eq!(q("1").arith(&q("0"), ArithOp::Div), Err(Error::DivisionByZero));
        assert_eq!(q("1").arith(&f7(1), ArithOp::Add), Err(Error::MixedFields));
        let f11 = FieldElement::from_i64(FieldSpec::Prime(11), 1);
        assert_eq!(f7(1).arith(&f11, ArithOp::Mul), Err(Error::MixedFields));
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!("QQ".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("ZZ/101".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(101));
        assert_eq!("ZZ/2".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(2));
        assert_eq!("ZZ/100".parse::<FieldSpec>(), Err(Error::NotPrime(100)));
        assert_eq!(FieldSpec::prime(2147483659), Err(Error::NotPrime(2147483659)));
        assert!(FieldSpec::prime(2147483647).is_ok());
        assert!("RR".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn rendering_and_parsing() {
        assert_eq!(format!("{}", q("4/2")), "2");
        assert_eq!(format!("{}", q("-6/4")), "-3/2");
        assert_eq!(q("\u{2212}3/6"), q("-1/2"));
        assert_eq!(format!("{}", f7(-1)), "6");
        assert_eq!(FieldElement::parse(FieldSpec::Prime(7), "1/2").unwrap(), f7(4));
        assert!(FieldElement::parse(FieldSpec::Rationals, "1/0").is_err());
        assert!(FieldElement::parse(FieldSpec::Rationals, "x").is_err());
        assert!(FieldElement::parse(FieldSpec::Rationals, "--1").is_err());
    }

    #[test]
    fn characteristic_two_signs_collapse() {
        let f2 = FieldSpec::Prime(2);
        assert_eq!(f2.sign(1), f2.one());
        assert_eq!(f2.neg(&f2.one()), f2.one());
    }

    #[test]
    fn large_prime_products_do_not_overflow() {
        let f = FieldSpec::Prime(2147483647);
        let a = f.from_i64(-1);
        assert_eq!(f.mul(&a, &a), f.one());
        assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
    }
}
