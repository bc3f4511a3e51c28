//! Exact scalars over a prime field `F_p` or the rationals.
//!
//! Prime-field residues live in machine words (`p < 2^31`, so a product of two
//! residues fits in a `u64`). Rationals are arbitrary-precision fractions kept in
//! lowest terms with a positive denominator, so the derived equality is field
//! equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ground field of every algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    /// `F_p` with `p` prime and `2 <= p < 2^31`.
    Prime(u32),
    Rational,
}

const PRIME_LIMIT: u64 = 1 << 31;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if p >= PRIME_LIMIT || !is_prime(p) {
            return Err(Error::InvalidField(format!(
                "{p} is not a prime below 2^31"
            )));
        }
        Ok(Field::Prime(p as u32))
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Prime(p) => *p,
            Field::Rational => 0,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Field::Prime(_))
    }

    pub fn is_char_two(&self) -> bool {
        *self == Field::Prime(2)
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Mod { value: 0, p: *p },
            Field::Rational => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, k: i64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Mod {
                value: k.rem_euclid(*p as i64) as u32,
                p: *p,
            },
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(k))),
        }
    }

    /// `+1` for an even exponent, `-1` for an odd one.
    pub fn sign(&self, odd: bool) -> Scalar {
        if odd {
            self.from_i64(-1)
        } else {
            self.one()
        }
    }

    /// Parses a decimal integer or a `num/den` fraction into this field.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("cannot parse {s:?} as a scalar of {self}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = match den {
            Some(d) => d.parse().map_err(|_| bad())?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            Field::Rational => Ok(Scalar::Rat(BigRational::new(num, den))),
            Field::Prime(p) => {
                let reduce = |x: &BigInt| -> u32 {
                    let m = BigInt::from(*p);
                    let r = ((x % &m) + &m) % &m;
                    r.try_into().expect("residue fits in u32")
                };
                let n = Scalar::Mod {
                    value: reduce(&num),
                    p: *p,
                };
                let d = Scalar::Mod {
                    value: reduce(&den),
                    p: *p,
                };
                n.checked_div(&d)
            }
        }
    }

    /// All field elements in residue order, or `None` for the rationals.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            Field::Prime(p) => Some((0..*p).map(|value| Scalar::Mod { value, p: *p }).collect()),
            Field::Rational => None,
        }
    }

    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Prime(p) => Some(*p as u64),
            Field::Rational => None,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "F{p}"),
            Field::Rational => write!(f, "Q"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `F5`, `GF(5)`, `5`, `Q`, `QQ` or `rational`.
    fn from_str(s: &str) -> Result<Field> {
        let t = s.trim();
        if matches!(t, "Q" | "QQ" | "rational" | "rationals") {
            return Ok(Field::Rational);
        }
        let digits = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix('F'))
            .unwrap_or(t);
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("unknown field {s:?}")))?;
        Field::prime(p)
    }
}

/// A canonical field element that knows its field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Mod { value: u32, p: u32 },
    Rat(BigRational),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Mod { p, .. } => Field::Prime(*p),
            Scalar::Rat(_) => Field::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Mod { value, .. } => *value == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Mod { value, .. } => *value == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    /// Residue of a prime-field element.
    pub fn residue(&self) -> Option<u32> {
        match self {
            Scalar::Mod { value, .. } => Some(*value),
            Scalar::Rat(_) => None,
        }
    }

    fn mismatch(&self, other: &Scalar) -> Error {
        Error::FieldMismatch(self.field(), other.field())
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => {
                Ok(Scalar::Mod {
                    value: ((*a as u64 + *b as u64) % *p as u64) as u32,
                    p: *p,
                })
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a + b)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => {
                Ok(Scalar::Mod {
                    value: ((*a as u64 * *b as u64) % *p as u64) as u32,
                    p: *p,
                })
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a * b)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_mul(&other.inv()?)
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Mod { value, p } => Scalar::Mod {
                value: (*p - *value) % *p,
                p: *p,
            },
            Scalar::Rat(r) => Scalar::Rat(-r),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Mod { value, p } => {
                // Fermat: a^(p-2) = a^(-1).
                let m = *p as u64;
                let mut base = *value as u64;
                let mut e = m - 2;
                let mut acc = 1u64;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % m;
                    }
                    base = base * base % m;
                    e >>= 1;
                }
                Scalar::Mod {
                    value: acc as u32,
                    p: *p,
                }
            }
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
        })
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod { value, .. } => write!(f, "{value}"),
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) => (p, a).cmp(&(q, b)),
            (Scalar::Rat(a), Scalar::Rat(b)) => a.cmp(b),
            (Scalar::Mod { .. }, Scalar::Rat(_)) => Ordering::Less,
            (Scalar::Rat(_), Scalar::Mod { .. }) => Ordering::Greater,
        }
    }
}

// Operator sugar for values already known to share a field. Containers in this
// crate never mix fields, so a mismatch here is a programming error.
macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar field mismatch")
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$checked(&rhs).expect("scalar field mismatch")
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$checked(rhs).expect("scalar field mismatch")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Scalar {
        Field::Rational.parse_scalar(s).unwrap()
    }

    #[test]
    fn inverse_of_two_mod_five_by_search() {
        let f5 = Field::prime(5).unwrap();
        let two = f5.from_i64(2);
        let expected = (0..5)
            .find(|r| (2 * r) % 5 == 1)
            .map(|r| f5.from_i64(r))
            .unwrap();
        assert_eq!(two.inv().unwrap(), expected);
        assert_eq!(expected, f5.from_i64(3));
    }

    #[test]
    fn rational_addition() {
        assert_eq!(q("1/2") + q("1/3"), q("5/6"));
        assert_eq!(q("-6/14").to_string(), "-3/7");
        assert_eq!(q("4/-2").to_string(), "-2");
    }

    #[test]
    fn identity_and_errors() {
        for field in [Field::Prime(7), Field::Rational] {
            let a = field.from_i64(-4);
            assert_eq!(&a * &field.one(), a);
            assert_eq!(field.zero().inv(), Err(Error::DivisionByZero));
        }
        let a = Field::Prime(3).one();
        let b = Field::Prime(5).one();
        assert!(matches!(a.checked_add(&b), Err(Error::FieldMismatch(_, _))));
        assert!(matches!(
            a.checked_mul(&q("1")),
            Err(Error::FieldMismatch(_, _))
        ));
    }

    #[test]
    fn field_parsing_and_validation() {
        assert_eq!("F5".parse::<Field>().unwrap(), Field::Prime(5));
        assert_eq!("GF(3)".parse::<Field>().unwrap(), Field::Prime(3));
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rational);
        assert!("F4".parse::<Field>().is_err());
        assert!(Field::prime(2_147_483_659).is_err());
        assert_eq!(
            Field::Prime(7).parse_scalar("3/2").unwrap(),
            Field::Prime(7).from_i64(5)
        );
        assert_eq!(Field::Prime(7).parse_scalar("-1").unwrap().to_string(), "6");
        assert!(Field::Prime(7).parse_scalar("1/7").is_err());
    }

    fn prime_scalar() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
        prop_oneof![Just(2u32), Just(3), Just(5), Just(2_147_483_647)].prop_flat_map(|p| {
            (0..p, 0..p, 0..p).prop_map(move |(a, b, c)| {
                (
                    Scalar::Mod { value: a, p },
                    Scalar::Mod { value: b, p },
                    Scalar::Mod { value: c, p },
                )
            })
        })
    }

    fn rational_scalar() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
        let r = (-50i64..50, 1i64..20)
            .prop_map(|(n, d)| Scalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d))));
        (r.clone(), r.clone(), r)
    }

    fn check_axioms(a: &Scalar, b: &Scalar, c: &Scalar) {
        assert_eq!(&(a + b) + c, a + &(b + c));
        assert_eq!(&(a * b) * c, a * &(b * c));
        assert_eq!(a + b, b + a);
        assert_eq!(a * b, b * a);
        assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        assert_eq!(&(a + b) - b, a.clone());
        if !a.is_zero() {
            assert_eq!(a.inv().unwrap().inv().unwrap(), *a);
            assert!((a * &a.inv().unwrap()).is_one());
        }
        // Canonical forms survive a print/parse cycle unchanged.
        assert_eq!(a.field().parse_scalar(&a.to_string()).unwrap(), *a);
    }

    proptest! {
        #[test]
        fn prime_field_axioms((a, b, c) in prime_scalar()) {
            check_axioms(&a, &b, &c);
        }

        #[test]
        fn rational_field_axioms((a, b, c) in rational_scalar()) {
            check_axioms(&a, &b, &c);
        }
    }
}
