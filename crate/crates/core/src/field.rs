//! Exact coefficient fields: the rationals and prime fields `F_p`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The coefficient field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u32),
}

impl Field {
    /// Builds `F_p`, rejecting composite or out-of-range moduli.
    pub fn prime(p: u32) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^31")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(&self) -> Scalar {
        self.int(0)
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Fp(Fp::new(n.rem_euclid(p as i64) as u32, p)),
        }
    }

    /// `num / den` in this field. Fails when `den` vanishes in the field.
    pub fn ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        match *self {
            Field::Rationals => {
                if den.is_zero() {
                    return Err(Error::InvalidField("division by zero".into()));
                }
                Ok(Scalar::Q(BigRational::new(num.clone(), den.clone())))
            }
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let reduce = |x: &BigInt| -> u32 {
                    let r = ((x % &pb) + &pb) % &pb;
                    r.to_u32().unwrap_or(0)
                };
                let d = reduce(den);
                if d == 0 {
                    return Err(Error::InvalidField(format!("{den} vanishes in F_{p}")));
                }
                Ok(Scalar::Fp(Fp::new(reduce(num), p)) / Scalar::Fp(Fp::new(d, p)))
            }
        }
    }

    pub fn characteristic(&self) -> u32 {
        match *self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of `F_p`, stored as its least non-negative residue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    p: u32,
}

impl Fp {
    fn new(value: u32, p: u32) -> Self {
        Fp { value: value % p, p }
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    fn inverse(&self) -> Option<Fp> {
        if self.value == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        let (mut base, mut exp, mut acc) = (self.value as u64, self.p as u64 - 2, 1u64);
        let p = self.p as u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        Some(Fp::new(acc as u32, self.p))
    }
}

/// An exact field element. Both operands of a binary operation must come
/// from the same field; mixing fields is a programming error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp(Fp),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp(a) => a.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp(a) => a.value == 1,
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rationals,
            Scalar::Fp(a) => Field::Prime(a.p),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        match self {
            Scalar::Q(q) if q.is_zero() => None,
            Scalar::Q(q) => Some(Scalar::Q(q.recip())),
            Scalar::Fp(a) => a.inverse().map(Scalar::Fp),
        }
    }

    /// Negates in place when `odd` is set; the usual way Koszul signs are applied.
    pub fn signed(self, odd: bool) -> Scalar {
        if odd {
            -self
        } else {
            self
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(q) => Some(q),
            Scalar::Fp(_) => None,
        }
    }

    /// True when the printed form needs a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_negative(),
            Scalar::Fp(_) => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => write!(f, "{q}"),
            Scalar::Fp(a) => write!(f, "{}", a.value),
        }
    }
}

fn same_prime(a: &Fp, b: &Fp) -> u32 {
    assert_eq!(a.p, b.p, "scalars from different prime fields");
    a.p
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp(a), Scalar::Fp(b)) => {
                let p = same_prime(a, b);
                Scalar::Fp(Fp::new(((a.value as u64 + b.value as u64) % p as u64) as u32, p))
            }
            _ => panic!("scalars from different fields"),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs.clone())
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp(a), Scalar::Fp(b)) => {
                let p = same_prime(a, b);
                Scalar::Fp(Fp::new(((a.value as u64 * b.value as u64) % p as u64) as u32, p))
            }
            _ => panic!("scalars from different fields"),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inverse().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(q) => Scalar::Q(-q),
            Scalar::Fp(a) => Scalar::Fp(Fp::new((a.p - a.value) % a.p, a.p)),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

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

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(101).unwrap();
        let a = f.int(57);
        let b = f.int(-3);
        assert_eq!(&a + &b, f.int(54));
        assert_eq!(&a * &b, f.int(57 * 98 % 101));
        assert_eq!(&(&a / &b) * &b, a);
        assert!(f.int(101).is_zero());
    }

    #[test]
    fn rejects_composites() {
        assert!(Field::prime(100).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(2).is_ok());
    }

    #[test]
    fn rational_ratio() {
        let q = Field::Rationals;
        let half = q.ratio(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(&half + &half, q.one());
        let f = Field::Prime(7);
        let h = f.ratio(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(&h * &f.int(2), f.one());
        assert!(f.ratio(&BigInt::from(1), &BigInt::from(14)).is_err());
    }
}
