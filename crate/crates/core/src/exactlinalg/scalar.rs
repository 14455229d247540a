use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// Arbitrary-precision signed integer.
///
/// Values that fit in an `i64` are stored inline and promoted to a heap
/// `BigInt` only when an operation would overflow. The representation is
/// normalized, so a `Big` value never fits in an `i64`.
#[derive(Clone)]
pub struct Scalar(Repr);

#[derive(Clone)]
enum Repr {
    Small(i64),
    Big(BigInt),
}

impl Scalar {
    pub const ZERO: Scalar = Scalar(Repr::Small(0));
    pub const ONE: Scalar = Scalar(Repr::Small(1));

    pub fn zero() -> Self {
        Self::ZERO
    }

    pub fn one() -> Self {
        Self::ONE
    }

    fn from_big(b: BigInt) -> Self {
        match b.to_i64() {
            Some(v) => Scalar(Repr::Small(v)),
            None => Scalar(Repr::Big(b)),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match &self.0 {
            Repr::Small(v) => BigInt::from(*v),
            Repr::Big(b) => b.clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(v) => Some(*v),
            Repr::Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1))
    }

    pub fn is_odd(&self) -> bool {
        match &self.0 {
            Repr::Small(v) => v & 1 == 1,
            Repr::Big(b) => b.is_odd(),
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(v) => v.signum() as i32,
            Repr::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn abs(&self) -> Scalar {
        match &self.0 {
            Repr::Small(v) => match v.checked_abs() {
                Some(a) => Scalar(Repr::Small(a)),
                None => Scalar::from_big(BigInt::from(*v).abs()),
            },
            Repr::Big(b) => Scalar::from_big(b.abs()),
        }
    }

    /// Floor division and the matching non-negative-or-same-sign-as-divisor
    /// remainder. Panics on a zero divisor.
    pub fn div_mod_floor(&self, d: &Scalar) -> (Scalar, Scalar) {
        assert!(!d.is_zero(), "division by zero");
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &d.0) {
            if !(*a == i64::MIN && *b == -1) {
                let (q, r) = a.div_mod_floor(b);
                return (Scalar(Repr::Small(q)), Scalar(Repr::Small(r)));
            }
        }
        let (q, r) = self.to_bigint().div_mod_floor(&d.to_bigint());
        (Scalar::from_big(q), Scalar::from_big(r))
    }

    /// `self / d` when the division is exact, `None` otherwise.
    pub fn div_exact(&self, d: &Scalar) -> Option<Scalar> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_mod_floor(d);
        r.is_zero().then_some(q)
    }

    pub fn gcd(&self, other: &Scalar) -> Scalar {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &other.0) {
            if *a != i64::MIN && *b != i64::MIN {
                return Scalar(Repr::Small(a.gcd(b)));
            }
        }
        Scalar::from_big(self.to_bigint().gcd(&other.to_bigint()))
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::ZERO
    }
}

macro_rules! from_prim {
    ($($t:ty),*) => {$(
        impl From<$t> for Scalar {
            fn from(v: $t) -> Self {
                Scalar(Repr::Small(v as i64))
            }
        }
    )*};
}
from_prim!(i8, i16, i32, i64, u8, u16, u32);

impl From<usize> for Scalar {
    fn from(v: usize) -> Self {
        match i64::try_from(v) {
            Ok(v) => Scalar(Repr::Small(v)),
            Err(_) => Scalar::from_big(BigInt::from(v)),
        }
    }
}

impl From<BigInt> for Scalar {
    fn from(b: BigInt) -> Self {
        Scalar::from_big(b)
    }
}

impl From<&BigInt> for Scalar {
    fn from(b: &BigInt) -> Self {
        Scalar::from_big(b.clone())
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a == b,
            (Repr::Big(a), Repr::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl PartialEq<i64> for Scalar {
    fn eq(&self, other: &i64) -> bool {
        matches!(self.0, Repr::Small(v) if v == *other)
    }
}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(v) => {
                0u8.hash(state);
                v.hash(state)
            }
            Repr::Big(b) => {
                1u8.hash(state);
                b.hash(state)
            }
        }
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self.to_bigint().cmp(&other.to_bigint()),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(v) => fmt::Display::fmt(v, f),
            Repr::Big(b) => fmt::Display::fmt(b, f),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Small values serialize as JSON numbers; larger ones as decimal strings so
/// that no precision is lost in transit.
impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match &self.0 {
            Repr::Small(v) => s.serialize_i64(*v),
            Repr::Big(b) => s.serialize_str(&b.to_string()),
        }
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::ZERO
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::ONE
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(v) = a.checked_add(*b) {
                return Scalar(Repr::Small(v));
            }
        }
        Scalar::from_big(self.to_bigint() + rhs.to_bigint())
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(v) = a.checked_sub(*b) {
                return Scalar(Repr::Small(v));
            }
        }
        Scalar::from_big(self.to_bigint() - rhs.to_bigint())
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(v) = a.checked_mul(*b) {
                return Scalar(Repr::Small(v));
            }
        }
        Scalar::from_big(self.to_bigint() * rhs.to_bigint())
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Small(v) => match v.checked_neg() {
                Some(n) => Scalar(Repr::Small(n)),
                None => Scalar::from_big(-BigInt::from(*v)),
            },
            Repr::Big(b) => Scalar::from_big(-b),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
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
        impl $tr<i64> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: i64) -> Scalar {
                self.$m(&Scalar::from(rhs))
            }
        }
        impl $tr<i64> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: i64) -> Scalar {
                (&self).$m(&Scalar::from(rhs))
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if let (Repr::Small(a), Repr::Small(b)) = (&mut self.0, &rhs.0) {
            if let Some(v) = a.checked_add(*b) {
                *a = v;
                return;
            }
        }
        *self = &*self + rhs;
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if let (Repr::Small(a), Repr::Small(b)) = (&mut self.0, &rhs.0) {
            if let Some(v) = a.checked_sub(*b) {
                *a = v;
                return;
            }
        }
        *self = &*self - rhs;
    }
}

impl SubAssign<Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self -= &rhs;
    }
}

impl Scalar {
    /// `self += a * b` without an intermediate allocation on the small path.
    pub fn add_mul(&mut self, a: &Scalar, b: &Scalar) {
        if let (Repr::Small(x), Repr::Small(y), Repr::Small(z)) = (&mut self.0, &a.0, &b.0) {
            if let Some(v) = y.checked_mul(*z).and_then(|p| x.checked_add(p)) {
                *x = v;
                return;
            }
        }
        *self = &*self + &(a * b);
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl std::str::FromStr for Scalar {
    type Err = num_bigint::ParseBigIntError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse::<BigInt>().map(Scalar::from_big)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Scalar::from(i64::MAX);
        let sum = &big + &Scalar::one();
        assert!(sum.to_i64().is_none());
        assert_eq!(sum.to_bigint(), BigInt::from(i64::MAX) + 1);
        let back = &sum - &Scalar::one();
        assert_eq!(back, Scalar::from(i64::MAX));
        assert_eq!(back.to_i64(), Some(i64::MAX));
        assert_eq!((-Scalar::from(i64::MIN)).to_bigint(), -BigInt::from(i64::MIN));
    }

    #[test]
    fn floor_division() {
        let (q, r) = Scalar::from(-7).div_mod_floor(&Scalar::from(2));
        assert_eq!((q, r), (Scalar::from(-4), Scalar::from(1)));
        assert_eq!(Scalar::from(6).div_exact(&Scalar::from(3)), Some(Scalar::from(2)));
        assert_eq!(Scalar::from(7).div_exact(&Scalar::from(3)), None);
    }

    proptest! {
        #[test]
        fn agrees_with_bigint(a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
            let (sa, sb, sc) = (Scalar::from(a), Scalar::from(b), Scalar::from(c));
            let (ba, bb, bc) = (BigInt::from(a), BigInt::from(b), BigInt::from(c));
            prop_assert_eq!((&sa + &sb).to_bigint(), &ba + &bb);
            prop_assert_eq!((&sa - &sb).to_bigint(), &ba - &bb);
            prop_assert_eq!((&sa * &sb).to_bigint(), &ba * &bb);
            let mut acc = sa.clone();
            acc.add_mul(&sb, &sc);
            prop_assert_eq!(acc.to_bigint(), &ba + &bb * &bc);
            prop_assert_eq!(sa.cmp(&sb), ba.cmp(&bb));
        }
    }
}
