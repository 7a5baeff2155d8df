//! Exact arithmetic in the cyclotomic field Q(ω), ω = e^{2iπ/3}.
//!
//! Every scalar in the crate is a [`CycloNum`] `a + bω` with `a, b` reduced
//! big rationals. The loop-model parameter `q` is `ω` itself, and its square
//! root is fixed once and for all to the principal sixth root of unity
//! `ζ = 1 + ω = e^{iπ/3}` (see [`sixth_root`]).
//!
//! [`Eisenstein`] is an overflow-checked `i128` representation of the ring
//! of integers `Z[ω]`, used in the hot loops where all values are integral.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Reduced rational number with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl fmt::Display for Rational {
    /// Always `num/den`, including integers (`3/1`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational number: {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Rational::new(n, d))
            }
            None => Ok(Rational::from_integer(s.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! rational_binop {
    ($tr:ident, $f:ident, $atr:ident, $af:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $f(self, o: &Rational) -> Rational {
                Rational((&self.0).$f(&o.0))
            }
        }
        impl $tr for Rational {
            type Output = Rational;
            fn $f(self, o: Rational) -> Rational {
                Rational(self.0.$f(o.0))
            }
        }
        impl $atr<&Rational> for Rational {
            fn $af(&mut self, o: &Rational) {
                self.0.$af(&o.0)
            }
        }
    };
}

rational_binop!(Add, add, AddAssign, add_assign);
rational_binop!(Sub, sub, SubAssign, sub_assign);
rational_binop!(Mul, mul, MulAssign, mul_assign);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// Element `a + bω` of Q(ω), with `ω² + ω + 1 = 0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CycloNum {
    pub a: Rational,
    pub b: Rational,
}

impl CycloNum {
    pub fn new(a: Rational, b: Rational) -> Self {
        CycloNum { a, b }
    }

    pub fn zero() -> Self {
        CycloNum::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        CycloNum::from_rational(Rational::one())
    }

    pub fn from_rational(a: Rational) -> Self {
        CycloNum::new(a, Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        CycloNum::from_rational(n.into())
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        CycloNum::new(a.into(), b.into())
    }

    /// `ω = q = e^{2iπ/3}`.
    pub fn omega() -> Self {
        CycloNum::from_ints(0, 1)
    }

    /// `ω² = q⁻¹ = -1 - ω`.
    pub fn omega_sq() -> Self {
        CycloNum::from_ints(-1, -1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.b.is_zero() && self.a == Rational::one()
    }

    /// True when the value lies in Q.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a + bω²`.
    pub fn conj(&self) -> Self {
        CycloNum::new(&self.a - &self.b, -&self.b)
    }

    /// Field norm `a² - ab + b²` (always a non-negative rational).
    pub fn norm(&self) -> Rational {
        &(&self.a * &self.a) - &(&self.a * &self.b) + &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let r = n.recip()?;
        let c = self.conj();
        Ok(CycloNum::new(&c.a * &r, &c.b * &r))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycloNum::new(&self.a * r, &self.b * r)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = CycloNum::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Integer power, negative exponents allowed for nonzero values.
    pub fn powi(&self, e: i32) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Least common multiple of the two denominators.
    pub fn denom_lcm(&self) -> BigInt {
        self.a.denom().lcm(self.b.denom())
    }

    /// Complex value, for the floating-point cross-checks only.
    pub fn to_complex(&self) -> num_complex::Complex64 {
        let w = num_complex::Complex64::new(-0.5, 3f64.sqrt() / 2.0);
        num_complex::Complex64::new(self.a.to_f64(), 0.0) + w * self.b.to_f64()
    }
}

/// The principal square root of `q`: `ζ = 1 + ω = e^{iπ/3}`, with `ζ² = ω`.
pub fn sixth_root() -> CycloNum {
    CycloNum::from_ints(1, 1)
}

/// `q^{-1/2} = ζ⁻¹ = -ω`.
pub fn sixth_root_inv() -> CycloNum {
    CycloNum::from_ints(0, -1)
}

impl From<Rational> for CycloNum {
    fn from(r: Rational) -> Self {
        CycloNum::from_rational(r)
    }
}

impl From<i64> for CycloNum {
    fn from(n: i64) -> Self {
        CycloNum::from_int(n)
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{:?}", self.a),
            (true, false) => write!(f, "{:?}ω", self.b),
            (false, false) => write!(f, "{:?}+{:?}ω", self.a, self.b),
        }
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for CycloNum {
    type Err = Error;

    /// Accepts a plain rational (`3/2`) or a pair `a,b` meaning `a + bω`.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(',') {
            Some((a, b)) => Ok(CycloNum::new(a.parse()?, b.parse()?)),
            None => Ok(CycloNum::from_rational(s.parse()?)),
        }
    }
}

impl Serialize for CycloNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.a.to_string(), self.b.to_string()].serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b] = <[String; 2]>::deserialize(d)?;
        let a = a.parse().map_err(serde::de::Error::custom)?;
        let b = b.parse().map_err(serde::de::Error::custom)?;
        Ok(CycloNum::new(a, b))
    }
}

impl Add<&CycloNum> for &CycloNum {
    type Output = CycloNum;
    fn add(self, o: &CycloNum) -> CycloNum {
        CycloNum::new(&self.a + &o.a, &self.b + &o.b)
    }
}

impl Sub<&CycloNum> for &CycloNum {
    type Output = CycloNum;
    fn sub(self, o: &CycloNum) -> CycloNum {
        CycloNum::new(&self.a - &o.a, &self.b - &o.b)
    }
}

impl Mul<&CycloNum> for &CycloNum {
    type Output = CycloNum;
    fn mul(self, o: &CycloNum) -> CycloNum {
        // (a + bω)(c + dω) = ac - bd + (ad + bc - bd)ω
        if self.b.is_zero() && o.b.is_zero() {
            return CycloNum::from_rational(&self.a * &o.a);
        }
        let ac = &self.a * &o.a;
        let bd = &self.b * &o.b;
        let ad = &self.a * &o.b;
        let bc = &self.b * &o.a;
        CycloNum::new(&ac - &bd, &(&ad + &bc) - &bd)
    }
}

impl Div<&CycloNum> for &CycloNum {
    type Output = CycloNum;
    /// Panics on division by zero; use [`CycloNum::inv`] for a checked path.
    fn div(self, o: &CycloNum) -> CycloNum {
        self * &o.inv().expect("division by zero in Q(ω)")
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum::new(-&self.a, -&self.b)
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum::new(-self.a, -self.b)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for CycloNum {
            type Output = CycloNum;
            fn $f(self, o: CycloNum) -> CycloNum {
                (&self).$f(&o)
            }
        }
        impl $tr<&CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $f(self, o: &CycloNum) -> CycloNum {
                (&self).$f(o)
            }
        }
        impl $tr<CycloNum> for &CycloNum {
            type Output = CycloNum;
            fn $f(self, o: CycloNum) -> CycloNum {
                self.$f(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&CycloNum> for CycloNum {
    fn add_assign(&mut self, o: &CycloNum) {
        self.a += &o.a;
        self.b += &o.b;
    }
}

impl SubAssign<&CycloNum> for CycloNum {
    fn sub_assign(&mut self, o: &CycloNum) {
        self.a -= &o.a;
        self.b -= &o.b;
    }
}

impl MulAssign<&CycloNum> for CycloNum {
    fn mul_assign(&mut self, o: &CycloNum) {
        *self = &*self * o;
    }
}

impl std::iter::Sum for CycloNum {
    fn sum<I: Iterator<Item = CycloNum>>(iter: I) -> Self {
        iter.fold(CycloNum::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl std::iter::Product for CycloNum {
    fn product<I: Iterator<Item = CycloNum>>(iter: I) -> Self {
        iter.fold(CycloNum::one(), |acc, x| &acc * &x)
    }
}

/// Element `a + bω` of `Z[ω]` with overflow-checked `i128` coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug)]
pub struct Eisenstein {
    pub a: i128,
    pub b: i128,
}

impl Eisenstein {
    pub const ZERO: Eisenstein = Eisenstein { a: 0, b: 0 };
    pub const ONE: Eisenstein = Eisenstein { a: 1, b: 0 };

    pub const fn new(a: i128, b: i128) -> Self {
        Eisenstein { a, b }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn checked_add(self, o: Self) -> Option<Self> {
        Some(Eisenstein::new(self.a.checked_add(o.a)?, self.b.checked_add(o.b)?))
    }

    pub fn checked_sub(self, o: Self) -> Option<Self> {
        Some(Eisenstein::new(self.a.checked_sub(o.a)?, self.b.checked_sub(o.b)?))
    }

    pub fn checked_neg(self) -> Option<Self> {
        Some(Eisenstein::new(self.a.checked_neg()?, self.b.checked_neg()?))
    }

    pub fn checked_mul(self, o: Self) -> Option<Self> {
        let ac = self.a.checked_mul(o.a)?;
        let bd = self.b.checked_mul(o.b)?;
        let ad = self.a.checked_mul(o.b)?;
        let bc = self.b.checked_mul(o.a)?;
        Some(Eisenstein::new(
            ac.checked_sub(bd)?,
            ad.checked_add(bc)?.checked_sub(bd)?,
        ))
    }

    /// Exact conversion when both coordinates are integers that fit.
    pub fn from_cyclo(x: &CycloNum) -> Option<Self> {
        if !x.a.is_integer() || !x.b.is_integer() {
            return None;
        }
        Some(Eisenstein::new(x.a.numer().to_i128()?, x.b.numer().to_i128()?))
    }

    pub fn to_cyclo(self) -> CycloNum {
        CycloNum::new(Rational::from_integer(self.a), Rational::from_integer(self.b))
    }
}

/// Minimal ring interface shared by [`CycloNum`] and [`Eisenstein`] so the
/// spin-chain kernels can run in either. Operations return `None` on
/// overflow; the exact field never overflows.
pub trait RingElem: Clone + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn omega() -> Self;
    fn is_zero(&self) -> bool;
    fn try_add(&self, o: &Self) -> Option<Self>;
    fn try_sub(&self, o: &Self) -> Option<Self>;
    fn try_mul(&self, o: &Self) -> Option<Self>;
    fn to_cyclo(&self) -> CycloNum;
    fn from_eisenstein(e: Eisenstein) -> Option<Self>;

    fn omega_sq() -> Self {
        Self::omega().try_mul(&Self::omega()).expect("ω² fits")
    }

    fn try_neg(&self) -> Option<Self> {
        Self::zero().try_sub(self)
    }

    /// `self + a·b`
    fn try_mul_add(&self, a: &Self, b: &Self) -> Option<Self> {
        self.try_add(&a.try_mul(b)?)
    }
}

impl RingElem for CycloNum {
    fn zero() -> Self {
        CycloNum::zero()
    }
    fn one() -> Self {
        CycloNum::one()
    }
    fn omega() -> Self {
        CycloNum::omega()
    }
    fn is_zero(&self) -> bool {
        CycloNum::is_zero(self)
    }
    fn try_add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn try_sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn try_mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn to_cyclo(&self) -> CycloNum {
        self.clone()
    }
    fn from_eisenstein(e: Eisenstein) -> Option<Self> {
        Some(e.to_cyclo())
    }
}

impl RingElem for Eisenstein {
    fn zero() -> Self {
        Eisenstein::ZERO
    }
    fn one() -> Self {
        Eisenstein::ONE
    }
    fn omega() -> Self {
        Eisenstein::new(0, 1)
    }
    fn is_zero(&self) -> bool {
        Eisenstein::is_zero(self)
    }
    fn try_add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn try_sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn try_mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn to_cyclo(&self) -> CycloNum {
        Eisenstein::to_cyclo(*self)
    }
    fn from_eisenstein(e: Eisenstein) -> Option<Self> {
        Some(e)
    }
}

/// `Z[ω]` with `i64` coordinates; the fastest of the three scalar types,
/// tried first by the transfer-matrix kernels.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug)]
pub struct SmallEisenstein {
    pub a: i64,
    pub b: i64,
}

impl RingElem for SmallEisenstein {
    fn zero() -> Self {
        SmallEisenstein { a: 0, b: 0 }
    }
    fn one() -> Self {
        SmallEisenstein { a: 1, b: 0 }
    }
    fn omega() -> Self {
        SmallEisenstein { a: 0, b: 1 }
    }
    fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }
    #[inline]
    fn try_add(&self, o: &Self) -> Option<Self> {
        Some(SmallEisenstein {
            a: self.a.checked_add(o.a)?,
            b: self.b.checked_add(o.b)?,
        })
    }
    #[inline]
    fn try_sub(&self, o: &Self) -> Option<Self> {
        Some(SmallEisenstein {
            a: self.a.checked_sub(o.a)?,
            b: self.b.checked_sub(o.b)?,
        })
    }
    #[inline]
    fn try_mul(&self, o: &Self) -> Option<Self> {
        let ac = self.a.checked_mul(o.a)?;
        let bd = self.b.checked_mul(o.b)?;
        let ad = self.a.checked_mul(o.b)?;
        let bc = self.b.checked_mul(o.a)?;
        Some(SmallEisenstein {
            a: ac.checked_sub(bd)?,
            b: ad.checked_add(bc)?.checked_sub(bd)?,
        })
    }
    fn to_cyclo(&self) -> CycloNum {
        CycloNum::from_ints(self.a, self.b)
    }
    fn from_eisenstein(e: Eisenstein) -> Option<Self> {
        Some(SmallEisenstein {
            a: e.a.try_into().ok()?,
            b: e.b.try_into().ok()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(a: i64, b: i64) -> CycloNum {
        CycloNum::from_ints(a, b)
    }

    #[test]
    fn omega_squared() {
        assert_eq!(&CycloNum::omega() * &CycloNum::omega(), c(-1, -1));
        assert_eq!(CycloNum::omega_sq(), c(-1, -1));
        // 1 + ω + ω² = 0
        let s = &(&CycloNum::one() + &CycloNum::omega()) + &CycloNum::omega_sq();
        assert!(s.is_zero());
    }

    #[test]
    fn one_plus_omega_squares_to_omega() {
        assert_eq!(&c(1, 1) * &c(1, 1), CycloNum::omega());
        let x = c(3, -7);
        assert_eq!(&x * &CycloNum::one(), x);
    }

    #[test]
    fn inverses() {
        assert_eq!(CycloNum::omega().inv().unwrap(), c(-1, -1));
        assert_eq!(c(2, 0).inv().unwrap(), CycloNum::from_rational(Rational::new(1, 2)));
        assert_eq!(c(1, 1).inv().unwrap(), c(0, -1));
        assert!(matches!(CycloNum::zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn sixth_root_powers() {
        let z = sixth_root();
        assert_eq!(z.pow(2), CycloNum::omega());
        assert_eq!(z.pow(3), c(-1, 0));
        assert_eq!(z.pow(6), CycloNum::one());
        assert_eq!(&z * &sixth_root_inv(), CycloNum::one());
        assert_eq!(CycloNum::omega().pow(3), CycloNum::one());
    }

    #[test]
    fn parse_and_serialize() {
        let x: CycloNum = "3/2,-1".parse().unwrap();
        assert_eq!(x, CycloNum::new(Rational::new(3, 2), (-1).into()));
        let js = serde_json::to_string(&x).unwrap();
        assert_eq!(js, r#"["3/2","-1/1"]"#);
        let back: CycloNum = serde_json::from_str(&js).unwrap();
        assert_eq!(back, x);
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
    }

    #[test]
    fn eisenstein_matches_field() {
        let x = Eisenstein::new(5, -3);
        let y = Eisenstein::new(-2, 7);
        assert_eq!(x.checked_mul(y).unwrap().to_cyclo(), &x.to_cyclo() * &y.to_cyclo());
        assert!(Eisenstein::new(i128::MAX, 0).checked_mul(Eisenstein::new(2, 0)).is_none());
        assert_eq!(Eisenstein::from_cyclo(&c(4, -9)), Some(Eisenstein::new(4, -9)));
        assert_eq!(Eisenstein::from_cyclo(&CycloNum::from_rational(Rational::new(1, 2))), None);
        let (u, v) = (SmallEisenstein { a: 5, b: -3 }, SmallEisenstein { a: -2, b: 7 });
        assert_eq!(u.try_mul(&v).unwrap().to_cyclo(), x.checked_mul(y).unwrap().to_cyclo());
        assert!(SmallEisenstein { a: i64::MAX, b: 0 }.try_add(&SmallEisenstein::one()).is_none());
    }

    #[test]
    fn complex_embedding() {
        let z = CycloNum::omega().to_complex();
        assert!((z.norm() - 1.0).abs() < 1e-15);
        assert!((z.arg() - 2.0 * std::f64::consts::PI / 3.0).abs() < 1e-15);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_rational() -> impl Strategy<Value = Rational> {
            (-50i64..50, 1i64..20).prop_map(|(n, d)| Rational::new(n, d))
        }

        fn arb_cyclo() -> impl Strategy<Value = CycloNum> {
            (arb_rational(), arb_rational()).prop_map(|(a, b)| CycloNum::new(a, b))
        }

        proptest! {
            #[test]
            fn field_axioms(x in arb_cyclo(), y in arb_cyclo(), z in arb_cyclo()) {
                prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
                prop_assert_eq!(&x * &y, &y * &x);
                prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
                prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            }

            #[test]
            fn inverse_is_exact(x in arb_cyclo()) {
                prop_assume!(!x.is_zero());
                prop_assert!((&x * &x.inv().unwrap()).is_one());
            }

            #[test]
            fn norm_is_multiplicative(x in arb_cyclo(), y in arb_cyclo()) {
                prop_assert_eq!((&x * &y).norm(), &x.norm() * &y.norm());
            }
        }
    }
}
