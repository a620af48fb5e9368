//! Exact coefficients: arbitrary-precision rationals and the polynomial ring ℚ[q].
//!
//! [`QCoefficient`] is the coefficient ring of every polynomial in this crate.
//! The deformation parameter `q` is kept symbolic; [`QCoefficient::eval`]
//! specializes it at a rational value.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A rational number in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Result<Self, Error> {
        if denom == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom.into())))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
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

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self, Error> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Rational::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// `1 / n!`.
    pub fn inverse_factorial(n: usize) -> Self {
        let mut f = BigInt::one();
        for k in 2..=n {
            f *= BigInt::from(k);
        }
        Rational(BigRational::new(BigInt::one(), f))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid rational {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(n, d)))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl Add<&Rational> for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}

impl Sub<&Rational> for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        Rational(&self.0 - &rhs.0)
    }
}

impl Mul<&Rational> for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational(&self.0 * &rhs.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A polynomial in `q` with rational coefficients.
///
/// Stored sparsely as `q`-exponent → nonzero rational; the zero polynomial
/// is the empty map.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QCoefficient {
    terms: BTreeMap<u32, Rational>,
}

impl QCoefficient {
    pub fn zero() -> Self {
        QCoefficient::default()
    }

    pub fn one() -> Self {
        QCoefficient::constant(Rational::one())
    }

    /// The deformation parameter `q` itself.
    pub fn q() -> Self {
        QCoefficient::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        QCoefficient::monomial(c, 0)
    }

    pub fn integer(n: i64) -> Self {
        QCoefficient::constant(Rational::from_integer(n))
    }

    /// `c · q^pow`.
    pub fn monomial(c: Rational, pow: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(pow, c);
        }
        QCoefficient { terms }
    }

    /// Builds a coefficient from arbitrary `(pow, c)` pairs, merging repeated
    /// powers and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (u32, Rational)>>(iter: I) -> Self {
        let mut out = QCoefficient::zero();
        for (p, c) in iter {
            out.add_monomial(p, &c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(Rational::is_one)
    }

    /// True when the coefficient does not depend on `q`.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&p| p == 0)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&0).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coefficient(&self, pow: u32) -> Rational {
        self.terms.get(&pow).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// `(pow, coefficient)` pairs by ascending power.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> + '_ {
        self.terms.iter().map(|(&p, c)| (p, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// True when every rational coefficient is non-negative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    fn add_monomial(&mut self, pow: u32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(pow).or_insert_with(Rational::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&pow);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return QCoefficient::zero();
        }
        QCoefficient {
            terms: self.terms.iter().map(|(&p, v)| (p, v * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = QCoefficient::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Horner evaluation at `q = q0`.
    pub fn eval(&self, q0: &Rational) -> Rational {
        let Some(deg) = self.degree() else {
            return Rational::zero();
        };
        let mut acc = Rational::zero();
        for p in (0..=deg).rev() {
            acc = &acc * q0;
            if let Some(c) = self.terms.get(&p) {
                acc = &acc + c;
            }
        }
        acc
    }
}

impl fmt::Debug for QCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::render::coefficient_text(self))
    }
}

impl fmt::Display for QCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::render::coefficient_text(self))
    }
}

impl From<Rational> for QCoefficient {
    fn from(c: Rational) -> Self {
        QCoefficient::constant(c)
    }
}

impl Add<&QCoefficient> for &QCoefficient {
    type Output = QCoefficient;
    fn add(self, rhs: &QCoefficient) -> QCoefficient {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&QCoefficient> for QCoefficient {
    fn add_assign(&mut self, rhs: &QCoefficient) {
        for (&p, c) in &rhs.terms {
            self.add_monomial(p, c);
        }
    }
}

impl Sub<&QCoefficient> for &QCoefficient {
    type Output = QCoefficient;
    fn sub(self, rhs: &QCoefficient) -> QCoefficient {
        self + &(-rhs)
    }
}

impl Neg for &QCoefficient {
    type Output = QCoefficient;
    fn neg(self) -> QCoefficient {
        QCoefficient {
            terms: self.terms.iter().map(|(&p, c)| (p, -c)).collect(),
        }
    }
}

impl Neg for QCoefficient {
    type Output = QCoefficient;
    fn neg(self) -> QCoefficient {
        -&self
    }
}

impl Mul<&QCoefficient> for &QCoefficient {
    type Output = QCoefficient;
    fn mul(self, rhs: &QCoefficient) -> QCoefficient {
        let mut out = QCoefficient::zero();
        for (&p, a) in &self.terms {
            for (&r, b) in &rhs.terms {
                out.add_monomial(p + r, &(a * b));
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct QTermRepr {
    qpow: u32,
    coeff: Rational,
}

impl Serialize for QCoefficient {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (&qpow, coeff) in &self.terms {
            seq.serialize_element(&QTermRepr {
                qpow,
                coeff: coeff.clone(),
            })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for QCoefficient {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms = Vec::<QTermRepr>::deserialize(deserializer)?;
        Ok(QCoefficient::from_terms(
            terms.into_iter().map(|t| (t.qpow, t.coeff)),
        ))
    }
}
