//! Sparse noncommutative polynomials over ℚ[q] and elements of the tensor square.
//!
//! Both types keep a canonical form: no stored coefficient is zero. Terms are
//! kept in a `BTreeMap`, so iteration follows the word order of [`Word`].

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coeff::{QCoefficient, Rational};
use crate::words::Word;

/// An element of `k⟨Y⟩`: a finitely supported map from words to coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct NCPolynomial {
    terms: BTreeMap<Word, QCoefficient>,
}

impl NCPolynomial {
    pub fn zero() -> Self {
        NCPolynomial::default()
    }

    /// The empty word `1_{Y*}`.
    pub fn one() -> Self {
        NCPolynomial::word(Word::empty())
    }

    pub fn word(w: Word) -> Self {
        NCPolynomial::term(w, QCoefficient::one())
    }

    pub fn term(w: Word, c: QCoefficient) -> Self {
        let mut p = NCPolynomial::zero();
        p.add_term(w, &c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, QCoefficient)>>(iter: I) -> Self {
        let mut p = NCPolynomial::zero();
        for (w, c) in iter {
            p.add_term(w, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending word order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &QCoefficient)> + '_ {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> + '_ {
        self.terms.keys()
    }

    pub fn coefficient(&self, w: &Word) -> QCoefficient {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Coefficient of the empty word.
    pub fn constant_term(&self) -> QCoefficient {
        self.coefficient(&Word::empty())
    }

    /// Zero constant term.
    pub fn is_proper(&self) -> bool {
        !self.terms.contains_key(&Word::empty())
    }

    pub fn add_term(&mut self, w: Word, c: &QCoefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &NCPolynomial, c: &QCoefficient) {
        if c.is_zero() {
            return;
        }
        for (w, d) in &other.terms {
            self.add_term(w.clone(), &(d * c));
        }
    }

    pub fn scale(&self, c: &QCoefficient) -> NCPolynomial {
        let mut out = NCPolynomial::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn scale_rational(&self, c: &Rational) -> NCPolynomial {
        self.scale(&QCoefficient::constant(c.clone()))
    }

    /// Bilinear extension of word concatenation.
    pub fn conc(&self, other: &NCPolynomial) -> NCPolynomial {
        let mut out = NCPolynomial::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), &(a * b));
            }
        }
        out
    }

    /// `[A, B] = AB − BA` under concatenation.
    pub fn bracket(&self, other: &NCPolynomial) -> NCPolynomial {
        &self.conc(other) - &other.conc(self)
    }

    pub fn conc_pow(&self, k: usize) -> NCPolynomial {
        let mut acc = NCPolynomial::one();
        for _ in 0..k {
            acc = acc.conc(self);
        }
        acc
    }

    /// The scalar product in which words are orthonormal.
    pub fn pairing(&self, other: &NCPolynomial) -> QCoefficient {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = QCoefficient::zero();
        for (w, a) in &small.terms {
            if let Some(b) = large.terms.get(w) {
                acc += &(a * b);
            }
        }
        acc
    }

    /// Drops all terms of weight greater than `max_weight`.
    pub fn truncate(&self, max_weight: usize) -> NCPolynomial {
        NCPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.weight() <= max_weight)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Keeps only the terms of weight exactly `n`.
    pub fn homogeneous_part(&self, n: usize) -> NCPolynomial {
        NCPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.weight() == n)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// The common weight of all terms, if there is one. The zero polynomial
    /// has no weight.
    pub fn homogeneous_weight(&self) -> Option<usize> {
        let mut weights = self.terms.keys().map(Word::weight);
        let first = weights.next()?;
        weights.all(|n| n == first).then_some(first)
    }

    pub fn max_weight(&self) -> usize {
        self.terms.keys().map(Word::weight).max().unwrap_or(0)
    }

    pub fn map_coefficients(&self, f: impl Fn(&QCoefficient) -> QCoefficient) -> NCPolynomial {
        NCPolynomial::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    /// Specializes `q = q0`.
    pub fn eval(&self, q0: &Rational) -> NCPolynomial {
        self.map_coefficients(|c| QCoefficient::constant(c.eval(q0)))
    }

    /// Applies a linear map given on words.
    pub fn apply_linear(&self, f: impl Fn(&Word) -> NCPolynomial) -> NCPolynomial {
        let mut out = NCPolynomial::zero();
        for (w, c) in &self.terms {
            out.add_scaled(&f(w), c);
        }
        out
    }
}

impl std::fmt::Debug for NCPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", crate::render::polynomial_text(self))
    }
}

impl std::fmt::Display for NCPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", crate::render::polynomial_text(self))
    }
}

impl From<Word> for NCPolynomial {
    fn from(w: Word) -> Self {
        NCPolynomial::word(w)
    }
}

impl Add<&NCPolynomial> for &NCPolynomial {
    type Output = NCPolynomial;
    fn add(self, rhs: &NCPolynomial) -> NCPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&NCPolynomial> for NCPolynomial {
    fn add_assign(&mut self, rhs: &NCPolynomial) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), c);
        }
    }
}

impl Sub<&NCPolynomial> for &NCPolynomial {
    type Output = NCPolynomial;
    fn sub(self, rhs: &NCPolynomial) -> NCPolynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &QCoefficient::integer(-1));
        out
    }
}

impl Neg for &NCPolynomial {
    type Output = NCPolynomial;
    fn neg(self) -> NCPolynomial {
        self.map_coefficients(|c| -c)
    }
}

/// Concatenation product.
impl Mul<&NCPolynomial> for &NCPolynomial {
    type Output = NCPolynomial;
    fn mul(self, rhs: &NCPolynomial) -> NCPolynomial {
        self.conc(rhs)
    }
}

#[derive(Serialize, Deserialize)]
struct PolyTermRepr {
    word: Word,
    coeff: QCoefficient,
}

impl Serialize for NCPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (w, c) in &self.terms {
            seq.serialize_element(&PolyTermRepr {
                word: w.clone(),
                coeff: c.clone(),
            })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for NCPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms = Vec::<PolyTermRepr>::deserialize(deserializer)?;
        Ok(NCPolynomial::from_terms(
            terms.into_iter().map(|t| (t.word, t.coeff)),
        ))
    }
}

/// An element of `k⟨Y⟩ ⊗ k⟨Y⟩`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Tensor2Polynomial {
    terms: BTreeMap<(Word, Word), QCoefficient>,
}

impl Tensor2Polynomial {
    pub fn zero() -> Self {
        Tensor2Polynomial::default()
    }

    /// `1 ⊗ 1`.
    pub fn one() -> Self {
        Tensor2Polynomial::pure(Word::empty(), Word::empty())
    }

    /// `u ⊗ v`.
    pub fn pure(u: Word, v: Word) -> Self {
        let mut t = Tensor2Polynomial::zero();
        t.add_term(u, v, &QCoefficient::one());
        t
    }

    /// `P ⊗ Q`.
    pub fn tensor(p: &NCPolynomial, q: &NCPolynomial) -> Self {
        let mut t = Tensor2Polynomial::zero();
        for (u, a) in p.terms() {
            for (v, b) in q.terms() {
                t.add_term(u.clone(), v.clone(), &(a * b));
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Word, &QCoefficient)> + '_ {
        self.terms.iter().map(|((u, v), c)| (u, v, c))
    }

    pub fn coefficient(&self, u: &Word, v: &Word) -> QCoefficient {
        self.terms
            .get(&(u.clone(), v.clone()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn add_term(&mut self, u: Word, v: Word, c: &QCoefficient) {
        if c.is_zero() {
            return;
        }
        let key = (u, v);
        match self.terms.get_mut(&key) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Tensor2Polynomial, c: &QCoefficient) {
        if c.is_zero() {
            return;
        }
        for ((u, v), d) in &other.terms {
            self.add_term(u.clone(), v.clone(), &(d * c));
        }
    }

    pub fn scale(&self, c: &QCoefficient) -> Tensor2Polynomial {
        let mut out = Tensor2Polynomial::zero();
        out.add_scaled(self, c);
        out
    }

    /// `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`, concatenation in both slots.
    pub fn tensor_mul(&self, other: &Tensor2Polynomial) -> Tensor2Polynomial {
        self.mul_with(other, |a, c| NCPolynomial::word(a.concat(c)), |b, d| {
            NCPolynomial::word(b.concat(d))
        })
    }

    /// Product with caller-chosen multiplications on the left and right slots.
    pub fn mul_with<L, R>(&self, other: &Tensor2Polynomial, left: L, right: R) -> Tensor2Polynomial
    where
        L: Fn(&Word, &Word) -> NCPolynomial,
        R: Fn(&Word, &Word) -> NCPolynomial,
    {
        self.mul_with_truncated(other, left, right, usize::MAX)
    }

    /// [`mul_with`](Self::mul_with) keeping only terms of total weight at most
    /// `max_weight`. Both multiplications must be weight-graded, so pairs
    /// that are too heavy are skipped before multiplying.
    pub fn mul_with_truncated<L, R>(
        &self,
        other: &Tensor2Polynomial,
        left: L,
        right: R,
        max_weight: usize,
    ) -> Tensor2Polynomial
    where
        L: Fn(&Word, &Word) -> NCPolynomial,
        R: Fn(&Word, &Word) -> NCPolynomial,
    {
        let mut out = Tensor2Polynomial::zero();
        for ((a, b), x) in &self.terms {
            let ab = a.weight() + b.weight();
            for ((c, d), y) in &other.terms {
                if ab + c.weight() + d.weight() > max_weight {
                    continue;
                }
                let coeff = x * y;
                let l = left(a, c);
                let r = right(b, d);
                for (lw, lc) in l.terms() {
                    let lc = lc * &coeff;
                    for (rw, rc) in r.terms() {
                        out.add_term(lw.clone(), rw.clone(), &(&lc * rc));
                    }
                }
            }
        }
        out
    }

    /// `Σ A(u, v) · P(u) · Q(v)`.
    pub fn pairing(&self, p: &NCPolynomial, q: &NCPolynomial) -> QCoefficient {
        let mut acc = QCoefficient::zero();
        for ((u, v), c) in &self.terms {
            let a = p.coefficient(u);
            if a.is_zero() {
                continue;
            }
            let b = q.coefficient(v);
            if b.is_zero() {
                continue;
            }
            acc += &(&(c * &a) * &b);
        }
        acc
    }

    /// Drops all terms whose total weight (both slots) exceeds `max_weight`.
    pub fn truncate(&self, max_weight: usize) -> Tensor2Polynomial {
        Tensor2Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|((u, v), _)| u.weight() + v.weight() <= max_weight)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn map_coefficients(&self, f: impl Fn(&QCoefficient) -> QCoefficient) -> Tensor2Polynomial {
        let mut out = Tensor2Polynomial::zero();
        for ((u, v), c) in &self.terms {
            out.add_term(u.clone(), v.clone(), &f(c));
        }
        out
    }

    pub fn eval(&self, q0: &Rational) -> Tensor2Polynomial {
        self.map_coefficients(|c| QCoefficient::constant(c.eval(q0)))
    }
}

impl std::fmt::Debug for Tensor2Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", crate::render::tensor_text(self))
    }
}

impl Add<&Tensor2Polynomial> for &Tensor2Polynomial {
    type Output = Tensor2Polynomial;
    fn add(self, rhs: &Tensor2Polynomial) -> Tensor2Polynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &QCoefficient::one());
        out
    }
}

impl Sub<&Tensor2Polynomial> for &Tensor2Polynomial {
    type Output = Tensor2Polynomial;
    fn sub(self, rhs: &Tensor2Polynomial) -> Tensor2Polynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &QCoefficient::integer(-1));
        out
    }
}

impl Neg for &Tensor2Polynomial {
    type Output = Tensor2Polynomial;
    fn neg(self) -> Tensor2Polynomial {
        self.map_coefficients(|c| -c)
    }
}

#[derive(Serialize, Deserialize)]
struct TensorTermRepr {
    left: Word,
    right: Word,
    coeff: QCoefficient,
}

impl Serialize for Tensor2Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for ((u, v), c) in &self.terms {
            seq.serialize_element(&TensorTermRepr {
                left: u.clone(),
                right: v.clone(),
                coeff: c.clone(),
            })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Tensor2Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms = Vec::<TensorTermRepr>::deserialize(deserializer)?;
        let mut t = Tensor2Polynomial::zero();
        for term in terms {
            t.add_term(term.left, term.right, &term.coeff);
        }
        Ok(t)
    }
}
