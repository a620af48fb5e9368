//! The q-stuffle and shuffle products, the two coproducts, the co-unit,
//! truncated exponential and logarithm, and the primitive / group-like tests.
//!
//! A [`StuffleAlgebra`] fixes the contraction coefficient `c` of the product
//!
//! ```text
//! y_s u ⊹ y_t v = y_s (u ⊹ y_t v) + y_t (y_s u ⊹ v) + c · y_{s+t} (u ⊹ v)
//! ```
//!
//! and of its dual coproduct. `c = q` gives the symbolic q-stuffle, `c = 0`
//! the shuffle, and a rational constant a specialization.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use crate::coeff::{QCoefficient, Rational};
use crate::error::Error;
use crate::ncpoly::{NCPolynomial, Tensor2Polynomial};
use crate::report::{Report, ReportLine};
use crate::words::{words_up_to_weight, Letter, Word};

/// Per-weight-class cache of projector values, keyed by weight.
pub(crate) type ClassCache = RwLock<HashMap<usize, Arc<BTreeMap<Word, NCPolynomial>>>>;

/// A commutative product on `k⟨Y⟩` together with its dual coproduct.
///
/// Products and coproducts of words are memoized. The caches only ever hold
/// fully computed values, so concurrent use yields the same results as
/// sequential use.
pub struct StuffleAlgebra {
    contraction: QCoefficient,
    product_cache: RwLock<HashMap<(Word, Word), NCPolynomial>>,
    coproduct_cache: RwLock<HashMap<Word, Tensor2Polynomial>>,
    pub(crate) pi1_cache: ClassCache,
}

impl StuffleAlgebra {
    pub fn with_contraction(contraction: QCoefficient) -> Self {
        StuffleAlgebra {
            contraction,
            product_cache: RwLock::new(HashMap::new()),
            coproduct_cache: RwLock::new(HashMap::new()),
            pi1_cache: RwLock::new(HashMap::new()),
        }
    }

    /// Symbolic `q`.
    pub fn q_deformed() -> Self {
        Self::with_contraction(QCoefficient::q())
    }

    /// The shuffle product, `q = 0`.
    pub fn shuffle() -> Self {
        Self::with_contraction(QCoefficient::zero())
    }

    /// `q` specialized to a rational value.
    pub fn specialized(q0: Rational) -> Self {
        Self::with_contraction(QCoefficient::constant(q0))
    }

    pub fn contraction(&self) -> &QCoefficient {
        &self.contraction
    }

    pub fn stuffle(&self, u: &Word, v: &Word) -> NCPolynomial {
        if u.is_empty() {
            return NCPolynomial::word(v.clone());
        }
        if v.is_empty() {
            return NCPolynomial::word(u.clone());
        }
        let key = if u <= v {
            (u.clone(), v.clone())
        } else {
            (v.clone(), u.clone())
        };
        if let Some(hit) = self.product_cache.read().unwrap().get(&key) {
            return hit.clone();
        }
        let s = u.letters()[0];
        let t = v.letters()[0];
        let (ut, vt) = (u.tail(), v.tail());
        let mut out = prepend_letter(&self.stuffle(&ut, v), s);
        out += &prepend_letter(&self.stuffle(u, &vt), t);
        if !self.contraction.is_zero() {
            let inner = prepend_letter(&self.stuffle(&ut, &vt), s + t);
            out.add_scaled(&inner, &self.contraction);
        }
        self.product_cache
            .write()
            .unwrap()
            .insert(key, out.clone());
        out
    }

    pub fn stuffle_poly(&self, p: &NCPolynomial, q: &NCPolynomial) -> NCPolynomial {
        let mut out = NCPolynomial::zero();
        for (u, a) in p.terms() {
            for (v, b) in q.terms() {
                out.add_scaled(&self.stuffle(u, v), &(a * b));
            }
        }
        out
    }

    pub fn stuffle_power(&self, p: &NCPolynomial, k: usize) -> NCPolynomial {
        let mut acc = NCPolynomial::one();
        for _ in 0..k {
            acc = self.stuffle_poly(&acc, p);
        }
        acc
    }

    /// `u_1 ⊹ ... ⊹ u_k`; the empty product is `1`.
    pub fn stuffle_many<'a>(&self, words: impl IntoIterator<Item = &'a Word>) -> NCPolynomial {
        words.into_iter().fold(NCPolynomial::one(), |acc, w| {
            self.stuffle_poly(&acc, &NCPolynomial::word(w.clone()))
        })
    }

    /// `Δ(y_s) = y_s⊗1 + 1⊗y_s + c · Σ_{s_1+s_2=s} y_{s_1}⊗y_{s_2}`.
    pub fn letter_coproduct(&self, s: Letter) -> Tensor2Polynomial {
        let y = Word::letter(s);
        let mut t = Tensor2Polynomial::pure(y.clone(), Word::empty());
        t.add_term(Word::empty(), y, &QCoefficient::one());
        if !self.contraction.is_zero() {
            for s1 in 1..s {
                t.add_term(Word::letter(s1), Word::letter(s - s1), &self.contraction);
            }
        }
        t
    }

    /// The dual coproduct on a word: the product of its letter coproducts.
    pub fn coproduct_word(&self, w: &Word) -> Tensor2Polynomial {
        if w.is_empty() {
            return Tensor2Polynomial::one();
        }
        if let Some(hit) = self.coproduct_cache.read().unwrap().get(w) {
            return hit.clone();
        }
        let out = self
            .letter_coproduct(w.letters()[0])
            .tensor_mul(&self.coproduct_word(&w.tail()));
        self.coproduct_cache
            .write()
            .unwrap()
            .insert(w.clone(), out.clone());
        out
    }

    pub fn coproduct(&self, p: &NCPolynomial) -> Tensor2Polynomial {
        let mut out = Tensor2Polynomial::zero();
        for (w, c) in p.terms() {
            out.add_scaled(&self.coproduct_word(w), c);
        }
        out
    }

    /// Product on the tensor square: this algebra's product on the left
    /// slot and concatenation on the right.
    pub fn tensor_mul_mixed(&self, a: &Tensor2Polynomial, b: &Tensor2Polynomial) -> Tensor2Polynomial {
        self.tensor_mul_mixed_truncated(a, b, usize::MAX)
    }

    /// [`tensor_mul_mixed`](Self::tensor_mul_mixed) up to total weight `max_weight`.
    pub fn tensor_mul_mixed_truncated(
        &self,
        a: &Tensor2Polynomial,
        b: &Tensor2Polynomial,
        max_weight: usize,
    ) -> Tensor2Polynomial {
        a.mul_with_truncated(
            b,
            |u, v| self.stuffle(u, v),
            |u, v| NCPolynomial::word(u.concat(v)),
            max_weight,
        )
    }

    /// `exp(T)` in the mixed tensor algebra, truncated at total weight `max_weight`.
    pub fn tensor_exp_mixed(
        &self,
        t: &Tensor2Polynomial,
        max_weight: usize,
    ) -> Result<Tensor2Polynomial, Error> {
        let c = t.coefficient(&Word::empty(), &Word::empty());
        if !c.is_zero() {
            return Err(Error::NotProper(c.to_string()));
        }
        let t = t.truncate(max_weight);
        let mut out = Tensor2Polynomial::one();
        let mut power = Tensor2Polynomial::one();
        for k in 1..=max_weight {
            power = self.tensor_mul_mixed_truncated(&power, &t, max_weight);
            if power.is_zero() {
                break;
            }
            out.add_scaled(&power, &Rational::inverse_factorial(k).into());
        }
        Ok(out)
    }

    /// `log(T)` in the mixed tensor algebra for `T` with constant term `1⊗1`,
    /// truncated at total weight `max_weight`.
    pub fn tensor_log_mixed(
        &self,
        t: &Tensor2Polynomial,
        max_weight: usize,
    ) -> Result<Tensor2Polynomial, Error> {
        let c = t.coefficient(&Word::empty(), &Word::empty());
        if !c.is_one() {
            return Err(Error::NonUnitConstant(c.to_string()));
        }
        let x = &t.truncate(max_weight) - &Tensor2Polynomial::one();
        let mut out = Tensor2Polynomial::zero();
        let mut power = Tensor2Polynomial::one();
        for k in 1..=max_weight {
            power = self.tensor_mul_mixed_truncated(&power, &x, max_weight);
            if power.is_zero() {
                break;
            }
            out.add_scaled(&power, &series_sign_over(k).into());
        }
        Ok(out)
    }

    /// Checks `Δ(P) = P⊗1 + 1⊗P` on the part of `P` of weight at most `max_weight`.
    pub fn is_primitive(&self, p: &NCPolynomial, max_weight: usize) -> bool {
        let p = p.truncate(max_weight);
        let expected = &Tensor2Polynomial::tensor(&p, &NCPolynomial::one())
            + &Tensor2Polynomial::tensor(&NCPolynomial::one(), &p);
        self.coproduct(&p) == expected
    }

    /// The dual criterion: `⟨P|1⟩ = 0` and `⟨P | u ⊹ v⟩ = 0` for all nonempty
    /// `u, v` of total weight at most `max_weight`.
    pub fn is_primitive_by_pairing(&self, p: &NCPolynomial, max_weight: usize) -> bool {
        if !p.constant_term().is_zero() {
            return false;
        }
        let words = words_up_to_weight(max_weight);
        for u in words.iter().skip(1) {
            for v in words.iter().skip(1) {
                if u.weight() + v.weight() > max_weight || u > v {
                    continue;
                }
                if !p.pairing(&self.stuffle(u, v)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// `⟨S | u ⊹ v⟩ = ⟨S|u⟩⟨S|v⟩` for all `u, v` of total weight at most `max_weight`.
    pub fn is_grouplike(&self, s: &NCPolynomial, max_weight: usize) -> Result<bool, Error> {
        let c = s.constant_term();
        if !c.is_one() {
            return Err(Error::NonUnitConstant(c.to_string()));
        }
        let words = words_up_to_weight(max_weight);
        for u in &words {
            for v in &words {
                if u.weight() + v.weight() > max_weight || u > v {
                    continue;
                }
                let lhs = s.pairing(&self.stuffle(u, v));
                let rhs = &s.coefficient(u) * &s.coefficient(v);
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl std::fmt::Debug for StuffleAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("StuffleAlgebra")
            .field("contraction", &self.contraction)
            .finish_non_exhaustive()
    }
}

/// The shared symbolic q-stuffle algebra used by the free functions below.
pub fn q_stuffle() -> &'static StuffleAlgebra {
    static ALGEBRA: OnceLock<StuffleAlgebra> = OnceLock::new();
    ALGEBRA.get_or_init(StuffleAlgebra::q_deformed)
}

pub fn stuffle(u: &Word, v: &Word) -> NCPolynomial {
    q_stuffle().stuffle(u, v)
}

pub fn stuffle_poly(p: &NCPolynomial, q: &NCPolynomial) -> NCPolynomial {
    q_stuffle().stuffle_poly(p, q)
}

pub fn coproduct_stuffle(p: &NCPolynomial) -> Tensor2Polynomial {
    q_stuffle().coproduct(p)
}

/// The product recursion taken literally in the given argument order, with
/// no memoization. Serves as a reference for the cached product.
pub fn stuffle_reference(contraction: &QCoefficient, u: &Word, v: &Word) -> NCPolynomial {
    if u.is_empty() {
        return NCPolynomial::word(v.clone());
    }
    if v.is_empty() {
        return NCPolynomial::word(u.clone());
    }
    let (s, t) = (u.letters()[0], v.letters()[0]);
    let mut out = prepend_letter(&stuffle_reference(contraction, &u.tail(), v), s);
    out += &prepend_letter(&stuffle_reference(contraction, u, &v.tail()), t);
    if !contraction.is_zero() {
        let inner = stuffle_reference(contraction, &u.tail(), &v.tail());
        out.add_scaled(&prepend_letter(&inner, s + t), contraction);
    }
    out
}

/// The shuffle product by its own recursion, without any contraction term.
pub fn shuffle(u: &Word, v: &Word) -> NCPolynomial {
    if u.is_empty() {
        return NCPolynomial::word(v.clone());
    }
    if v.is_empty() {
        return NCPolynomial::word(u.clone());
    }
    let mut out = prepend_letter(&shuffle(&u.tail(), v), u.letters()[0]);
    out += &prepend_letter(&shuffle(u, &v.tail()), v.letters()[0]);
    out
}

pub fn shuffle_poly(p: &NCPolynomial, q: &NCPolynomial) -> NCPolynomial {
    let mut out = NCPolynomial::zero();
    for (u, a) in p.terms() {
        for (v, b) in q.terms() {
            out.add_scaled(&shuffle(u, v), &(a * b));
        }
    }
    out
}

/// Deconcatenation: `Σ_{w = uv} u⊗v`.
pub fn coproduct_conc(w: &Word) -> Tensor2Polynomial {
    let mut t = Tensor2Polynomial::zero();
    for (u, v) in w.splittings() {
        t.add_term(u, v, &QCoefficient::one());
    }
    t
}

pub fn coproduct_conc_poly(p: &NCPolynomial) -> Tensor2Polynomial {
    let mut out = Tensor2Polynomial::zero();
    for (w, c) in p.terms() {
        out.add_scaled(&coproduct_conc(w), c);
    }
    out
}

pub fn counit(p: &NCPolynomial) -> QCoefficient {
    p.constant_term()
}

/// Which multiplication a power series is taken in.
#[derive(Clone, Copy, Debug)]
pub enum Product<'a> {
    Conc,
    Stuffle(&'a StuffleAlgebra),
}

impl Product<'_> {
    pub fn mul(&self, p: &NCPolynomial, q: &NCPolynomial) -> NCPolynomial {
        match self {
            Product::Conc => p.conc(q),
            Product::Stuffle(alg) => alg.stuffle_poly(p, q),
        }
    }
}

/// `exp(P) = Σ_k P^k / k!` for proper `P`, truncated at `max_weight`.
pub fn exp_proper(p: &NCPolynomial, max_weight: usize, product: Product<'_>) -> Result<NCPolynomial, Error> {
    if !p.is_proper() {
        return Err(Error::NotProper(p.constant_term().to_string()));
    }
    let p = p.truncate(max_weight);
    let mut out = NCPolynomial::one();
    let mut power = NCPolynomial::one();
    for k in 1..=max_weight {
        power = product.mul(&power, &p).truncate(max_weight);
        if power.is_zero() {
            break;
        }
        out.add_scaled(&power, &Rational::inverse_factorial(k).into());
    }
    Ok(out)
}

/// `log(S) = Σ_{k≥1} (−1)^{k−1} (S − 1)^k / k` for `S` with constant term 1,
/// truncated at `max_weight`.
pub fn log_one_plus(s: &NCPolynomial, max_weight: usize, product: Product<'_>) -> Result<NCPolynomial, Error> {
    let c = s.constant_term();
    if !c.is_one() {
        return Err(Error::NonUnitConstant(c.to_string()));
    }
    let x = &s.truncate(max_weight) - &NCPolynomial::one();
    let mut out = NCPolynomial::zero();
    let mut power = NCPolynomial::one();
    for k in 1..=max_weight {
        power = product.mul(&power, &x).truncate(max_weight);
        if power.is_zero() {
            break;
        }
        out.add_scaled(&power, &series_sign_over(k).into());
    }
    Ok(out)
}

/// `(−1)^{k−1} / k`, the coefficients of `log(1 + x)`.
pub fn series_sign_over(k: usize) -> Rational {
    let r = Rational::new(1, k as i64).expect("k ≥ 1");
    if k.is_multiple_of(2) {
        -r
    } else {
        r
    }
}

/// `y_s · P`.
pub fn prepend_letter(p: &NCPolynomial, s: Letter) -> NCPolynomial {
    NCPolynomial::from_terms(p.terms().map(|(w, c)| (w.prepend(s), c.clone())))
}

/// Commutativity (against the unmemoized recursion, in both argument
/// orders), associativity, coassociativity of both coproducts, and the
/// duality `⟨u ⊹ v | w⟩ = ⟨u ⊗ v | Δ(w)⟩`, over words of total weight at most
/// `max_weight`.
pub fn verify_axioms(alg: &StuffleAlgebra, max_weight: usize) -> Report {
    let mut report = Report::new("stuffle bialgebra axioms");
    let words = words_up_to_weight(max_weight);
    let fits = |ws: &[&Word]| ws.iter().map(|w| w.weight()).sum::<usize>() <= max_weight;

    let mut comm = ReportLine::new("commutativity");
    for u in &words {
        for v in words.iter().filter(|v| fits(&[u, v])) {
            let p = alg.stuffle(u, v);
            let ok = p == stuffle_reference(alg.contraction(), u, v)
                && p == stuffle_reference(alg.contraction(), v, u);
            comm.check(ok, || format!("[{u}] ⊹ [{v}]"));
        }
    }
    report.push(comm);

    let mut assoc = ReportLine::new("associativity");
    for u in &words {
        for v in words.iter().filter(|v| fits(&[u, v])) {
            for x in words.iter().filter(|x| fits(&[u, v, x])) {
                let left = alg.stuffle_poly(&alg.stuffle(u, v), &NCPolynomial::word(x.clone()));
                let right = alg.stuffle_poly(&NCPolynomial::word(u.clone()), &alg.stuffle(v, x));
                assoc.check(left == right, || format!("[{u}], [{v}], [{x}]"));
            }
        }
    }
    report.push(assoc);

    let mut coassoc = ReportLine::new("coassociativity of Δ_⊹");
    let mut deconc = ReportLine::new("coassociativity of deconcatenation");
    for w in &words {
        let (l, r) = coassociativity_sides(|x| alg.coproduct_word(x), w);
        coassoc.check(l == r, || format!("[{w}]"));
        let (l, r) = coassociativity_sides(coproduct_conc, w);
        deconc.check(l == r, || format!("[{w}]"));
    }
    report.push(coassoc);
    report.push(deconc);

    let mut dual = ReportLine::new("⟨u ⊹ v | w⟩ = ⟨u ⊗ v | Δ(w)⟩");
    for w in &words {
        let delta = alg.coproduct_word(w);
        for u in words.iter().filter(|u| u.weight() <= w.weight()) {
            for v in words.iter().filter(|v| u.weight() + v.weight() == w.weight()) {
                let ok = alg.stuffle(u, v).coefficient(w) == delta.coefficient(u, v);
                dual.check(ok, || format!("u = [{u}], v = [{v}], w = [{w}]"));
            }
        }
    }
    report.push(dual);
    report
}

type Tensor3 = BTreeMap<(Word, Word, Word), QCoefficient>;

/// `(Δ ⊗ id)Δ(w)` and `(id ⊗ Δ)Δ(w)` with zero terms removed.
fn coassociativity_sides(delta: impl Fn(&Word) -> Tensor2Polynomial, w: &Word) -> (Tensor3, Tensor3) {
    let (mut left, mut right) = (Tensor3::new(), Tensor3::new());
    for (a, b, c) in delta(w).terms() {
        for (a1, a2, d) in delta(a).terms() {
            *left.entry((a1.clone(), a2.clone(), b.clone())).or_default() += &(c * d);
        }
        for (b1, b2, d) in delta(b).terms() {
            *right.entry((a.clone(), b1.clone(), b2.clone())).or_default() += &(c * d);
        }
    }
    left.retain(|_, c| !c.is_zero());
    right.retain(|_, c| !c.is_zero());
    (left, right)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn stuffle_examples() {
        let p = stuffle(&w("1"), &w("1"));
        assert_eq!(p.to_string(), "2·[1,1] + q·[2]");
        let p = stuffle(&w("2"), &w("1"));
        let expected = NCPolynomial::from_terms([
            (w("2,1"), QCoefficient::one()),
            (w("1,2"), QCoefficient::one()),
            (w("3"), QCoefficient::q()),
        ]);
        assert_eq!(p, expected);
        assert_eq!(stuffle(&w("3,1"), &Word::empty()), NCPolynomial::word(w("3,1")));
    }

    #[test]
    fn shuffle_examples() {
        assert_eq!(
            shuffle(&w("1"), &w("2")),
            &NCPolynomial::word(w("1,2")) + &NCPolynomial::word(w("2,1"))
        );
        assert_eq!(
            shuffle(&w("1"), &w("1")),
            NCPolynomial::term(w("1,1"), QCoefficient::integer(2))
        );
        let sh = StuffleAlgebra::shuffle();
        assert_eq!(sh.stuffle(&w("2,1"), &w("1,3")), shuffle(&w("2,1"), &w("1,3")));
    }

    #[test]
    fn coproduct_examples() {
        let t = coproduct_conc(&w("2,1"));
        assert_eq!(t.len(), 3);
        assert!(t.coefficient(&w("2"), &w("1")).is_one());
        assert_eq!(coproduct_conc(&Word::empty()), Tensor2Polynomial::one());
        let d = coproduct_stuffle(&NCPolynomial::word(w("2")));
        let mut expected = Tensor2Polynomial::pure(w("2"), Word::empty());
        expected.add_term(Word::empty(), w("2"), &QCoefficient::one());
        expected.add_term(w("1"), w("1"), &QCoefficient::q());
        assert_eq!(d, expected);
        assert_eq!(coproduct_stuffle(&NCPolynomial::one()), Tensor2Polynomial::one());
    }

    #[test]
    fn counit_examples() {
        assert!(counit(&NCPolynomial::one()).is_one());
        assert!(counit(&NCPolynomial::word(w("2,1"))).is_zero());
        let p = &NCPolynomial::term(Word::empty(), QCoefficient::integer(3)) + &NCPolynomial::word(w("1"));
        assert_eq!(counit(&p), QCoefficient::integer(3));
    }

    #[test]
    fn primitive_examples() {
        let alg = q_stuffle();
        assert!(alg.is_primitive(&NCPolynomial::word(w("1")), 4));
        assert!(!alg.is_primitive(&NCPolynomial::word(w("2")), 4));
        let pi = NCPolynomial::from_terms([
            (w("2"), QCoefficient::one()),
            (w("1,1"), QCoefficient::monomial(r(-1, 2), 1)),
        ]);
        assert!(alg.is_primitive(&pi, 4));
        assert!(alg.is_primitive_by_pairing(&pi, 4));
        assert!(!alg.is_primitive_by_pairing(&NCPolynomial::word(w("2")), 4));
    }

    #[test]
    fn grouplike_examples() {
        let alg = q_stuffle();
        assert!(alg.is_grouplike(&NCPolynomial::one(), 4).unwrap());
        let s = &NCPolynomial::one() + &NCPolynomial::word(w("2"));
        assert!(!alg.is_grouplike(&s, 2).unwrap());
        assert!(alg.is_grouplike(&NCPolynomial::word(w("2")), 2).is_err());
        let pi = NCPolynomial::from_terms([
            (w("2"), QCoefficient::one()),
            (w("1,1"), QCoefficient::monomial(r(-1, 2), 1)),
        ]);
        let e = exp_proper(&pi, 6, Product::Conc).unwrap();
        assert!(alg.is_grouplike(&e, 6).unwrap());
    }

    #[test]
    fn exp_and_log() {
        let alg = q_stuffle();
        assert_eq!(exp_proper(&NCPolynomial::zero(), 4, Product::Conc).unwrap(), NCPolynomial::one());
        let e = exp_proper(&NCPolynomial::word(w("1")), 2, Product::Stuffle(alg)).unwrap();
        let expected = NCPolynomial::from_terms([
            (Word::empty(), QCoefficient::one()),
            (w("1"), QCoefficient::one()),
            (w("1,1"), QCoefficient::one()),
            (w("2"), QCoefficient::monomial(r(1, 2), 1)),
        ]);
        assert_eq!(e, expected);
        assert!(exp_proper(&NCPolynomial::one(), 3, Product::Conc).is_err());
        assert!(log_one_plus(&NCPolynomial::word(w("1")), 3, Product::Conc).is_err());
        let p = &NCPolynomial::word(w("2,1")) + &NCPolynomial::term(w("1"), QCoefficient::q());
        let back = log_one_plus(&exp_proper(&p, 5, Product::Conc).unwrap(), 5, Product::Conc).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn axioms_hold_at_weight_four() {
        for alg in [StuffleAlgebra::q_deformed(), StuffleAlgebra::specialized(Rational::from(-1))] {
            let report = verify_axioms(&alg, 4);
            assert!(report.passed(), "{report}");
            assert_eq!(report.lines.len(), 5);
        }
    }
}
