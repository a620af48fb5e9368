//! The Eulerian projector `π_1`, its adjoint `π̌_1`, the logarithm of the
//! diagonal series, and the reconstruction of words from projector values.
//!
//! Every function takes the [`StuffleAlgebra`] whose product defines the
//! projectors, so the same code serves symbolic `q` and its specializations.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::coeff::{QCoefficient, Rational};
use crate::error::Error;
use crate::ncpoly::{NCPolynomial, Tensor2Polynomial};
use crate::ops::{series_sign_over, StuffleAlgebra};
use crate::words::{words_of_weight, words_up_to_weight, Letter, Word};

/// All ways to cut `w` into `k ≥ 1` nonempty consecutive factors.
pub fn factorizations(w: &Word) -> Vec<Vec<Word>> {
    if w.is_empty() {
        return Vec::new();
    }
    let gaps = w.len() - 1;
    (0u64..1 << gaps)
        .map(|mask| {
            let mut parts = Vec::new();
            let mut start = 0;
            for g in 0..gaps {
                if mask & (1 << g) != 0 {
                    parts.push(w.prefix(g + 1).suffix_from(start));
                    start = g + 1;
                }
            }
            parts.push(w.suffix_from(start));
            parts
        })
        .collect()
}

/// Every tuple `(u_1, ..., u_k)` of nonempty words with total weight `n`,
/// i.e. every factorization of every word of weight `n`.
fn tuples_of_weight(n: usize) -> impl Iterator<Item = (Word, Vec<Word>)> {
    words_of_weight(n)
        .into_iter()
        .flat_map(|x| factorizations(&x).into_iter().map(move |parts| (x.clone(), parts)))
}

/// `π_1` on every word of weight `n`, from the defining sum over tuples.
pub fn pi1_class(alg: &StuffleAlgebra, n: usize) -> Arc<BTreeMap<Word, NCPolynomial>> {
    if let Some(hit) = alg.pi1_cache.read().unwrap().get(&n) {
        return hit.clone();
    }
    let mut out: BTreeMap<Word, NCPolynomial> = words_of_weight(n)
        .into_iter()
        .map(|w| (w, NCPolynomial::zero()))
        .collect();
    for (x, parts) in tuples_of_weight(n) {
        let sign = QCoefficient::from(series_sign_over(parts.len()));
        for (w, c) in alg.stuffle_many(&parts).terms() {
            let entry = out.get_mut(w).expect("product is weight-homogeneous");
            entry.add_term(x.clone(), &(c * &sign));
        }
    }
    let out = Arc::new(out);
    alg.pi1_cache.write().unwrap().insert(n, out.clone());
    out
}

/// `π_1(w) = Σ_k (−1)^{k−1}/k Σ ⟨w | u_1 ⊹ ... ⊹ u_k⟩ u_1 ... u_k`.
pub fn pi1(alg: &StuffleAlgebra, w: &Word) -> Result<NCPolynomial, Error> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(pi1_class(alg, w.weight())[w].clone())
}

/// Linear extension of `π_1`, sending the empty word to 0.
pub fn pi1_poly(alg: &StuffleAlgebra, p: &NCPolynomial) -> NCPolynomial {
    p.apply_linear(|w| pi1(alg, w).unwrap_or_default())
}

/// `π_1(w)` as `Σ_k (−1)^{k−1}/k · conc ∘ Δ̄^{(k−1)}(w)`, with `Δ̄` the
/// reduced coproduct. Avoids the enumeration of tuples.
pub fn pi1_check(alg: &StuffleAlgebra, w: &Word) -> Result<NCPolynomial, Error> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut out = NCPolynomial::zero();
    // (concatenation of the finished factors, last factor) → coefficient
    let mut level: BTreeMap<(Word, Word), QCoefficient> =
        BTreeMap::from([((Word::empty(), w.clone()), QCoefficient::one())]);
    let mut k = 1;
    while !level.is_empty() {
        let sign = QCoefficient::from(series_sign_over(k));
        for ((prefix, last), c) in &level {
            out.add_term(prefix.concat(last), &(c * &sign));
        }
        let mut next: BTreeMap<(Word, Word), QCoefficient> = BTreeMap::new();
        for ((prefix, last), c) in &level {
            for (a, b, d) in alg.coproduct_word(last).terms() {
                if a.is_empty() || b.is_empty() {
                    continue;
                }
                let e = next
                    .entry((prefix.concat(a), b.clone()))
                    .or_default();
                *e += &(c * d);
            }
        }
        next.retain(|_, c| !c.is_zero());
        level = next;
        k += 1;
    }
    Ok(out)
}

/// `π̌_1(w) = Σ_k (−1)^{k−1}/k Σ_{w = u_1 ... u_k} u_1 ⊹ ... ⊹ u_k`.
pub fn pi1_adjoint(alg: &StuffleAlgebra, w: &Word) -> Result<NCPolynomial, Error> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut out = NCPolynomial::zero();
    for parts in factorizations(w) {
        let sign = QCoefficient::from(series_sign_over(parts.len()));
        out.add_scaled(&alg.stuffle_many(&parts), &sign);
    }
    Ok(out)
}

/// `𝒟_Y = Σ_w w⊗w` truncated at weight `max_weight`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalSeries {
    pub max_weight: usize,
    pub value: Tensor2Polynomial,
}

impl DiagonalSeries {
    pub fn new(max_weight: usize) -> Self {
        let mut value = Tensor2Polynomial::zero();
        for w in words_up_to_weight(max_weight) {
            value.add_term(w.clone(), w, &QCoefficient::one());
        }
        DiagonalSeries { max_weight, value }
    }
}

/// `log 𝒟_Y` up to weight `max_weight`, expanded as a power series with the
/// algebra's product on the left slot and concatenation on the right.
pub fn log_diagonal(alg: &StuffleAlgebra, max_weight: usize) -> Tensor2Polynomial {
    let d = DiagonalSeries::new(max_weight);
    alg.tensor_log_mixed(&d.value, 2 * max_weight)
        .expect("diagonal series has constant term 1⊗1")
}

/// `Σ_{(w) ≤ N} w ⊗ π_1(w)`.
pub fn log_diagonal_pi1_form(alg: &StuffleAlgebra, max_weight: usize) -> Tensor2Polynomial {
    let mut out = Tensor2Polynomial::zero();
    for n in 1..=max_weight {
        for (w, p) in pi1_class(alg, n).iter() {
            out.add_scaled(
                &Tensor2Polynomial::tensor(&NCPolynomial::word(w.clone()), p),
                &QCoefficient::one(),
            );
        }
    }
    out
}

/// `Σ_{(w) ≤ N} π̌_1(w) ⊗ w`.
pub fn log_diagonal_adjoint_form(alg: &StuffleAlgebra, max_weight: usize) -> Tensor2Polynomial {
    let mut out = Tensor2Polynomial::zero();
    for w in words_up_to_weight(max_weight).into_iter().skip(1) {
        let p = pi1_adjoint(alg, &w).expect("nonempty word");
        out.add_scaled(
            &Tensor2Polynomial::tensor(&p, &NCPolynomial::word(w)),
            &QCoefficient::one(),
        );
    }
    out
}

/// `Σ_k 1/k! Σ ⟨w | u_1 ⊹ ... ⊹ u_k⟩ π_1(u_1) ... π_1(u_k)`, which equals `w`.
pub fn reconstruct(alg: &StuffleAlgebra, w: &Word) -> NCPolynomial {
    if w.is_empty() {
        return NCPolynomial::one();
    }
    let mut out = NCPolynomial::zero();
    for (_, parts) in tuples_of_weight(w.weight()) {
        let c = alg.stuffle_many(&parts).coefficient(w);
        if c.is_zero() {
            continue;
        }
        let product = parts.iter().fold(NCPolynomial::one(), |acc, u| {
            acc.conc(&pi1(alg, u).expect("nonempty part"))
        });
        let c = c.scale(&Rational::inverse_factorial(parts.len()));
        out.add_scaled(&product, &c);
    }
    out
}

/// `Σ_k 1/k! Σ_{w = u_1 ... u_k} π̌_1(u_1) ⊹ ... ⊹ π̌_1(u_k)`, which equals `w`.
pub fn reconstruct_adjoint(alg: &StuffleAlgebra, w: &Word) -> NCPolynomial {
    if w.is_empty() {
        return NCPolynomial::one();
    }
    let mut out = NCPolynomial::zero();
    for parts in factorizations(w) {
        let product = parts.iter().fold(NCPolynomial::one(), |acc, u| {
            alg.stuffle_poly(&acc, &pi1_adjoint(alg, u).expect("nonempty part"))
        });
        out.add_scaled(
            &product,
            &Rational::inverse_factorial(parts.len()).into(),
        );
    }
    out
}

/// `Σ_k c^{k−1}/k! Σ_{s_1+...+s_k = s} π_1(y_{s_1}) ... π_1(y_{s_k})` with
/// `c` the contraction coefficient; equals `y_s`.
pub fn letter_identity(alg: &StuffleAlgebra, s: Letter) -> NCPolynomial {
    let mut out = NCPolynomial::zero();
    for comp in words_of_weight(s as usize) {
        let k = comp.len();
        let product = comp.letters().iter().fold(NCPolynomial::one(), |acc, &t| {
            acc.conc(&pi1(alg, &Word::letter(t)).expect("letter"))
        });
        let c = alg
            .contraction()
            .pow(k as u32 - 1)
            .scale(&Rational::inverse_factorial(k));
        out.add_scaled(&product, &c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::q_stuffle;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn factorizations_of_a_word() {
        let f = factorizations(&w("2,1,3"));
        assert_eq!(f.len(), 4);
        assert!(f.contains(&vec![w("2"), w("1,3")]));
        assert!(f.contains(&vec![w("2,1,3")]));
    }

    #[test]
    fn pi1_examples() {
        let alg = q_stuffle();
        assert_eq!(pi1(alg, &w("1")).unwrap(), NCPolynomial::word(w("1")));
        let expected = NCPolynomial::from_terms([
            (w("2"), QCoefficient::one()),
            (w("1,1"), QCoefficient::monomial(r(-1, 2), 1)),
        ]);
        assert_eq!(pi1(alg, &w("2")).unwrap(), expected);
        let expected = NCPolynomial::from_terms([
            (w("3"), QCoefficient::one()),
            (w("1,2"), QCoefficient::monomial(r(-1, 2), 1)),
            (w("2,1"), QCoefficient::monomial(r(-1, 2), 1)),
            (w("1,1,1"), QCoefficient::monomial(r(1, 3), 2)),
        ]);
        assert_eq!(pi1(alg, &w("3")).unwrap(), expected);
        assert_eq!(pi1(alg, &Word::empty()), Err(Error::EmptyWord));
    }

    #[test]
    fn pi1_check_agrees() {
        let alg = q_stuffle();
        for n in 1..=5 {
            for x in words_of_weight(n) {
                assert_eq!(pi1_check(alg, &x).unwrap(), pi1(alg, &x).unwrap(), "{x:?}");
            }
        }
    }

    #[test]
    fn adjoint_examples() {
        let alg = q_stuffle();
        assert_eq!(pi1_adjoint(alg, &w("5")).unwrap(), NCPolynomial::word(w("5")));
        assert_eq!(
            pi1_adjoint(alg, &w("1,1")).unwrap(),
            NCPolynomial::term(w("2"), QCoefficient::monomial(r(-1, 2), 1))
        );
    }

    #[test]
    fn log_diagonal_small() {
        let alg = q_stuffle();
        assert_eq!(log_diagonal(alg, 1), Tensor2Polynomial::pure(w("1"), w("1")));
        let l = log_diagonal(alg, 2);
        assert_eq!(l.coefficient(&w("2"), &w("1,1")), QCoefficient::monomial(r(-1, 2), 1));
        assert_eq!(l, log_diagonal_pi1_form(alg, 2));
        assert_eq!(l, log_diagonal_adjoint_form(alg, 2));
    }

    #[test]
    fn reconstruction_small() {
        let alg = q_stuffle();
        assert_eq!(reconstruct(alg, &Word::empty()), NCPolynomial::one());
        assert_eq!(reconstruct(alg, &w("2")), NCPolynomial::word(w("2")));
        assert_eq!(reconstruct_adjoint(alg, &w("2,1")), NCPolynomial::word(w("2,1")));
        assert_eq!(letter_identity(alg, 2), NCPolynomial::word(w("2")));
    }
}
