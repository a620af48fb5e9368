//! The PBW basis `{Π_w}`, its dual `{Σ_w}`, the pair `{χ_w}` / `{ξ_w}`, and
//! the checks tying them together.
//!
//! `Σ` is computed in two independent ways. The oracle inverts the unit
//! triangular matrix of `{Π_u}` in each weight class. The recursive route
//! builds `Σ_l` for Lyndon `l` letter by letter from derivation trees, and
//! `Σ_w` for other words as divided stuffle powers of the Lyndon ones.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coeff::{QCoefficient, Rational};
use crate::error::Error;
use crate::eulerian::pi1;
use crate::lyndon::{
    cfl_exponents, converse_closure, derivation_leaf_counts, derivation_tree, is_decreasing,
    is_lyndon, lyndon_up_to_weight, standard_sequences, std_factorize, RisePolicy,
    StandardSequence,
};
use crate::ncpoly::{NCPolynomial, Tensor2Polynomial};
use crate::ops::StuffleAlgebra;
use crate::render::{polynomial_latex, word_latex};
use crate::report::{Report, ReportLine};
use crate::words::{words_of_weight, words_up_to_weight, Word};

/// Builds `Π_w`: `π_1` on letters, brackets along standard factorizations on
/// Lyndon words, and ordered products along the CFL factorization otherwise.
pub struct Pbw<'a> {
    alg: &'a StuffleAlgebra,
    lyndon: Mutex<HashMap<Word, NCPolynomial>>,
}

impl<'a> Pbw<'a> {
    pub fn new(alg: &'a StuffleAlgebra) -> Self {
        Pbw {
            alg,
            lyndon: Mutex::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &'a StuffleAlgebra {
        self.alg
    }

    pub fn pi_lyndon(&self, l: &Word) -> Result<NCPolynomial, Error> {
        if !is_lyndon(l) {
            return Err(Error::NotLyndon(l.clone()));
        }
        if let Some(hit) = self.lyndon.lock().unwrap().get(l) {
            return Ok(hit.clone());
        }
        let out = if l.is_letter() {
            pi1(self.alg, l)?
        } else {
            let (s, r) = std_factorize(l)?;
            self.pi_lyndon(&s)?.bracket(&self.pi_lyndon(&r)?)
        };
        self.lyndon.lock().unwrap().insert(l.clone(), out.clone());
        Ok(out)
    }

    pub fn pi(&self, w: &Word) -> NCPolynomial {
        self.product_of(&cfl_exponents(w)
            .into_iter()
            .flat_map(|(l, i)| std::iter::repeat_n(l, i))
            .collect::<Vec<_>>())
    }

    /// `Π(S) = Π_{l_1} ... Π_{l_k}` for any sequence of Lyndon words.
    pub fn product_of(&self, entries: &[Word]) -> NCPolynomial {
        entries.iter().fold(NCPolynomial::one(), |acc, l| {
            acc.conc(&self.pi_lyndon(l).expect("entries are Lyndon"))
        })
    }

    pub fn graded(&self, max_weight: usize) -> GradedBasis {
        let entries = words_up_to_weight(max_weight)
            .into_iter()
            .map(|w| {
                let p = self.pi(&w);
                (w, p)
            })
            .collect();
        GradedBasis::new(BasisKind::Pi, max_weight, entries)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    Pi,
    Sigma,
    Chi,
    Xi,
}

impl BasisKind {
    pub fn symbol(self) -> &'static str {
        match self {
            BasisKind::Pi => "Π",
            BasisKind::Sigma => "Σ",
            BasisKind::Chi => "χ",
            BasisKind::Xi => "ξ",
        }
    }

    fn latex_symbol(self) -> &'static str {
        match self {
            BasisKind::Pi => "\\Pi",
            BasisKind::Sigma => "\\Sigma",
            BasisKind::Chi => "\\chi",
            BasisKind::Xi => "\\xi",
        }
    }

    /// Which way the basis is unit triangular.
    pub fn shape(self) -> Shape {
        match self {
            BasisKind::Pi | BasisKind::Xi => Shape::Upper,
            BasisKind::Sigma | BasisKind::Chi => Shape::Lower,
        }
    }
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasisKind::Pi => "pi",
            BasisKind::Sigma => "sigma",
            BasisKind::Chi => "chi",
            BasisKind::Xi => "xi",
        })
    }
}

/// `Upper`: `b_w = w + Σ_{v > w} c_v v`. `Lower`: `b_w = w + Σ_{v < w} c_v v`.
/// Both within the weight class of `w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Upper,
    Lower,
}

impl Shape {
    fn name(self) -> &'static str {
        match self {
            Shape::Upper => "upper",
            Shape::Lower => "lower",
        }
    }
}

/// One basis element per word of weight at most `max_weight`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    pub kind: BasisKind,
    pub max_weight: usize,
    pub entries: BTreeMap<Word, NCPolynomial>,
}

impl GradedBasis {
    pub fn new(kind: BasisKind, max_weight: usize, entries: BTreeMap<Word, NCPolynomial>) -> Self {
        GradedBasis {
            kind,
            max_weight,
            entries,
        }
    }

    pub fn get(&self, w: &Word) -> Option<&NCPolynomial> {
        self.entries.get(w)
    }

    /// Entries in ascending weight, then ascending word order.
    pub fn iter_graded(&self) -> impl Iterator<Item = (&Word, &NCPolynomial)> + '_ {
        (0..=self.max_weight).flat_map(move |n| {
            self.entries
                .iter()
                .filter(move |(w, _)| w.weight() == n)
        })
    }

    pub fn eval(&self, q0: &Rational) -> GradedBasis {
        GradedBasis {
            kind: self.kind,
            max_weight: self.max_weight,
            entries: self
                .entries
                .iter()
                .map(|(w, p)| (w.clone(), p.eval(q0)))
                .collect(),
        }
    }

    /// Checks unit triangularity and weight homogeneity of every entry.
    pub fn check_triangular(&self) -> Result<(), Error> {
        let shape = self.kind.shape();
        for (w, p) in &self.entries {
            let ok = p.coefficient(w).is_one()
                && p.terms().all(|(v, _)| {
                    v.weight() == w.weight()
                        && match shape {
                            Shape::Upper => v >= w,
                            Shape::Lower => v <= w,
                        }
                });
            if !ok {
                return Err(Error::Triangularity {
                    weight: w.weight(),
                    shape: shape.name(),
                    row: w.clone(),
                });
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: serde_json::Map<String, serde_json::Value> = self
            .iter_graded()
            .map(|(w, p)| (w.to_string(), serde_json::to_value(p).expect("polynomial serializes")))
            .collect();
        serde_json::json!({
            "kind": self.kind,
            "max_weight": self.max_weight,
            "generator_version": env!("CARGO_PKG_VERSION"),
            "entries": entries,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (w, p) in self.iter_graded() {
            out.push_str(&format!("{}[{}] = {}\n", self.kind.symbol(), w, p));
        }
        out
    }

    pub fn to_latex(&self) -> String {
        let mut out = String::from("\\begin{eqnarray}\n");
        let rows: Vec<String> = self
            .iter_graded()
            .filter(|(w, _)| !w.is_empty())
            .map(|(w, p)| {
                format!(
                    "{}_{{{}}}&=&{}",
                    self.kind.latex_symbol(),
                    word_latex(w),
                    polynomial_latex(p)
                )
            })
            .collect();
        out.push_str(&rows.join(",\\\\\n"));
        out.push_str(".\n\\end{eqnarray}\n");
        out
    }
}

/// Solves `⟨D_v | B_u⟩ = δ_{u,v}` on one weight class. `basis` must be unit
/// triangular of the given shape; the dual comes out with the opposite shape.
pub fn dual_class(
    basis: &BTreeMap<Word, NCPolynomial>,
    weight: usize,
    shape: Shape,
) -> Result<BTreeMap<Word, NCPolynomial>, Error> {
    let words = words_of_weight(weight);
    let n = words.len();
    let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut m = vec![vec![QCoefficient::zero(); n]; n];
    for (i, w) in words.iter().enumerate() {
        let bad = || Error::Triangularity {
            weight,
            shape: shape.name(),
            row: w.clone(),
        };
        let p = basis.get(w).ok_or_else(bad)?;
        for (v, c) in p.terms() {
            let j = *index.get(v).ok_or_else(bad)?;
            let allowed = match shape {
                Shape::Upper => j >= i,
                Shape::Lower => j <= i,
            };
            if !allowed {
                return Err(bad());
            }
            m[i][j] = c.clone();
        }
        if !m[i][i].is_one() {
            return Err(bad());
        }
    }
    // D = (M^{-1})^T; for a lower M this is the inverse of the upper M^T.
    let d = match shape {
        Shape::Upper => transpose(&invert_unit_upper(&m)),
        Shape::Lower => invert_unit_upper(&transpose(&m)),
    };
    Ok(words
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let p = NCPolynomial::from_terms(
                words.iter().zip(&d[i]).map(|(v, c)| (v.clone(), c.clone())),
            );
            (w.clone(), p)
        })
        .collect())
}

fn transpose(m: &[Vec<QCoefficient>]) -> Vec<Vec<QCoefficient>> {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i].clone()).collect()).collect()
}

/// Back substitution on a unit upper triangular matrix; no division occurs.
#[allow(clippy::needless_range_loop)]
fn invert_unit_upper(m: &[Vec<QCoefficient>]) -> Vec<Vec<QCoefficient>> {
    let n = m.len();
    let mut x = vec![vec![QCoefficient::zero(); n]; n];
    for j in 0..n {
        x[j][j] = QCoefficient::one();
        for i in (0..j).rev() {
            let mut acc = QCoefficient::zero();
            for k in i + 1..=j {
                if !m[i][k].is_zero() && !x[k][j].is_zero() {
                    acc += &(&m[i][k] * &x[k][j]);
                }
            }
            x[i][j] = -&acc;
        }
    }
    x
}

fn dual_basis(basis: &GradedBasis, kind: BasisKind) -> Result<GradedBasis, Error> {
    let mut entries = BTreeMap::new();
    entries.insert(Word::empty(), NCPolynomial::one());
    for n in 1..=basis.max_weight {
        entries.extend(dual_class(&basis.entries, n, basis.kind.shape())?);
    }
    Ok(GradedBasis::new(kind, basis.max_weight, entries))
}

pub fn pi_basis(alg: &StuffleAlgebra, max_weight: usize) -> GradedBasis {
    Pbw::new(alg).graded(max_weight)
}

/// `Σ` as the dual of `Π`, by exact triangular solves.
pub fn sigma_oracle(alg: &StuffleAlgebra, max_weight: usize) -> Result<GradedBasis, Error> {
    dual_basis(&pi_basis(alg, max_weight), BasisKind::Sigma)
}

/// `(P_1^{⊹ i_1} ⊹ ... ⊹ P_k^{⊹ i_k}) / (i_1! ... i_k!)` along the CFL
/// factorization `w = l_1^{i_1} ... l_k^{i_k}`, with `P_j = f(l_j)`.
fn divided_powers(
    alg: &StuffleAlgebra,
    w: &Word,
    mut f: impl FnMut(&Word) -> NCPolynomial,
) -> NCPolynomial {
    let mut out = NCPolynomial::one();
    for (l, i) in cfl_exponents(w) {
        let power = alg.stuffle_power(&f(&l), i);
        out = alg.stuffle_poly(&out, &power.scale_rational(&Rational::inverse_factorial(i)));
    }
    out
}

/// `Σ_w` from the `Σ_l` of its Lyndon factors.
pub fn sigma_nonlyndon(
    alg: &StuffleAlgebra,
    w: &Word,
    sigma_of_lyndon: impl FnMut(&Word) -> NCPolynomial,
) -> NCPolynomial {
    divided_powers(alg, w, sigma_of_lyndon)
}

/// `Σ_l = Σ_i c^{i−1}/i! · y_{s_1+...+s_i} · Σ_{y_{s_{i+1}} ... y_{s_k}}` for a
/// Lyndon word `l = y_{s_1} ... y_{s_k}` with `y_{s_1} ≤ ... ≤ y_{s_k}`.
pub fn sigma_lyndon_increasing(
    alg: &StuffleAlgebra,
    w: &Word,
    mut recurse: impl FnMut(&Word) -> NCPolynomial,
) -> Result<NCPolynomial, Error> {
    if !is_lyndon(w) {
        return Err(Error::NotLyndon(w.clone()));
    }
    let s = w.letters();
    if s.windows(2).any(|p| p[0] < p[1]) {
        return Err(Error::NotIncreasing(w.clone()));
    }
    let mut out = NCPolynomial::zero();
    let mut head = 0;
    for i in 1..=s.len() {
        head += s[i - 1];
        let c = alg
            .contraction()
            .pow(i as u32 - 1)
            .scale(&Rational::inverse_factorial(i));
        let tail = recurse(&w.suffix_from(i));
        let term = NCPolynomial::word(Word::letter(head)).conc(&tail);
        out.add_scaled(&term, &c);
    }
    Ok(out)
}

/// A term of the general Lyndon formula: the sequence
/// `(y_{s'_1}, ..., y_{s'_i}, l_1, ..., l_n)` with `l_1 ≥ ... ≥ l_n`, the
/// number `i` of leading letters, and how often `(l)` is a leaf of its
/// derivation tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaTerm {
    pub sequence: StandardSequence,
    pub letters: usize,
    pub multiplicity: usize,
}

impl SigmaTerm {
    pub fn head(&self) -> u32 {
        self.sequence.entries()[..self.letters]
            .iter()
            .map(|l| l.letters()[0])
            .sum()
    }

    pub fn tail(&self) -> Word {
        self.sequence.entries()[self.letters..]
            .iter()
            .fold(Word::empty(), |acc, l| acc.concat(l))
    }
}

/// Splits a sequence into leading letters and a weakly decreasing tail in
/// every possible way.
fn letter_splits(entries: &[Word]) -> impl Iterator<Item = usize> + '_ {
    (1..=entries.len())
        .take_while(|&i| entries[i - 1].is_letter())
        .filter(|&i| is_decreasing(&entries[i..]))
}

/// Terms of the general formula, found among the sequences reachable from
/// `(l)` in its converse derivation tree.
pub fn sigma_terms_converse(l: &Word) -> Result<Vec<SigmaTerm>, Error> {
    if !is_lyndon(l) {
        return Err(Error::NotLyndon(l.clone()));
    }
    let mut out = Vec::new();
    for entries in converse_closure(std::slice::from_ref(l)) {
        for i in letter_splits(&entries) {
            let Ok(sequence) = StandardSequence::new(entries.clone()) else {
                continue;
            };
            let multiplicity = derivation_leaf_counts(&sequence, RisePolicy::Smallest)
                .get(l)
                .copied()
                .unwrap_or(0);
            if multiplicity > 0 {
                out.push(SigmaTerm {
                    sequence,
                    letters: i,
                    multiplicity,
                });
            }
        }
    }
    Ok(out)
}

/// The same terms found by scanning every candidate sequence of the right
/// shape and weight, without the converse tree.
pub fn sigma_terms_exhaustive(l: &Word) -> Result<Vec<SigmaTerm>, Error> {
    if !is_lyndon(l) {
        return Err(Error::NotLyndon(l.clone()));
    }
    let n = l.weight();
    let mut out = Vec::new();
    for s in standard_sequences(l.len(), n) {
        if s.weight() != n {
            continue;
        }
        for i in letter_splits(s.entries()) {
            let multiplicity = derivation_leaf_counts(&s, RisePolicy::Smallest)
                .get(l)
                .copied()
                .unwrap_or(0);
            if multiplicity > 0 {
                out.push(SigmaTerm {
                    sequence: s.clone(),
                    letters: i,
                    multiplicity,
                });
            }
        }
    }
    Ok(out)
}

/// `Σ_l = Σ c^{i−1}/i! · α · y_{s'_1+...+s'_i} · Σ_{l_1 ... l_n}` over the
/// terms of [`sigma_terms_converse`], with `α` the leaf multiplicity.
pub fn sigma_lyndon_general(
    alg: &StuffleAlgebra,
    l: &Word,
    mut recurse: impl FnMut(&Word) -> NCPolynomial,
) -> Result<NCPolynomial, Error> {
    let mut out = NCPolynomial::zero();
    for term in sigma_terms_converse(l)? {
        let i = term.letters;
        let c = alg.contraction().pow(i as u32 - 1).scale(
            &(&Rational::inverse_factorial(i) * &Rational::from(term.multiplicity as i64)),
        );
        let piece = NCPolynomial::word(Word::letter(term.head())).conc(&recurse(&term.tail()));
        out.add_scaled(&piece, &c);
    }
    Ok(out)
}

/// `Σ` up to `max_weight` from the recursive formulas alone: the increasing
/// formula where it applies, the general formula on other Lyndon words, and
/// divided powers on non-Lyndon words.
pub fn sigma_recursive(alg: &StuffleAlgebra, max_weight: usize) -> Result<GradedBasis, Error> {
    let mut entries: BTreeMap<Word, NCPolynomial> = BTreeMap::new();
    entries.insert(Word::empty(), NCPolynomial::one());
    for n in 1..=max_weight {
        for w in words_of_weight(n) {
            let lookup = |v: &Word| entries[v].clone();
            let value = if !is_lyndon(&w) {
                sigma_nonlyndon(alg, &w, lookup)
            } else if w.letters().windows(2).all(|p| p[0] >= p[1]) {
                sigma_lyndon_increasing(alg, &w, lookup)?
            } else {
                sigma_lyndon_general(alg, &w, lookup)?
            };
            entries.insert(w, value);
        }
    }
    Ok(GradedBasis::new(BasisKind::Sigma, max_weight, entries))
}

/// Errors on the first word where the two bases differ.
pub fn compare_sigma(oracle: &GradedBasis, recursive: &GradedBasis) -> Result<(), Error> {
    for (w, p) in oracle.iter_graded() {
        let r = recursive.get(w).cloned().unwrap_or_default();
        if *p != r {
            return Err(Error::SigmaMismatch {
                word: w.clone(),
                oracle: p.to_string(),
                recursive: r.to_string(),
            });
        }
    }
    Ok(())
}

/// `χ_w`: divided stuffle powers of the raw Lyndon factors of `w`.
pub fn chi(alg: &StuffleAlgebra, w: &Word) -> NCPolynomial {
    divided_powers(alg, w, |l| NCPolynomial::word(l.clone()))
}

pub fn chi_basis(alg: &StuffleAlgebra, max_weight: usize) -> GradedBasis {
    let entries = words_up_to_weight(max_weight)
        .into_iter()
        .map(|w| {
            let p = chi(alg, &w);
            (w, p)
        })
        .collect();
    GradedBasis::new(BasisKind::Chi, max_weight, entries)
}

/// `ξ` as the dual of `χ`.
pub fn xi_basis(alg: &StuffleAlgebra, max_weight: usize) -> Result<GradedBasis, Error> {
    dual_basis(&chi_basis(alg, max_weight), BasisKind::Xi)
}

/// `⟨Σ_v | Π_u⟩ = δ_{u,v}` for all words of weight at most `max_weight`.
pub fn verify_duality(pi: &GradedBasis, sigma: &GradedBasis) -> Report {
    let mut report = Report::new("duality ⟨Σ_v | Π_u⟩ = δ_{u,v}");
    let max = pi.max_weight.min(sigma.max_weight);
    let mut cross = ReportLine::new("pairs of different weight vanish");
    for n in 0..=max {
        let mut line = ReportLine::new(format!("weight {n}"));
        for (u, pu) in pi.entries.iter().filter(|(u, _)| u.weight() <= max) {
            for (v, sv) in sigma.entries.iter().filter(|(v, _)| v.weight() == n) {
                let value = sv.pairing(pu);
                if u.weight() == n {
                    let ok = if u == v { value.is_one() } else { value.is_zero() };
                    line.check(ok, || format!("⟨Σ[{v}] | Π[{u}]⟩ = {value}"));
                } else {
                    cross.check(value.is_zero(), || format!("⟨Σ[{v}] | Π[{u}]⟩ = {value}"));
                }
            }
        }
        report.push(line);
    }
    report.push(cross);
    report
}

/// `Π_l` for Lyndon `l` and `π_1(w)` for nonempty `w` are primitive, up to
/// weight `max_weight`.
pub fn verify_primitivity(pbw: &Pbw<'_>, max_weight: usize) -> Report {
    let alg = pbw.algebra();
    let mut report = Report::new("primitive elements");
    let mut lyndon = ReportLine::new("Π_l for Lyndon l");
    for l in lyndon_up_to_weight(max_weight) {
        let ok = pbw.pi_lyndon(&l).is_ok_and(|p| alg.is_primitive(&p, max_weight));
        lyndon.check(ok, || format!("Π[{l}]"));
    }
    report.push(lyndon);
    let mut projected = ReportLine::new("π_1(w) for nonempty w");
    for w in words_up_to_weight(max_weight).into_iter().skip(1) {
        let ok = pi1(alg, &w).is_ok_and(|p| alg.is_primitive(&p, max_weight));
        projected.check(ok, || format!("π1[{w}]"));
    }
    report.push(projected);
    report
}

/// Compares `Σ_w Σ_w⊗Π_w` and the decreasing product over Lyndon `l` of
/// `exp(Σ_l⊗Π_l)` with the diagonal series, all up to weight `max_weight`.
///
/// Tensors are multiplied with the algebra's product on the left slot and
/// concatenation on the right, and truncated at total weight `2·max_weight`.
pub fn verify_factorization(
    alg: &StuffleAlgebra,
    pi: &GradedBasis,
    sigma: &GradedBasis,
    max_weight: usize,
) -> Report {
    let mut report = Report::new("factorization of the diagonal series");
    let bound = 2 * max_weight;
    let diagonal = crate::eulerian::DiagonalSeries::new(max_weight).value;

    let mut sum = Tensor2Polynomial::zero();
    for w in words_up_to_weight(max_weight) {
        sum = &sum + &Tensor2Polynomial::tensor(&sigma.entries[&w], &pi.entries[&w]);
    }
    let mut line = ReportLine::new("Σ_w Σ_w⊗Π_w equals Σ_w w⊗w");
    line.check(sum == diagonal, || format!("difference has {} terms", (&sum - &diagonal).len()));
    report.push(line);

    let mut lyndon = lyndon_up_to_weight(max_weight);
    lyndon.sort_by(|a, b| b.cmp(a));
    let mut product = Tensor2Polynomial::one();
    for l in &lyndon {
        let t = Tensor2Polynomial::tensor(&sigma.entries[l], &pi.entries[l]);
        let e = alg.tensor_exp_mixed(&t, bound).expect("Σ_l⊗Π_l is proper");
        product = alg.tensor_mul_mixed_truncated(&product, &e, bound);
    }
    let mut line = ReportLine::new("decreasing product of exp(Σ_l⊗Π_l) equals Σ_w w⊗w");
    line.check(product == diagonal, || {
        format!("difference has {} terms", (&product - &diagonal).len())
    });
    report.push(line);
    report
}

/// Every `Σ_w` has coefficients that are polynomials in `q` with
/// non-negative rational coefficients.
pub fn verify_positivity(sigma: &GradedBasis) -> Report {
    let mut report = Report::new("positivity of Σ");
    let mut line = ReportLine::new("non-negative coefficients");
    for (w, p) in sigma.iter_graded() {
        line.check(p.terms().all(|(_, c)| c.is_nonnegative()), || format!("Σ[{w}] = {p}"));
    }
    report.push(line);
    report
}

/// `Π(S) = Σ_T Π(T)` over the leaves of a derivation tree, for every standard
/// sequence of at most `max_len` Lyndon words and weight at most `max_weight`,
/// under both rise policies.
pub fn verify_derivation_lemma(pbw: &Pbw<'_>, max_len: usize, max_weight: usize) -> Report {
    let mut report = Report::new("derivation trees");
    let mut line = ReportLine::new("Π(S) equals the sum over leaves");
    let mut policies = ReportLine::new("leaf sums agree across rise policies");
    for s in standard_sequences(max_len, max_weight) {
        let lhs = pbw.product_of(s.entries());
        let mut sums = Vec::new();
        for policy in [RisePolicy::Smallest, RisePolicy::Largest] {
            let tree = derivation_tree(&s, policy);
            let mut rhs = NCPolynomial::zero();
            for leaf in tree.leaves() {
                rhs += &pbw.product_of(leaf.entries());
            }
            line.check(rhs == lhs, || format!("S = {s}, policy {policy:?}"));
            sums.push(rhs);
        }
        policies.check(sums[0] == sums[1], || format!("S = {s}"));
    }
    report.push(line);
    report.push(policies);
    report
}

/// `⟨S_1 ⊹ ... ⊹ S_n | P_1 ... P_m⟩` for proper `S_i` and primitive `P_j`:
/// zero when `n > m`, and the permanent `Σ_σ Π_i ⟨S_i | P_{σ(i)}⟩` when
/// `n = m`. Uses `P_j = Π_{l_j}` for random Lyndon `l_j` and random proper
/// `S_i`, drawn from a seeded generator.
pub fn verify_lemma3(pbw: &Pbw<'_>, max_weight: usize, trials: usize, seed: u64) -> Report {
    let alg = pbw.algebra();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new("pairings of stuffle products with products of primitives");
    let mut vanish = ReportLine::new("n > m gives 0");
    let mut permanent = ReportLine::new("n = m gives the permanent");
    let lyndon = lyndon_up_to_weight(max_weight.max(1));
    let words: Vec<Word> = words_up_to_weight(max_weight).into_iter().skip(1).collect();
    let coefficients = [
        QCoefficient::one(),
        QCoefficient::integer(-2),
        QCoefficient::q(),
        QCoefficient::monomial(Rational::new(1, 3).unwrap(), 1),
    ];

    for _ in 0..trials {
        let m = rng.gen_range(1..=3usize);
        let mut ls = Vec::new();
        let mut budget = max_weight;
        for _ in 0..m {
            let fits: Vec<&Word> = lyndon.iter().filter(|l| l.weight() <= budget).collect();
            let Some(l) = fits.choose(&mut rng) else { break };
            budget -= l.weight();
            ls.push((*l).clone());
        }
        let m = ls.len();
        if m == 0 {
            continue;
        }
        let ps: Vec<NCPolynomial> = ls.iter().map(|l| pbw.pi_lyndon(l).unwrap()).collect();
        let prod_p = ps.iter().fold(NCPolynomial::one(), |acc, p| acc.conc(p));
        let support: Vec<Word> = ps.iter().flat_map(|p| p.support().cloned()).collect();

        let random_proper = |rng: &mut ChaCha8Rng| {
            let mut s = NCPolynomial::zero();
            for _ in 0..3 {
                let pool = if rng.gen_bool(0.7) { &support } else { &words };
                let w = pool.choose(rng).unwrap().clone();
                s.add_term(w, coefficients.choose(rng).unwrap());
            }
            s
        };

        for n in [m, m + 1] {
            let ss: Vec<NCPolynomial> = (0..n).map(|_| random_proper(&mut rng)).collect();
            let prod_s = ss
                .iter()
                .fold(NCPolynomial::one(), |acc, s| alg.stuffle_poly(&acc, s));
            let lhs = prod_s.pairing(&prod_p);
            let labels = || ls.iter().map(Word::to_string).collect::<Vec<_>>().join(" ; ");
            if n > m {
                vanish.check(lhs.is_zero(), || format!("n={n}, m={m}, l = {}: {lhs}", labels()));
            } else {
                let rhs = permanent_of(&ss, &ps);
                permanent.check(lhs == rhs, || format!("n=m={n}, l = {}: {lhs} vs {rhs}", labels()));
            }
        }
    }
    report.push(vanish);
    report.push(permanent);
    report
}

/// `Σ_σ Π_i ⟨S_i | P_{σ(i)}⟩`.
pub fn permanent_of(ss: &[NCPolynomial], ps: &[NCPolynomial]) -> QCoefficient {
    let n = ss.len();
    let mut total = QCoefficient::zero();
    for perm in permutations(n) {
        let mut term = QCoefficient::one();
        for (i, &j) in perm.iter().enumerate() {
            term = &term * &ss[i].pairing(&ps[j]);
            if term.is_zero() {
                break;
            }
        }
        total += &term;
    }
    total
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}
