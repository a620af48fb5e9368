//! Lyndon words, their factorizations, and the calculus of standard sequences.
//!
//! A Lyndon word is a nonempty word strictly smaller than each of its proper
//! suffixes, for the order `y_1 > y_2 > ...` of [`crate::words`].
//!
//! Positions in a sequence `(l_1, ..., l_k)` are **1-based** throughout this
//! module: a rise at position `i` compares `l_i` with `l_{i+1}`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;
use crate::words::{words_of_weight, Word};

pub fn is_lyndon(w: &Word) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| *w < w.suffix_from(i))
}

/// All Lyndon words of weight `n`, ascending.
pub fn lyndon_of_weight(n: usize) -> Vec<Word> {
    words_of_weight(n).into_iter().filter(is_lyndon).collect()
}

/// All Lyndon words of weight `1..=max_weight`, ascending by weight then by word order.
pub fn lyndon_up_to_weight(max_weight: usize) -> Vec<Word> {
    (1..=max_weight).flat_map(lyndon_of_weight).collect()
}

/// The Chen–Fox–Lyndon factorization `w = l_1 ... l_m` with `l_1 ≥ ... ≥ l_m`.
///
/// Starts from single letters and merges adjacent factors `l_i < l_{i+1}`,
/// whose concatenation is again Lyndon, until the sequence is weakly decreasing.
pub fn cfl_factorize(w: &Word) -> Vec<Word> {
    let mut stack: Vec<Word> = Vec::with_capacity(w.len());
    for &s in w.letters() {
        stack.push(Word::letter(s));
        while stack.len() >= 2 && stack[stack.len() - 2] < stack[stack.len() - 1] {
            let right = stack.pop().unwrap();
            let left = stack.pop().unwrap();
            stack.push(left.concat(&right));
        }
    }
    stack
}

/// Groups a CFL factorization into `(l_j, i_j)` with `l_1 > ... > l_k`.
pub fn cfl_exponents(w: &Word) -> Vec<(Word, usize)> {
    let mut out: Vec<(Word, usize)> = Vec::new();
    for l in cfl_factorize(w) {
        match out.last_mut() {
            Some((last, count)) if *last == l => *count += 1,
            _ => out.push((l, 1)),
        }
    }
    out
}

/// Standard factorization `l = s r` of a Lyndon word of length ≥ 2, where
/// `r` is the smallest proper suffix of `l`.
pub fn std_factorize(l: &Word) -> Result<(Word, Word), Error> {
    if l.is_letter() {
        return Err(Error::IsLetter(l.clone()));
    }
    if !is_lyndon(l) {
        return Err(Error::NotLyndon(l.clone()));
    }
    let cut = (1..l.len())
        .min_by(|&a, &b| l.suffix_from(a).cmp(&l.suffix_from(b)))
        .expect("length at least 2");
    Ok((l.prefix(cut), l.suffix_from(cut)))
}

/// A nonempty sequence of Lyndon words `(l_1, ..., l_k)` such that every
/// non-letter `l_i` with standard factorization `(l_i', l_i'')` satisfies
/// `l_i'' ≥ l_j` for all `j > i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardSequence(Vec<Word>);

impl StandardSequence {
    pub fn new(entries: Vec<Word>) -> Result<Self, Error> {
        if is_standard(&entries) {
            Ok(StandardSequence(entries))
        } else {
            Err(Error::NotStandard(format_sequence(&entries)))
        }
    }

    pub fn entries(&self) -> &[Word] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_entries(self) -> Vec<Word> {
        self.0
    }

    /// `l_1 ≥ l_2 ≥ ... ≥ l_k`.
    pub fn is_decreasing(&self) -> bool {
        is_decreasing(&self.0)
    }

    /// Concatenation `l_1 ... l_k`.
    pub fn concatenation(&self) -> Word {
        self.0.iter().fold(Word::empty(), |acc, l| acc.concat(l))
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(Word::weight).sum()
    }

    /// Positions `i` with `l_i < l_{i+1}` and `l_{i+1} ≥ l_j` for all `j ≥ i + 2`.
    pub fn legal_rises(&self) -> Vec<usize> {
        let e = &self.0;
        let k = e.len();
        (0..k.saturating_sub(1))
            .filter(|&i| e[i] < e[i + 1] && e[i + 2..].iter().all(|l| e[i + 1] >= *l))
            .map(|i| i + 1)
            .collect()
    }

    fn check_legal(&self, pos: usize) -> Result<(), Error> {
        if self.legal_rises().contains(&pos) {
            Ok(())
        } else {
            Err(Error::BadIndex {
                kind: "legal rise",
                index: pos,
                sequence: self.to_string(),
            })
        }
    }

    /// `λ_i`: merges `l_i l_{i+1}` at a legal rise.
    pub fn apply_lambda(&self, pos: usize) -> Result<StandardSequence, Error> {
        self.check_legal(pos)?;
        let i = pos - 1;
        let mut e = Vec::with_capacity(self.0.len() - 1);
        e.extend_from_slice(&self.0[..i]);
        e.push(self.0[i].concat(&self.0[i + 1]));
        e.extend_from_slice(&self.0[i + 2..]);
        Ok(StandardSequence(e))
    }

    /// `ρ_i`: swaps `l_i` and `l_{i+1}` at a legal rise.
    pub fn apply_rho(&self, pos: usize) -> Result<StandardSequence, Error> {
        self.check_legal(pos)?;
        let mut e = self.0.clone();
        e.swap(pos - 1, pos);
        Ok(StandardSequence(e))
    }
}

impl fmt::Display for StandardSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_sequence(&self.0))
    }
}

impl fmt::Debug for StandardSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", format_sequence(&self.0))
    }
}

/// Parses `"4;2,1"` as `(y_4, y_2 y_1)`.
impl FromStr for StandardSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let entries = parse_sequence(s)?;
        if let Some(bad) = entries.iter().find(|l| !is_lyndon(l)) {
            return Err(Error::NotLyndon(bad.clone()));
        }
        StandardSequence::new(entries)
    }
}

/// Semicolon-separated words, e.g. `4;2,1`.
pub fn format_sequence(entries: &[Word]) -> String {
    entries
        .iter()
        .map(Word::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

pub fn parse_sequence(s: &str) -> Result<Vec<Word>, Error> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty sequence".into()));
    }
    s.split(';').map(str::parse).collect()
}

pub fn is_decreasing(entries: &[Word]) -> bool {
    entries.windows(2).all(|p| p[0] >= p[1])
}

/// Checks the standard-sequence condition on a nonempty list of Lyndon words.
pub fn is_standard(entries: &[Word]) -> bool {
    if entries.is_empty() || !entries.iter().all(is_lyndon) {
        return false;
    }
    entries.iter().enumerate().all(|(i, l)| {
        if l.is_letter() {
            return true;
        }
        let (_, right) = std_factorize(l).expect("Lyndon word of length ≥ 2");
        entries[i + 1..].iter().all(|m| right >= *m)
    })
}

/// Which legal rise a derivation tree splits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RisePolicy {
    #[default]
    Smallest,
    Largest,
}

impl RisePolicy {
    fn pick(self, rises: &[usize]) -> Option<usize> {
        match self {
            RisePolicy::Smallest => rises.first().copied(),
            RisePolicy::Largest => rises.last().copied(),
        }
    }
}

/// A derivation tree: leaves are decreasing sequences; every internal node
/// splits at one legal rise into its `λ` child and its `ρ` child.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationTree {
    pub label: StandardSequence,
    pub split: Option<DerivationSplit>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationSplit {
    pub rise: usize,
    pub lambda: Box<DerivationTree>,
    pub rho: Box<DerivationTree>,
}

pub fn derivation_tree(s: &StandardSequence, policy: RisePolicy) -> DerivationTree {
    match policy.pick(&s.legal_rises()) {
        None => {
            debug_assert!(s.is_decreasing());
            DerivationTree {
                label: s.clone(),
                split: None,
            }
        }
        Some(rise) => {
            let lambda = s.apply_lambda(rise).expect("rise is legal");
            let rho = s.apply_rho(rise).expect("rise is legal");
            DerivationTree {
                label: s.clone(),
                split: Some(DerivationSplit {
                    rise,
                    lambda: Box::new(derivation_tree(&lambda, policy)),
                    rho: Box::new(derivation_tree(&rho, policy)),
                }),
            }
        }
    }
}

impl DerivationTree {
    /// Leaves from left (`λ`) to right (`ρ`).
    pub fn leaves(&self) -> Vec<&StandardSequence> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a StandardSequence>) {
        match &self.split {
            None => out.push(&self.label),
            Some(split) => {
                split.lambda.collect_leaves(out);
                split.rho.collect_leaves(out);
            }
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self
            .split
            .as_ref()
            .map_or(0, |s| s.lambda.node_count() + s.rho.node_count())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.repr(None)).expect("tree serializes")
    }

    fn repr(&self, op: Option<&'static str>) -> TreeRepr {
        TreeRepr {
            label: self.label.to_string(),
            op,
            children: match &self.split {
                None => Vec::new(),
                Some(s) => vec![s.lambda.repr(Some("lambda")), s.rho.repr(Some("rho"))],
            },
        }
    }
}

#[derive(Serialize)]
struct TreeRepr {
    label: String,
    op: Option<&'static str>,
    children: Vec<TreeRepr>,
}

/// Multiset of leaves of a derivation tree, keyed by the concatenation of
/// each (decreasing) leaf. By unique factorization the key determines the leaf.
pub fn derivation_leaf_counts(s: &StandardSequence, policy: RisePolicy) -> BTreeMap<Word, usize> {
    let mut memo = HashMap::new();
    leaf_counts_memo(s, policy, &mut memo)
}

fn leaf_counts_memo(
    s: &StandardSequence,
    policy: RisePolicy,
    memo: &mut HashMap<StandardSequence, BTreeMap<Word, usize>>,
) -> BTreeMap<Word, usize> {
    if let Some(hit) = memo.get(s) {
        return hit.clone();
    }
    let out = match policy.pick(&s.legal_rises()) {
        None => BTreeMap::from([(s.concatenation(), 1)]),
        Some(rise) => {
            let mut acc = leaf_counts_memo(&s.apply_lambda(rise).unwrap(), policy, memo);
            for (w, n) in leaf_counts_memo(&s.apply_rho(rise).unwrap(), policy, memo) {
                *acc.entry(w).or_default() += n;
            }
            acc
        }
    };
    memo.insert(s.clone(), out.clone());
    out
}

/// Positions `i` such that `l_1, ..., l_i` are letters and `l_i > l_{i+1}`.
///
/// `l_{i+1}` itself may be any Lyndon word.
pub fn falls(entries: &[Word]) -> Vec<usize> {
    let mut out = Vec::new();
    for i in 0..entries.len().saturating_sub(1) {
        if !entries[i].is_letter() {
            break;
        }
        if entries[i] > entries[i + 1] {
            out.push(i + 1);
        }
    }
    out
}

/// Positions `i` such that `l_1, ..., l_{i-1}` are letters and `l_i` is not.
/// There is at most one.
pub fn landmarks(entries: &[Word]) -> Vec<usize> {
    entries
        .iter()
        .position(|l| !l.is_letter())
        .map(|i| vec![i + 1])
        .unwrap_or_default()
}

/// `ρ_i^{-1}`: swaps `l_i` and `l_{i+1}` at a fall.
pub fn apply_rho_inv(entries: &[Word], pos: usize) -> Result<Vec<Word>, Error> {
    if !falls(entries).contains(&pos) {
        return Err(Error::BadIndex {
            kind: "fall",
            index: pos,
            sequence: format_sequence(entries),
        });
    }
    let mut e = entries.to_vec();
    e.swap(pos - 1, pos);
    Ok(e)
}

/// `λ_i^{-1}`: replaces `l_i` by its standard factors at a landmark.
pub fn apply_lambda_inv(entries: &[Word], pos: usize) -> Result<Vec<Word>, Error> {
    if !landmarks(entries).contains(&pos) {
        return Err(Error::BadIndex {
            kind: "landmark",
            index: pos,
            sequence: format_sequence(entries),
        });
    }
    let i = pos - 1;
    let (left, right) = std_factorize(&entries[i])?;
    let mut e = Vec::with_capacity(entries.len() + 1);
    e.extend_from_slice(&entries[..i]);
    e.push(left);
    e.push(right);
    e.extend_from_slice(&entries[i + 1..]);
    Ok(e)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConverseOp {
    RhoInv(usize),
    LambdaInv(usize),
}

/// A converse derivation tree: children are obtained by `ρ^{-1}` at each
/// fall and `λ^{-1}` at the landmark.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConverseTree {
    pub label: Vec<Word>,
    pub children: Vec<(ConverseOp, ConverseTree)>,
}

pub fn converse_tree(entries: &[Word]) -> ConverseTree {
    let mut children = Vec::new();
    for pos in falls(entries) {
        let child = apply_rho_inv(entries, pos).expect("fall");
        children.push((ConverseOp::RhoInv(pos), converse_tree(&child)));
    }
    for pos in landmarks(entries) {
        let child = apply_lambda_inv(entries, pos).expect("landmark");
        children.push((ConverseOp::LambdaInv(pos), converse_tree(&child)));
    }
    ConverseTree {
        label: entries.to_vec(),
        children,
    }
}

impl ConverseTree {
    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(|(_, c)| c.node_count()).sum::<usize>()
    }

    pub fn contains(&self, entries: &[Word]) -> bool {
        self.label == entries || self.children.iter().any(|(_, c)| c.contains(entries))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.repr(None)).expect("tree serializes")
    }

    fn repr(&self, op: Option<&'static str>) -> TreeRepr {
        TreeRepr {
            label: format_sequence(&self.label),
            op,
            children: self
                .children
                .iter()
                .map(|(op, c)| {
                    c.repr(Some(match op {
                        ConverseOp::RhoInv(_) => "rho_inv",
                        ConverseOp::LambdaInv(_) => "lambda_inv",
                    }))
                })
                .collect(),
        }
    }
}

/// Every sequence reachable from `entries` by `ρ^{-1}` and `λ^{-1}` steps,
/// including `entries` itself.
pub fn converse_closure(entries: &[Word]) -> BTreeSet<Vec<Word>> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![entries.to_vec()];
    while let Some(e) = stack.pop() {
        if !seen.insert(e.clone()) {
            continue;
        }
        for pos in falls(&e) {
            stack.push(apply_rho_inv(&e, pos).expect("fall"));
        }
        for pos in landmarks(&e) {
            stack.push(apply_lambda_inv(&e, pos).expect("landmark"));
        }
    }
    seen
}

/// All standard sequences of `1..=max_len` Lyndon words with total weight at
/// most `max_weight`.
pub fn standard_sequences(max_len: usize, max_weight: usize) -> Vec<StandardSequence> {
    let lyndon = lyndon_up_to_weight(max_weight);
    let mut out = Vec::new();
    let mut current = Vec::new();
    extend_sequences(&lyndon, max_len, max_weight, &mut current, &mut out);
    out
}

fn extend_sequences(
    lyndon: &[Word],
    max_len: usize,
    budget: usize,
    current: &mut Vec<Word>,
    out: &mut Vec<StandardSequence>,
) {
    if !current.is_empty() && is_standard(current) {
        out.push(StandardSequence(current.clone()));
    }
    if current.len() == max_len {
        return;
    }
    for l in lyndon {
        let w = l.weight();
        if w > budget {
            continue;
        }
        current.push(l.clone());
        extend_sequences(lyndon, max_len, budget - w, current, out);
        current.pop();
    }
}
