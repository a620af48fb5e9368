//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use qstuffle::bases::{
    compare_sigma, sigma_lyndon_general, sigma_lyndon_increasing, sigma_nonlyndon, sigma_oracle,
    sigma_recursive, verify_derivation_lemma, verify_duality, verify_factorization,
    verify_positivity, GradedBasis, Pbw,
};
use qstuffle::eulerian::{letter_identity, pi1, reconstruct, reconstruct_adjoint};
use qstuffle::lyndon::{derivation_tree, is_lyndon, lyndon_up_to_weight, RisePolicy};
use qstuffle::ops::{q_stuffle, shuffle, stuffle_reference};
use qstuffle::words::words_up_to_weight;
use qstuffle::{NCPolynomial, QCoefficient, Rational, StuffleAlgebra, Word};

type Outcome = Result<String, String>;

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

/// Builds a polynomial from `(numerator, denominator, power of q, word)`.
fn poly(terms: &[(i64, i64, u32, &str)]) -> NCPolynomial {
    let mut p = NCPolynomial::zero();
    for &(n, d, k, word) in terms {
        p.add_term(w(word), &QCoefficient::monomial(Rational::new(n, d).unwrap(), k));
    }
    p
}

fn expect_eq(label: &str, got: &NCPolynomial, want: &NCPolynomial) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{label}: got {got}, expected {want}"))
    }
}

fn golden_examples() -> Outcome {
    let alg = q_stuffle();
    let pbw = Pbw::new(alg);
    let sigma = sigma_oracle(alg, 7).map_err(|e| e.to_string())?;

    let pi_cases = [
        ("1", poly(&[(1, 1, 0, "1")])),
        ("2", poly(&[(1, 1, 0, "2"), (-1, 2, 1, "1,1")])),
        ("2,1", poly(&[(1, 1, 0, "2,1"), (-1, 1, 0, "1,2")])),
        (
            "3,1,2",
            poly(&[
                (1, 1, 0, "3,1,2"),
                (-1, 2, 1, "3,1,1,1"),
                (-1, 1, 1, "2,1,1,2"),
                (1, 4, 2, "2,1,1,1,1"),
                (-1, 1, 0, "1,3,2"),
                (1, 2, 1, "1,3,1,1"),
                (1, 2, 1, "1,1,2,2"),
                (-1, 2, 2, "1,1,2,1,1"),
                (-1, 1, 0, "2,3,1"),
                (1, 2, 1, "2,2,1,1"),
                (1, 1, 0, "2,1,3"),
                (1, 2, 1, "1,1,3,1"),
                (-1, 2, 1, "1,1,1,3"),
                (1, 4, 2, "1,1,1,1,2"),
            ]),
        ),
        (
            "3,1,2,1",
            poly(&[
                (1, 1, 0, "3,1,2,1"),
                (-1, 1, 0, "3,1,1,2"),
                (-1, 2, 1, "2,1,1,2,1"),
                (-1, 1, 0, "1,3,2,1"),
                (1, 1, 0, "1,3,1,2"),
                (1, 2, 1, "1,1,2,2,1"),
                (-1, 2, 1, "1,1,2,1,2"),
                (-1, 1, 0, "2,1,3,1"),
                (1, 2, 1, "2,1,2,1,1"),
                (1, 1, 0, "2,1,1,3"),
                (1, 1, 0, "1,2,3,1"),
                (-1, 2, 1, "1,2,2,1,1"),
                (-1, 1, 0, "1,2,1,3"),
                (1, 2, 1, "1,2,1,1,2"),
            ]),
        ),
    ];
    for (word, want) in &pi_cases {
        expect_eq(&format!("Π[{word}]"), &pbw.pi(&w(word)), want)?;
    }

    // The display printed under the label Σ_{y3y2y1} is Σ_{y3y1y2}.
    let sigma_cases = [
        ("1", poly(&[(1, 1, 0, "1")])),
        ("2", poly(&[(1, 1, 0, "2")])),
        ("2,1", poly(&[(1, 1, 0, "2,1"), (1, 2, 1, "3")])),
        (
            "3,1,2",
            poly(&[
                (1, 1, 0, "3,1,2"),
                (1, 1, 0, "3,2,1"),
                (1, 1, 1, "3,3"),
                (1, 2, 1, "4,2"),
                (1, 3, 2, "6"),
                (1, 2, 1, "5,1"),
            ]),
        ),
        (
            "3,2,1",
            poly(&[(1, 1, 0, "3,2,1"), (1, 2, 1, "5,1"), (1, 2, 1, "3,3"), (1, 6, 2, "6")]),
        ),
        (
            "3,1,2,1",
            poly(&[
                (2, 1, 0, "3,2,1,1"),
                (1, 1, 1, "3,2,2"),
                (1, 1, 0, "3,1,2,1"),
                (3, 2, 1, "3,3,1"),
                (1, 2, 1, "3,1,3"),
                (1, 2, 2, "3,4"),
                (1, 2, 1, "4,2,1"),
                (1, 4, 2, "4,3"),
                (1, 1, 1, "5,1,1"),
                (1, 2, 2, "5,2"),
                (1, 2, 2, "6,1"),
                (1, 8, 3, "7"),
            ]),
        ),
    ];
    let recursive = sigma_recursive(alg, 7).map_err(|e| e.to_string())?;
    for (word, want) in &sigma_cases {
        expect_eq(&format!("Σ[{word}] (oracle)"), &sigma.entries[&w(word)], want)?;
        expect_eq(&format!("Σ[{word}] (recursive)"), &recursive.entries[&w(word)], want)?;
    }
    Ok("5 Π and 5 Σ displays reproduced (Σ display for y3y2y1 matched at y3y1y2)".into())
}

fn duality(pi: &GradedBasis, sigma: &GradedBasis) -> Outcome {
    let report = verify_duality(pi, sigma);
    if report.passed() {
        Ok(format!("{} pairings over {} words", report.checked(), pi.entries.len()))
    } else {
        Err(report.to_string())
    }
}

fn primitivity() -> Outcome {
    let alg = q_stuffle();
    let pbw = Pbw::new(alg);
    let mut count = 0;
    for l in lyndon_up_to_weight(6) {
        let p = pbw.pi_lyndon(&l).unwrap();
        if !alg.is_primitive(&p, 6) {
            return Err(format!("Π[{l}] is not primitive"));
        }
        count += 1;
    }
    for x in words_up_to_weight(6).into_iter().skip(1) {
        let p = pi1(alg, &x).unwrap();
        if !alg.is_primitive(&p, 6) {
            return Err(format!("π1[{x}] is not primitive"));
        }
        count += 1;
    }
    Ok(format!("{count} elements primitive"))
}

fn reconstruction() -> Outcome {
    let alg = q_stuffle();
    for x in words_up_to_weight(5) {
        let want = NCPolynomial::word(x.clone());
        expect_eq(&format!("π1 form at [{x}]"), &reconstruct(alg, &x), &want)?;
        expect_eq(&format!("adjoint form at [{x}]"), &reconstruct_adjoint(alg, &x), &want)?;
    }
    for s in 1..=6 {
        let want = NCPolynomial::word(Word::letter(s));
        expect_eq(&format!("letter identity at y{s}"), &letter_identity(alg, s), &want)?;
    }
    Ok("both forms for 32 words, letter identity for s ≤ 6".into())
}

fn factorization(pi: &GradedBasis, sigma: &GradedBasis) -> Outcome {
    let report = verify_factorization(q_stuffle(), pi, sigma, 5);
    if report.passed() {
        Ok("Σ_w Σ_w⊗Π_w and the Lyndon product of exponentials equal the diagonal up to weight 5".into())
    } else {
        Err(report.to_string())
    }
}

fn specialization() -> Outcome {
    let alg = q_stuffle();
    let zero = Rational::zero();
    let words = words_up_to_weight(8);
    let mut pairs = 0;
    for u in &words {
        for v in &words {
            if u.weight() + v.weight() > 8 {
                continue;
            }
            let p = alg.stuffle(u, v);
            if p.eval(&zero) != shuffle(u, v) {
                return Err(format!("q=0 mismatch at [{u}] ⊹ [{v}]"));
            }
            let q = QCoefficient::q();
            if p != stuffle_reference(&q, u, v) || p != stuffle_reference(&q, v, u) {
                return Err(format!("not commutative at [{u}], [{v}]"));
            }
            pairs += 1;
        }
    }
    let mut triples = 0;
    for u in &words {
        for v in &words {
            for x in &words {
                if u.weight() + v.weight() + x.weight() > 8 {
                    continue;
                }
                let left = alg.stuffle_poly(&alg.stuffle(u, v), &NCPolynomial::word(x.clone()));
                let right = alg.stuffle_poly(&NCPolynomial::word(u.clone()), &alg.stuffle(v, x));
                if left != right {
                    return Err(format!("not associative at [{u}], [{v}], [{x}]"));
                }
                triples += 1;
            }
        }
    }
    let classical = sigma_oracle(&StuffleAlgebra::shuffle(), 5).map_err(|e| e.to_string())?;
    let specialized = sigma_oracle(alg, 5).map_err(|e| e.to_string())?.eval(&zero);
    if classical.entries != specialized.entries {
        return Err("Σ at q = 0 differs from the shuffle pipeline".into());
    }
    Ok(format!("{pairs} pairs, {triples} triples, q=0 Σ pipeline up to weight 5"))
}

fn method_equivalence(oracle: &GradedBasis) -> Outcome {
    let alg = q_stuffle();
    let recursive = sigma_recursive(alg, 6).map_err(|e| e.to_string())?;
    compare_sigma(oracle, &recursive).map_err(|e| e.to_string())?;
    let lookup = |v: &Word| oracle.entries[v].clone();
    let (mut increasing, mut general, mut other) = (0, 0, 0);
    for x in words_up_to_weight(6).into_iter().skip(1) {
        let want = &oracle.entries[&x];
        if is_lyndon(&x) {
            expect_eq(
                &format!("general formula at [{x}]"),
                &sigma_lyndon_general(alg, &x, lookup).map_err(|e| e.to_string())?,
                want,
            )?;
            general += 1;
            if x.letters().windows(2).all(|p| p[0] >= p[1]) {
                expect_eq(
                    &format!("increasing formula at [{x}]"),
                    &sigma_lyndon_increasing(alg, &x, lookup).map_err(|e| e.to_string())?,
                    want,
                )?;
                increasing += 1;
            }
        } else {
            expect_eq(&format!("divided powers at [{x}]"), &sigma_nonlyndon(alg, &x, lookup), want)?;
            other += 1;
        }
    }
    Ok(format!(
        "recursive = oracle on 63 words; general {general}, increasing {increasing}, non-Lyndon {other}"
    ))
}

fn derivation_lemma() -> Outcome {
    let pbw = Pbw::new(q_stuffle());
    let report = verify_derivation_lemma(&pbw, 3, 5);
    if !report.passed() {
        return Err(report.to_string());
    }
    let s = "4;2;1".parse().unwrap();
    let tree = derivation_tree(&s, RisePolicy::Smallest);
    let leaves: BTreeSet<String> = tree.leaves().iter().map(|t| t.to_string()).collect();
    let displayed: BTreeSet<String> = ["4,2,1", "2,1;4", "4,1,2", "2;4,1", "1;4,2", "1;2;4"]
        .into_iter()
        .map(String::from)
        .collect();
    if tree.leaves().len() != 6 || leaves != displayed {
        return Err(format!("leaves of (4;2;1): {leaves:?}"));
    }
    let mut sum = NCPolynomial::zero();
    for leaf in tree.leaves() {
        sum += &pbw.product_of(leaf.entries());
    }
    expect_eq("Π(4;2;1)", &pbw.product_of(s.entries()), &sum)?;
    Ok(format!("{} sequence checks; (4;2;1) has the 6 displayed leaves", report.checked()))
}

fn positivity(sigma: &GradedBasis) -> Outcome {
    let report = verify_positivity(sigma);
    if report.passed() {
        Ok(format!("{} Σ_w checked", report.checked()))
    } else {
        Err(report.to_string())
    }
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() -> ExitCode {
    let alg = q_stuffle();
    let pi7 = Pbw::new(alg).graded(7);
    let sigma7 = match sigma_oracle(alg, 7) {
        Ok(s) => s,
        Err(e) => {
            println!("FAIL oracle construction: {e}");
            return ExitCode::FAILURE;
        }
    };
    let restrict = |b: &GradedBasis, n: usize| {
        GradedBasis::new(
            b.kind,
            n,
            b.entries
                .iter()
                .filter(|(w, _)| w.weight() <= n)
                .map(|(w, p)| (w.clone(), p.clone()))
                .collect(),
        )
    };
    let (pi5, sigma5, sigma6) = (restrict(&pi7, 5), restrict(&sigma7, 5), restrict(&sigma7, 6));

    let criteria: Vec<Criterion<'_>> = vec![
        ("golden examples", Box::new(golden_examples)),
        ("duality up to weight 7", Box::new(|| duality(&pi7, &sigma7))),
        ("primitivity up to weight 6", Box::new(primitivity)),
        ("reconstruction identities", Box::new(reconstruction)),
        ("factorization of the diagonal", Box::new(|| factorization(&pi5, &sigma5))),
        ("specializations and axioms", Box::new(specialization)),
        ("recursive Σ equals oracle", Box::new(|| method_equivalence(&sigma6))),
        ("derivation-tree lemma", Box::new(derivation_lemma)),
        ("positivity of Σ up to weight 6", Box::new(|| positivity(&sigma6))),
    ];

    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} ({name}): PASS [{secs:.2}s] {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {} ({name}): FAIL [{secs:.2}s] {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
