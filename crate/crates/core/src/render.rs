//! Human-readable renderings: plain text and LaTeX.
//!
//! Plain text writes a polynomial as `2·[1,1] + q·[2]`: longer words first,
//! ties broken by ascending word order. LaTeX writes `y_2y_1^2`-style
//! monomials with `\frac` coefficients.

use std::fmt::Write;

use crate::coeff::{QCoefficient, Rational};
use crate::ncpoly::{NCPolynomial, Tensor2Polynomial};
use crate::words::Word;

fn display_order(p: &NCPolynomial) -> Vec<(&Word, &QCoefficient)> {
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by(|(u, _), (v, _)| v.len().cmp(&u.len()).then_with(|| u.cmp(v)));
    terms
}

/// A monomial `c·q^p` with `c > 0`, in text form.
fn monomial_text(c: &Rational, pow: u32) -> String {
    let qpart = match pow {
        0 => String::new(),
        1 => "q".to_string(),
        p => format!("q^{p}"),
    };
    let numer = c.numer().to_string();
    let denom = c.denom().to_string();
    let mut s = match (qpart.is_empty(), numer.as_str()) {
        (true, _) => numer,
        (false, "1") => qpart,
        (false, _) => format!("{numer}{qpart}"),
    };
    if denom != "1" {
        let _ = write!(s, "/{denom}");
    }
    s
}

/// Text form of a coefficient, e.g. `1 + 3q^2/4`.
pub fn coefficient_text(c: &QCoefficient) -> String {
    if c.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (pow, r)) in c.terms().enumerate() {
        let body = monomial_text(&r.abs(), pow);
        match (i, r.is_negative()) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                let _ = write!(out, " + {body}");
            }
            (_, true) => {
                let _ = write!(out, " - {body}");
            }
        }
    }
    out
}

/// Splits a coefficient into an overall sign and a magnitude string suitable
/// as a multiplier. Returns `None` for the magnitude when it is exactly 1.
fn signed_multiplier(c: &QCoefficient) -> (bool, Option<String>) {
    if c.num_terms() == 1 {
        let (pow, r) = c.terms().next().unwrap();
        let negative = r.is_negative();
        let mag = r.abs();
        if pow == 0 && mag.is_one() {
            return (negative, None);
        }
        return (negative, Some(monomial_text(&mag, pow)));
    }
    (false, Some(format!("({})", coefficient_text(c))))
}

fn word_text(w: &Word) -> String {
    if w.is_empty() {
        "1".to_string()
    } else {
        format!("[{w}]")
    }
}

fn join_terms<'a>(terms: impl Iterator<Item = (String, &'a QCoefficient)>) -> String {
    let mut out = String::new();
    for (i, (body, c)) in terms.enumerate() {
        let (negative, mult) = signed_multiplier(c);
        let piece = match mult {
            Some(m) => format!("{m}·{body}"),
            None => body,
        };
        match (i, negative) {
            (0, false) => out.push_str(&piece),
            (0, true) => {
                out.push('-');
                out.push_str(&piece);
            }
            (_, false) => {
                let _ = write!(out, " + {piece}");
            }
            (_, true) => {
                let _ = write!(out, " - {piece}");
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn polynomial_text(p: &NCPolynomial) -> String {
    join_terms(display_order(p).into_iter().map(|(w, c)| (word_text(w), c)))
}

pub fn tensor_text(t: &Tensor2Polynomial) -> String {
    join_terms(
        t.terms()
            .map(|(u, v, c)| (format!("{}⊗{}", word_text(u), word_text(v)), c)),
    )
}

/// `y_3y_1^2y_2` for the word `3,1,1,2`.
pub fn word_latex(w: &Word) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    let mut out = String::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let s = letters[i];
        let mut run = 1;
        while i + run < letters.len() && letters[i + run] == s {
            run += 1;
        }
        if s < 10 {
            let _ = write!(out, "y_{s}");
        } else {
            let _ = write!(out, "y_{{{s}}}");
        }
        if run > 1 {
            if run < 10 {
                let _ = write!(out, "^{run}");
            } else {
                let _ = write!(out, "^{{{run}}}");
            }
        }
        i += run;
    }
    out
}

fn monomial_latex(c: &Rational, pow: u32) -> String {
    let qpart = match pow {
        0 => String::new(),
        1 => "q".to_string(),
        p => format!("q^{{{p}}}"),
    };
    let numer = c.numer().to_string();
    let denom = c.denom().to_string();
    let top = match (qpart.is_empty(), numer.as_str()) {
        (true, _) => numer,
        (false, "1") => qpart,
        (false, _) => format!("{numer}{qpart}"),
    };
    if denom == "1" {
        top
    } else {
        format!("\\frac{{{top}}}{{{denom}}}")
    }
}

pub fn coefficient_latex(c: &QCoefficient) -> String {
    if c.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (pow, r)) in c.terms().enumerate() {
        let body = monomial_latex(&r.abs(), pow);
        if r.is_negative() {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        out.push_str(&body);
    }
    out
}

pub fn polynomial_latex(p: &NCPolynomial) -> String {
    let mut out = String::new();
    for (i, (w, c)) in display_order(p).into_iter().enumerate() {
        let word = word_latex(w);
        let (negative, mult) = if c.num_terms() == 1 {
            let (pow, r) = c.terms().next().unwrap();
            let mag = r.abs();
            let m = (!(pow == 0 && mag.is_one())).then(|| monomial_latex(&mag, pow));
            (r.is_negative(), m)
        } else {
            (false, Some(format!("\\left({}\\right)", coefficient_latex(c))))
        };
        if negative {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        match mult {
            Some(m) if w.is_empty() => out.push_str(&m),
            Some(m) => {
                out.push_str(&m);
                out.push_str(&word);
            }
            None => out.push_str(&word),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
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
    fn coefficient_forms() {
        assert_eq!(coefficient_text(&QCoefficient::zero()), "0");
        assert_eq!(coefficient_text(&QCoefficient::monomial(r(1, 2), 1)), "q/2");
        assert_eq!(coefficient_text(&QCoefficient::monomial(r(-3, 4), 2)), "-3q^2/4");
        let c = &QCoefficient::one() + &QCoefficient::monomial(r(-1, 3), 1);
        assert_eq!(coefficient_text(&c), "1 - q/3");
    }

    #[test]
    fn polynomial_forms() {
        let p = NCPolynomial::from_terms([
            (w("1,1"), QCoefficient::integer(2)),
            (w("2"), QCoefficient::q()),
        ]);
        assert_eq!(polynomial_text(&p), "2·[1,1] + q·[2]");
        let p = NCPolynomial::from_terms([
            (w("2"), QCoefficient::one()),
            (w("1,1"), QCoefficient::monomial(r(-1, 2), 1)),
        ]);
        assert_eq!(polynomial_text(&p), "-q/2·[1,1] + [2]");
        assert_eq!(polynomial_text(&NCPolynomial::zero()), "0");
        assert_eq!(polynomial_text(&NCPolynomial::one()), "1");
    }

    #[test]
    fn latex_forms() {
        assert_eq!(word_latex(&w("3,1,1,2")), "y_3y_1^2y_2");
        assert_eq!(word_latex(&w("12")), "y_{12}");
        let p = NCPolynomial::from_terms([
            (w("2"), QCoefficient::one()),
            (w("1,1"), QCoefficient::monomial(r(-1, 2), 1)),
            (w("7"), QCoefficient::monomial(r(1, 8), 3)),
        ]);
        assert_eq!(polynomial_latex(&p), "-\\frac{q}{2}y_1^2+\\frac{q^{3}}{8}y_7+y_2");
    }
}
