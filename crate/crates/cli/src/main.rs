//! `qstuffle`: products, projectors, dual bases and verification reports for
//! the q-stuffle Hopf algebra, printed as text, LaTeX or JSON.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use qstuffle::bases::{
    chi_basis, compare_sigma, pi_basis, sigma_oracle, sigma_recursive, verify_duality,
    verify_factorization, verify_primitivity, xi_basis,
};
use qstuffle::eulerian::{pi1, pi1_adjoint};
use qstuffle::lyndon::lyndon_of_weight;
use qstuffle::ops::{q_stuffle, shuffle, verify_axioms};
use qstuffle::render::{polynomial_latex, word_latex};
use qstuffle::{GradedBasis, NCPolynomial, Pbw, Rational, Report, StuffleAlgebra, Word};

#[derive(Parser, Debug)]
#[command(name = "qstuffle", version, about = "Exact computations in the q-stuffle Hopf algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Largest word weight to compute or check.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u16).range(1..))]
    max_weight: u16,

    /// Specialize q to a rational value such as 1, -1 or 1/2.
    #[arg(long, global = true, allow_hyphen_values = true)]
    q: Option<Rational>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// How Σ is computed; `both` fails on any disagreement.
    #[arg(long, global = true, value_enum, default_value_t = SigmaMethod::Both)]
    sigma_method: SigmaMethod,

    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List Lyndon words grouped by weight.
    Lyndon,
    /// Multiply two words, given as comma-separated indices (`e` is the empty word).
    Product {
        kind: ProductKind,
        u: Word,
        v: Word,
    },
    /// Export a graded basis up to --max-weight.
    Basis { kind: BasisArg },
    /// Run an invariant suite; exits nonzero on any failure.
    Verify { suite: Suite },
    /// The first Eulerian projector of a word, or of every word up to --max-weight.
    Projector {
        word: Option<Word>,
        /// Use the adjoint projector instead.
        #[arg(long)]
        adjoint: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Latex,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SigmaMethod {
    Oracle,
    Recursive,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ProductKind {
    Stuffle,
    Shuffle,
    Conc,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BasisArg {
    Pi,
    Sigma,
    Chi,
    Xi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Duality,
    Primitivity,
    Factorization,
    Axioms,
    All,
}

/// What a command produced, and whether it counts as a success.
struct Output {
    body: String,
    ok: bool,
}

impl Output {
    fn ok(body: String) -> Self {
        Output { body, ok: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&cli, &out.body) {
                eprintln!("error: {e:#}");
                return ExitCode::FAILURE;
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn emit(cli: &Cli, body: &str) -> Result<()> {
    let mut text = body.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &cli.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<Output> {
    let n = usize::from(cli.max_weight);
    match &cli.command {
        Command::Lyndon => Ok(Output::ok(lyndon_listing(n, cli.format))),
        Command::Product { kind, u, v } => product(cli, *kind, u, v).map(Output::ok),
        Command::Basis { kind } => {
            let basis = basis(cli, *kind, n)?;
            let basis = match &cli.q {
                Some(q0) => basis.eval(q0),
                None => basis,
            };
            Ok(Output::ok(match cli.format {
                Format::Text => basis.to_text(),
                Format::Latex => basis.to_latex(),
                Format::Json => pretty(&basis.to_json()),
            }))
        }
        Command::Verify { suite } => verify(cli, *suite, n),
        Command::Projector { word, adjoint } => projector(cli, word.as_ref(), *adjoint, n).map(Output::ok),
    }
}

fn pretty(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON values serialize")
}

fn lyndon_listing(n: usize, format: Format) -> String {
    let classes: Vec<(usize, Vec<Word>)> = (1..=n).map(|k| (k, lyndon_of_weight(k))).collect();
    match format {
        Format::Text => classes
            .iter()
            .map(|(k, ws)| {
                let words: Vec<String> = ws.iter().map(Word::to_string).collect();
                format!("weight {k}: {}", words.join(" "))
            })
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Latex => classes
            .iter()
            .map(|(k, ws)| {
                let words: Vec<String> = ws.iter().map(|w| format!("${}$", word_latex(w))).collect();
                format!("weight {k}: {}", words.join(", "))
            })
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Json => {
            let weights: serde_json::Map<String, serde_json::Value> = classes
                .iter()
                .map(|(k, ws)| (k.to_string(), json!(ws.iter().map(Word::to_string).collect::<Vec<_>>())))
                .collect();
            pretty(&json!({ "max_weight": n, "lyndon": weights }))
        }
    }
}

fn render_polynomial(p: &NCPolynomial, format: Format, context: serde_json::Value) -> String {
    match format {
        Format::Text => p.to_string(),
        Format::Latex => polynomial_latex(p),
        Format::Json => {
            let mut value = context;
            value["result"] = serde_json::to_value(p).expect("polynomials serialize");
            pretty(&value)
        }
    }
}

fn product(cli: &Cli, kind: ProductKind, u: &Word, v: &Word) -> Result<String> {
    let p = match kind {
        ProductKind::Stuffle => q_stuffle().stuffle(u, v),
        ProductKind::Shuffle => shuffle(u, v),
        ProductKind::Conc => NCPolynomial::word(u.concat(v)),
    };
    let p = match &cli.q {
        Some(q0) => p.eval(q0),
        None => p,
    };
    let context = json!({
        "product": format!("{kind:?}").to_lowercase(),
        "u": u.to_string(),
        "v": v.to_string(),
        "q": cli.q.as_ref().map(Rational::to_string),
    });
    Ok(render_polynomial(&p, cli.format, context))
}

/// Σ by the requested method; `both` computes the two and requires equality.
fn sigma(alg: &StuffleAlgebra, method: SigmaMethod, n: usize) -> Result<GradedBasis> {
    Ok(match method {
        SigmaMethod::Oracle => sigma_oracle(alg, n)?,
        SigmaMethod::Recursive => sigma_recursive(alg, n)?,
        SigmaMethod::Both => {
            let oracle = sigma_oracle(alg, n)?;
            let recursive = sigma_recursive(alg, n)?;
            compare_sigma(&oracle, &recursive).context("oracle and recursive Σ disagree")?;
            oracle
        }
    })
}

fn basis(cli: &Cli, kind: BasisArg, n: usize) -> Result<GradedBasis> {
    let alg = q_stuffle();
    Ok(match kind {
        BasisArg::Pi => pi_basis(alg, n),
        BasisArg::Sigma => sigma(alg, cli.sigma_method, n)?,
        BasisArg::Chi => chi_basis(alg, n),
        BasisArg::Xi => xi_basis(alg, n)?,
    })
}

/// Verification runs on the algebra with `c = q`, or `c = q0` under `--q q0`.
fn verify(cli: &Cli, suite: Suite, n: usize) -> Result<Output> {
    let specialized;
    let alg: &StuffleAlgebra = match &cli.q {
        Some(q0) => {
            specialized = StuffleAlgebra::specialized(q0.clone());
            &specialized
        }
        None => q_stuffle(),
    };
    let pbw = Pbw::new(alg);
    let wants = |s: Suite| suite == s || suite == Suite::All;

    let mut reports: Vec<Report> = Vec::new();
    if wants(Suite::Axioms) {
        reports.push(verify_axioms(alg, n));
    }
    if wants(Suite::Primitivity) {
        reports.push(verify_primitivity(&pbw, n));
    }
    if wants(Suite::Duality) || wants(Suite::Factorization) {
        let pi = pbw.graded(n);
        let sigma = sigma(alg, cli.sigma_method, n)?;
        if wants(Suite::Duality) {
            reports.push(verify_duality(&pi, &sigma));
        }
        if wants(Suite::Factorization) {
            reports.push(verify_factorization(alg, &pi, &sigma, n));
        }
    }

    let ok = reports.iter().all(Report::passed);
    let body = match cli.format {
        Format::Json => pretty(&json!({
            "max_weight": n,
            "q": cli.q.as_ref().map(Rational::to_string),
            "passed": ok,
            "reports": reports,
        })),
        Format::Text | Format::Latex => {
            let parts: Vec<String> = reports.iter().map(Report::to_string).collect();
            parts.join("\n\n")
        }
    };
    Ok(Output { body, ok })
}

fn projector(cli: &Cli, word: Option<&Word>, adjoint: bool, n: usize) -> Result<String> {
    let alg = q_stuffle();
    let apply = |w: &Word| -> Result<NCPolynomial> {
        let p = if adjoint { pi1_adjoint(alg, w)? } else { pi1(alg, w)? };
        Ok(match &cli.q {
            Some(q0) => p.eval(q0),
            None => p,
        })
    };
    let name = if adjoint { "π1_adjoint" } else { "π1" };
    let words: Vec<Word> = match word {
        Some(w) => {
            if w.is_empty() {
                bail!("the projector is defined on nonempty words");
            }
            vec![w.clone()]
        }
        None => (1..=n).flat_map(qstuffle::words::words_of_weight).collect(),
    };
    let mut lines = Vec::new();
    let mut entries = serde_json::Map::new();
    for w in &words {
        let p = apply(w)?;
        match cli.format {
            Format::Text => lines.push(format!("{name}[{w}] = {p}")),
            Format::Latex => lines.push(format!("\\pi_1({})={}", word_latex(w), polynomial_latex(&p))),
            Format::Json => {
                entries.insert(w.to_string(), serde_json::to_value(&p)?);
            }
        }
    }
    Ok(match cli.format {
        Format::Json => pretty(&json!({
            "projector": name,
            "q": cli.q.as_ref().map(Rational::to_string),
            "entries": entries,
        })),
        _ => lines.join("\n"),
    })
}
