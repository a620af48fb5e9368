use std::process::{Command, Output};

use qstuffle::{NCPolynomial, Word};

fn qstuffle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qstuffle"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = qstuffle(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn product_examples() {
    assert_eq!(stdout_of(&["product", "stuffle", "1", "1"]), "2·[1,1] + q·[2]\n");
    assert_eq!(stdout_of(&["product", "stuffle", "2", "1", "--q", "1"]), "[2,1] + [1,2] + [3]\n");
    assert_eq!(stdout_of(&["product", "conc", "2", "1"]), "[2,1]\n");
    assert_eq!(stdout_of(&["product", "shuffle", "1", "e"]), "[1]\n");
    assert_eq!(stdout_of(&["product", "stuffle", "1", "1", "--q", "-1/2"]), "2·[1,1] - 1/2·[2]\n");
}

#[test]
fn malformed_input_exits_nonzero() {
    for args in [
        &["product", "stuffle", "1", "x"][..],
        &["product", "stuffle", "0", "1"],
        &["product", "stuffle", "1,,2", "1"],
        &["product", "stuffle", "1", "1", "--q", "1/0"],
        &["lyndon", "--max-weight", "0"],
        &["basis", "rho"],
        &["projector", "e"],
    ] {
        let out = qstuffle(args);
        assert!(!out.status.success(), "{args:?} should fail");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn lyndon_listing() {
    assert_eq!(stdout_of(&["lyndon", "--max-weight", "1"]), "weight 1: 1\n");
    assert_eq!(
        stdout_of(&["lyndon", "--max-weight", "3"]),
        "weight 1: 1\nweight 2: 2\nweight 3: 3 2,1\n"
    );
    assert!(stdout_of(&["lyndon", "--max-weight", "4"]).contains(" 2,1,1"));
    let json: serde_json::Value = serde_json::from_str(&stdout_of(&["lyndon", "--format", "json"])).unwrap();
    assert_eq!(json["lyndon"]["6"].as_array().unwrap().len(), 9);
}

#[test]
fn product_json_round_trips() {
    let text = stdout_of(&["product", "stuffle", "2,1", "1,2", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    let p: NCPolynomial = serde_json::from_value(json["result"].clone()).unwrap();
    let expected = qstuffle::ops::stuffle(&"2,1".parse().unwrap(), &"1,2".parse().unwrap());
    assert_eq!(p, expected);
}

#[test]
fn basis_json_round_trips() {
    let text = stdout_of(&["basis", "sigma", "--max-weight", "4", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["kind"], "sigma");
    let entries = json["entries"].as_object().unwrap();
    assert_eq!(entries.len(), 16);
    let oracle = qstuffle::bases::sigma_oracle(qstuffle::ops::q_stuffle(), 4).unwrap();
    for (key, value) in entries {
        let w: Word = key.parse().unwrap();
        let p: NCPolynomial = serde_json::from_value(value.clone()).unwrap();
        assert_eq!(p, oracle.entries[&w], "Σ[{key}]");
    }
}

#[test]
fn golden_bases_at_weight_seven() {
    let pi = stdout_of(&["basis", "pi", "--max-weight", "7"]);
    for line in [
        "Π[1] = [1]",
        "Π[2] = -q/2·[1,1] + [2]",
        "Π[2,1] = [2,1] - [1,2]",
        "Π[3,1,2] = q^2/4·[2,1,1,1,1] - q^2/2·[1,1,2,1,1] + q^2/4·[1,1,1,1,2] - q/2·[3,1,1,1] \
         + q/2·[2,2,1,1] - q·[2,1,1,2] + q/2·[1,3,1,1] + q/2·[1,1,3,1] + q/2·[1,1,2,2] \
         - q/2·[1,1,1,3] + [3,1,2] - [2,3,1] + [2,1,3] - [1,3,2]",
    ] {
        assert!(pi.lines().any(|l| l == line), "missing {line}");
    }
    let sigma = stdout_of(&["basis", "sigma", "--max-weight", "7", "--sigma-method", "both"]);
    for line in [
        "Σ[1] = [1]",
        "Σ[2] = [2]",
        "Σ[2,1] = [2,1] + q/2·[3]",
        "Σ[3,2,1] = [3,2,1] + q/2·[5,1] + q/2·[3,3] + q^2/6·[6]",
    ] {
        assert!(sigma.lines().any(|l| l == line), "missing {line}");
    }
    let long = sigma.lines().find(|l| l.starts_with("Σ[3,1,2,1] = ")).unwrap();
    assert_eq!(long.matches('[').count() - 1, 12);
    assert_eq!(sigma.lines().count(), 128);
}

#[test]
fn sigma_methods_agree_and_latex_renders() {
    let oracle = stdout_of(&["basis", "sigma", "--max-weight", "5", "--sigma-method", "oracle"]);
    let recursive = stdout_of(&["basis", "sigma", "--max-weight", "5", "--sigma-method", "recursive"]);
    assert_eq!(oracle, recursive);
    let latex = stdout_of(&["basis", "sigma", "--max-weight", "3", "--format", "latex"]);
    assert!(latex.contains("\\Sigma_{y_2y_1}&=&y_2y_1+\\frac{q}{2}y_3"));
}

#[test]
fn specialized_basis_is_evaluated() {
    let out = stdout_of(&["basis", "sigma", "--max-weight", "3", "--q", "2"]);
    assert!(out.lines().any(|l| l == "Σ[2,1] = [2,1] + [3]"), "{out}");
}

#[test]
fn verify_suites_pass() {
    for (suite, n) in [("axioms", "4"), ("duality", "5"), ("primitivity", "5"), ("factorization", "4"), ("all", "5")] {
        let out = stdout_of(&["verify", suite, "--max-weight", n]);
        assert!(out.trim_end().lines().last().unwrap().starts_with("PASS: "), "{suite}: {out}");
    }
    let json: serde_json::Value =
        serde_json::from_str(&stdout_of(&["verify", "duality", "--max-weight", "3", "--format", "json"])).unwrap();
    assert_eq!(json["passed"], true);
    let lines = json["reports"][0]["lines"].as_array().unwrap();
    // one line per weight 0..=3 plus the cross-weight line
    assert_eq!(lines.len(), 5);
}

#[test]
fn verify_specialized_algebras() {
    for q in ["1", "-1", "0"] {
        let out = stdout_of(&["verify", "all", "--max-weight", "4", "--q", q]);
        assert!(out.contains("PASS"), "q = {q}");
    }
}

#[test]
fn projector_and_out_file() {
    assert_eq!(stdout_of(&["projector", "2,1"]), "π1[2,1] = 1/2·[2,1] - 1/2·[1,2]\n");
    assert_eq!(stdout_of(&["projector", "1"]), "π1[1] = [1]\n");
    let listing = stdout_of(&["projector", "--max-weight", "3"]);
    assert_eq!(listing.lines().count(), 7);

    let dir = std::env::temp_dir().join(format!("qstuffle-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pi.txt");
    let out = qstuffle(&["basis", "pi", "--max-weight", "3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        stdout_of(&["basis", "pi", "--max-weight", "3"])
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    let args = ["basis", "xi", "--max-weight", "5", "--format", "json"];
    assert_eq!(stdout_of(&args), stdout_of(&args));
}
