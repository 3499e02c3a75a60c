use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("clmackey").chain(args.iter().copied());
    let code = clmackey::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (code, out, err) = run(&full);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn tensor_of_two_spinors() {
    let (code, out, _) = run(&["tensor", "2", "rho", "rho"]);
    assert_eq!(code, 0);
    for a in ["chi:{}", "chi:{1}", "chi:{2}", "chi:{1,2}"] {
        assert!(
            out.lines().any(|l| l.split_whitespace().eq([a, "1"])),
            "{a} missing from\n{out}"
        );
    }
    assert!(!out.contains("rho "));
    let v = json(&["tensor", "2", "rho", "rho"]);
    assert_eq!(
        v,
        serde_json::json!({
            "terms": [
                {"irrep": "chi:{}", "mult": 1},
                {"irrep": "chi:{1}", "mult": 1},
                {"irrep": "chi:{2}", "mult": 1},
                {"irrep": "chi:{1,2}", "mult": 1}
            ],
            "multiplicity_free": true
        })
    );
}

#[test]
fn gelfand_verdicts() {
    let (code, out, _) = run(&["gelfand", "2", "--subgroup", "1"]);
    assert_eq!(code, 0);
    assert!(
        out.contains("NOT a Gelfand pair; witness (rho, rho, chi:{}) multiplicity 2"),
        "{out}"
    );
    let v = json(&["gelfand", "3", "--subgroup", "2"]);
    assert_eq!(
        v,
        serde_json::json!({
            "pair": "(CL(3)xCL(3)xCL(2), diag)",
            "gelfand": true,
            "max_multiplicity": 1
        })
    );
    let v = json(&["gelfand", "2", "--subgroup", "1", "--method", "both"]);
    assert_eq!(v["gelfand"], false);
    assert_eq!(v["biinvariant"], false);
    let (_, out, _) = run(&["gelfand", "4"]);
    assert!(
        out.contains("(CL(4)xCL(4)xCL(4), diag): Gelfand pair"),
        "{out}"
    );
}

#[test]
fn multiply_uses_the_sign_rule() {
    let (code, out, _) = run(&["multiply", "2", "+g{2}", "+g{1}"]);
    assert_eq!((code, out.trim()), (0, "-g{1,2}"));
    let (_, out, _) = run(&["multiply", "2", "+g{1}", "+g{2}"]);
    assert_eq!(out.trim(), "+g{1,2}");
    let (_, out, _) = run(&["multiply", "3", "-g{1,2,3}", "+g{1,2,3}"]);
    assert_eq!(out.trim(), "+g{}");
    let v = json(&["multiply", "2", "+g{2}", "+g{1}"]);
    assert_eq!(v["product"], "-g{1,2}");
}

#[test]
fn classes_count() {
    for (n, count) in [(1, 4), (2, 5), (3, 10), (4, 17)] {
        let v = json(&["classes", &n.to_string()]);
        assert_eq!(v["count"], count, "n = {n}");
        let total: u64 = v["classes"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c["size"].as_u64().unwrap())
            .sum();
        assert_eq!(total, 1 << (n + 1));
    }
}

#[test]
fn restrict_forms() {
    let v = json(&["restrict", "3", "rho+"]);
    assert_eq!(v["terms"], serde_json::json!([{"irrep": "rho", "mult": 1}]));
    let v = json(&["restrict", "2", "rho", "rho"]);
    assert_eq!(
        v["terms"],
        serde_json::json!([{"irrep": "chi:{}", "mult": 2}, {"irrep": "chi:{1}", "mult": 2}])
    );
    assert_eq!(v["multiplicity_free"], false);
}

#[test]
fn orbit_of_a_pair() {
    let v = json(&["orbits", "2", "--pair", "+g{1},+g{2}"]);
    assert_eq!(v["size"], 4);
    assert_eq!(v["predicted"], true);
    let v = json(&["orbits", "2", "--pair", "+g{1},-g{1}"]);
    assert_eq!(v["size"], 2);
    let (code, out, _) = run(&["orbits", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("on 256 pairs"), "{out}");
}

#[test]
fn spherical_values() {
    let (code, out, _) = run(&[
        "spherical",
        "3",
        "--triple",
        "chi:{1},rho+,rho-",
        "--at",
        "+g{1},+g{1},+g{1}",
    ]);
    assert_eq!(code, 0);
    let first = out.lines().next().unwrap();
    assert_eq!(first, "0/1 + 0/1 i");
    // ½ε₂ε₃((−1)^{|A|} + η₂η₃c²) with A = ∅, c = −i, η₂η₃ = 1.
    let v = json(&[
        "spherical",
        "3",
        "--triple",
        "chi:{},rho+,rho+",
        "--at",
        "+g{1,2,3},+g{},+g{}",
    ]);
    assert_eq!(v["value"], "0/1 + 0/1 i");
    let v = json(&[
        "spherical",
        "3",
        "--triple",
        "chi:{},rho+,rho-",
        "--at",
        "+g{1,2,3},-g{},+g{}",
    ]);
    assert_eq!(v["value"], "-1/1 + 0/1 i");
    let v = json(&[
        "spherical",
        "2",
        "--triple",
        "chi:{},chi:{},chi:{}",
        "--at",
        "+g{},+g{},+g{}",
    ]);
    assert_eq!(v["value"], "1/1 + 0/1 i");
    assert_eq!(v["family"], "chi x chi x chi");
    assert_eq!(v["analyzed"], true);
    assert_eq!(v["agrees"], true);
}

#[test]
fn irreps_table() {
    let v = json(&["irreps", "2"]);
    assert_eq!(v["classes"].as_array().unwrap().len(), 5);
    let rho = &v["irreps"][4];
    assert_eq!(rho["irrep"], "rho");
    assert_eq!(rho["dim"], 2);
    assert_eq!(rho["values"], serde_json::json!(["2", "0", "0", "0", "-2"]));
    assert!(v.get("matrices").is_none());
}

type Matrix = Vec<Vec<(i64, i64)>>;

// Entries in the golden file are Gaussian integers, so integer arithmetic
// suffices for the relation checks.
fn matrix(v: &Value) -> Matrix {
    v.as_array()
        .unwrap()
        .iter()
        .map(|row| {
            row.as_array()
                .unwrap()
                .iter()
                .map(|e| {
                    assert_eq!(e["re_den"], 1);
                    assert_eq!(e["im_den"], 1);
                    (e["re_num"].as_i64().unwrap(), e["im_num"].as_i64().unwrap())
                })
                .collect()
        })
        .collect()
}

fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let d = a.len();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    (0..d).fold((0, 0), |(re, im), k| {
                        let (x, y) = (a[i][k], b[k][j]);
                        (re + x.0 * y.0 - x.1 * y.1, im + x.0 * y.1 + x.1 * y.0)
                    })
                })
                .collect()
        })
        .collect()
}

fn scaled_identity(d: usize, s: i64) -> Matrix {
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i == j { (s, 0) } else { (0, 0) })
                .collect()
        })
        .collect()
}

#[test]
fn golden_matrix_models() {
    let v = json(&["irreps", "2", "--matrices"]);
    let golden: Value =
        serde_json::from_str(include_str!("golden/irreps_2_matrices.json")).unwrap();
    assert_eq!(v, golden);
    let models = golden["matrices"].as_array().unwrap();
    assert_eq!(models.len(), 5);
    for m in models {
        let gens: Vec<Matrix> = m["generators"]
            .as_array()
            .unwrap()
            .iter()
            .map(matrix)
            .collect();
        assert_eq!(gens.len(), 2);
        let d = gens[0].len();
        for g in &gens {
            assert_eq!(mul(g, g), scaled_identity(d, 1));
        }
        let anti = mul(&gens[0], &gens[1]);
        let swapped = mul(&gens[1], &gens[0]);
        let expected = if m["irrep"] == "rho" {
            swapped
                .iter()
                .map(|r| r.iter().map(|&(a, b)| (-a, -b)).collect())
                .collect()
        } else {
            swapped
        };
        assert_eq!(anti, expected, "{}", m["irrep"]);
    }
}

#[test]
fn verify_smoke() {
    let (code, out, _) = run(&["verify"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.matches("[PASS]").count(), 9);
    assert!(out.contains("9/9 checks passed"));
    let v = json(&["verify", "--criterion", "2", "--seed", "7"]);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["level"], "smoke");
    assert_eq!(v["checks"][0]["criterion"], 2);
}

#[test]
fn usage_and_domain_errors() {
    let (code, _, err) = run(&["multiply", "2", "bad", "+g{}"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error: cannot parse \"bad\""), "{err}");
    assert_eq!(err.lines().count(), 1);
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["tensor", "2", "rho", "sigma"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["multiply", "2", "+g{3}", "+g{}"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["verify", "--criterion", "10"]);
    assert_eq!(code, 2);
    let (code, _, err) = run(&["tensor", "20", "rho", "rho"]);
    assert_eq!(code, 1);
    assert!(err.contains("exceeds the limit"), "{err}");
    let (code, _, _) = run(&["gelfand", "3", "--subgroup", "1"]);
    assert_eq!(code, 1);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("spherical"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_clmackey");
    let ok = Command::new(bin)
        .args(["multiply", "2", "+g{2}", "+g{1}"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout).trim(), "-g{1,2}");
    let usage = Command::new(bin).args(["classes", "x"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let domain = Command::new(bin).args(["irreps", "30"]).output().unwrap();
    assert_eq!(domain.status.code(), Some(1));
}

#[test]
fn table_and_json_agree() {
    let (_, table, _) = run(&["tensor", "3", "rho+", "rho-"]);
    let v = json(&["tensor", "3", "rho+", "rho-"]);
    for t in v["terms"].as_array().unwrap() {
        let line = format!("{} {}", t["irrep"].as_str().unwrap(), t["mult"]);
        assert!(
            table
                .lines()
                .any(|l| l.split_whitespace().collect::<Vec<_>>().join(" ") == line),
            "{line} not in\n{table}"
        );
    }
}
