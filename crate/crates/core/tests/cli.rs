mod common;

use std::path::{Path, PathBuf};

use common::cli;
use fastmm::bilinear::{emit_spec, strassen, Factor};
use fastmm::matrix::{parse_matrix, AnyMatrix};
use fastmm::{multiply_classical, Matrix, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p: PathBuf = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn rational(text: &str) -> Matrix<Rational> {
    match parse_matrix(text).unwrap() {
        AnyMatrix::Rational(m) => m,
        other => panic!("expected a rational matrix, got {}", other.regime()),
    }
}

#[test]
fn multiply_matches_classical() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let a = common::random_rational(6, 5, &mut rng);
    let b = common::random_rational(5, 7, &mut rng);
    let (pa, pb) = (write(dir.path(), "a.mat", &a.to_text()), write(dir.path(), "b.mat", &b.to_text()));
    let pc = dir.path().join("c.mat");
    let (code, _, err) = cli(&["multiply", "--alg", "strassen", "--cutoff", "1", &pa, &pb, "-o", pc.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let c = rational(&std::fs::read_to_string(&pc).unwrap());
    assert_eq!(c, multiply_classical(&a, &b).unwrap());

    let pi = write(dir.path(), "i.mat", &Matrix::<Rational>::identity(5, ()).to_text());
    let (code, out, _) = cli(&["multiply", "--alg", "strassen", &pi, &pb]);
    assert_eq!(code, 0);
    assert_eq!(out, b.to_text());
}

#[test]
fn multiply_errors() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.mat", "2 3 rational\n1 2 3\n4 5 6\n");
    let (code, _, err) = cli(&["multiply", &a, &a]);
    assert_eq!(code, 1);
    assert!(err.contains("2x3") && err.contains("2x3"), "{err}");
    let (code, _, _) = cli(&["multiply", "--alg", "bogus", &a, &a]);
    assert_eq!(code, 2);
    let spec = write(dir.path(), "bad.spec", "not a spec");
    let (code, _, _) = cli(&["multiply", "--alg", &format!("spec:{spec}"), &a, &a]);
    assert_eq!(code, 2);
    let f = write(dir.path(), "f.mat", "3 2 f64\n1 2\n3 4\n5 6\n");
    let (code, _, err) = cli(&["multiply", &a, &f]);
    assert_eq!(code, 1);
    assert!(err.contains("regime"), "{err}");
    let (code, _, _) = cli(&["multiply", &a, "/nonexistent/b.mat"]);
    assert_eq!(code, 1);
}

#[test]
fn validate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = cli(&["validate", "strassen"]);
    assert_eq!(code, 0);
    assert!(out.contains("exponent 2.807354922"), "{out}");
    let (code, _, _) = cli(&["validate", "classical:3"]);
    assert_eq!(code, 0);
    let broken = strassen().with_entry(Factor::W, 0, 0, Rational::from_integer(2));
    let spec = write(dir.path(), "broken.spec", &emit_spec(&broken));
    let (code, _, err) = cli(&["validate", &format!("spec:{spec}")]);
    assert_eq!(code, 3);
    assert!(err.contains("block C("), "{err}");
}

#[test]
fn bench_rows_and_determinism() {
    let args = ["bench", "--alg", "strassen", "--sizes", "4,8,16,32", "-p", "24", "--seed", "7"];
    let (code, out, err) = cli(&args);
    assert_eq!(code, 0, "{err}");
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[0].contains("theta") && lines[0].contains("norm") && lines[0].contains("seed"));
    for row in &lines[1..] {
        assert!(row.contains(",max-entry,24,") && row.contains(",true,"), "{row}");
        assert!(row.contains(",8,"), "theta0 recorded: {row}");
    }
    let counts: Vec<&str> = lines[1..].iter().map(|r| r.split(',').rev().nth(2).unwrap()).collect();
    assert_eq!(counts, ["49", "343", "2401", "16807"]);
    assert_eq!(cli(&args).1, out);
}

#[test]
fn bench_usage_errors() {
    assert_eq!(cli(&["bench", "--sizes", "4"]).0, 1);
    assert_eq!(cli(&["bench", "--sizes", "", "--seed", "1"]).0, 1);
    assert_eq!(cli(&["bench", "--alg", "nope", "--sizes", "4", "--seed", "1"]).0, 2);
    assert_eq!(cli(&["bench", "--sizes", "6", "--seed", "1"]).0, 1);
    assert_eq!(cli(&["bench", "--sizes", "8", "--seed", "1", "--slack", "-1"]).0, 1);
    // theta = 0 collapses the bound to zero
    let (code, out, _) = cli(&["bench", "--sizes", "8", "--seed", "1", "--theta", "0"]);
    assert_eq!(code, 3);
    assert!(out.lines().nth(1).unwrap().contains(",false,"));
}

fn worst_error(csv: &str) -> f64 {
    csv.lines().skip(1).map(|r| r.split(',').nth(5).unwrap().parse::<f64>().unwrap()).fold(0.0, f64::max)
}

#[test]
fn bench_epsilon_scaling() {
    let run = |p: &str| {
        let (code, out, err) = cli(&[
            "bench", "--alg", "classical", "--sizes", "8", "-p", p, "--seed", "5", "--instances", "40", "--input-bits",
            "40",
        ]);
        assert_eq!(code, 0, "{err}");
        worst_error(&out)
    };
    let ratio = run("24") / run("53");
    let eps_ratio = 29f64.exp2();
    assert!(ratio >= eps_ratio / 2.0 && ratio <= eps_ratio * 2.0, "ratio {ratio:e} vs {eps_ratio:e}");
}

#[test]
fn exponent_outputs() {
    assert_eq!(cli(&["exponent", "--triple", "2,2,2", "--rank", "7"]).1, "2.807354922\n");
    assert_eq!(cli(&["exponent", "--triple", "3,3,3", "--rank", "27"]).1, "3.000000000\n");
    let (code, out, _) = cli(&["exponent", "--stpp-family", "--alpha", "3", "--beta", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("2.500000000") && out.contains("2.000000000") && out.contains("4.500000000 (> 3)"), "{out}");
    assert_eq!(cli(&["exponent", "--triple", "2,2", "--rank", "7"]).0, 1);
    assert_eq!(cli(&["exponent", "--triple", "2,2,2"]).0, 1);
}

#[test]
fn stpp_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let found = dir.path().join("found.stpp");
    let (code, out, err) = cli(&["stpp", "search", "--group", "5", "--N", "2", "-o", found.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&found).unwrap();
    assert!(text.contains("STPP: verified"));
    let (code, out, _) = cli(&["stpp", "check", found.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("STPP: verified"));

    let fixture = common::fixture("family.stpp");
    let corrupted = std::fs::read_to_string(&fixture).unwrap().replacen("Y1: 0 2", "Y1: 0 7", 1);
    let bad = write(dir.path(), "bad.stpp", &corrupted);
    let (code, _, err) = cli(&["stpp", "check", &bad]);
    assert_eq!(code, 3);
    assert!(err.contains("q_x") && err.contains("q_y") && err.contains("q_z"), "{err}");

    let b = Matrix::<f64>::from_fn(6, 6, (), |i, j| (i as f64) - 2.0 * j as f64);
    let pb = write(dir.path(), "b.mat", &b.to_text());
    let pi = write(dir.path(), "i.mat", &Matrix::<f64>::identity(6, ()).to_text());
    let (code, out, err) = cli(&["stpp", "multiply", "--family", fixture.to_str().unwrap(), &pi, &pb]);
    assert_eq!(code, 0, "{err}");
    let AnyMatrix::Float(c) = parse_matrix(&out).unwrap() else { panic!("real output") };
    assert!(c.data().iter().zip(b.data()).all(|(x, y)| (x - y).abs() < 1e-12));
    assert!(err.contains("step 4 multiply matrices (arithmetic)"), "{err}");

    let (code, out, _) = cli(&["stpp", "growth", "--family", fixture.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("alpha_hat") && out.contains("growth conforming"), "{out}");
    let (code, _, _) = cli(&["stpp", "growth", "--family", fixture.to_str().unwrap(), "--degrees", "1,7"]);
    assert_eq!(code, 1);
    let (code, _, _) = cli(&["stpp", "multiply", "--family", fixture.to_str().unwrap(), "--base", "magic", &pi, &pb]);
    assert_eq!(code, 2);
}

#[test]
fn linear_algebra_commands() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.mat", "3 3 rational\n2 1 0\n1 3 1\n0 1 4\n");
    let (code, out, _) = cli(&["det", &a]);
    assert_eq!((code, out.as_str()), (0, "18\n"));
    let (code, out, _) = cli(&["invert", "--multiplier", "strassen", "--cutoff", "1", &a]);
    assert_eq!(code, 0);
    let inv = rational(&out);
    assert_eq!(multiply_classical(&rational(&std::fs::read_to_string(&a).unwrap()), &inv).unwrap(), Matrix::identity(3, ()));
    let (code, out, _) = cli(&["lu", &a]);
    assert_eq!(code, 0);
    assert!(out.contains("# L") && out.contains("# U") && out.contains("# P"));
    let b = write(dir.path(), "b.mat", "3 1 rational\n3\n5\n5\n");
    let (code, out, _) = cli(&["solve", &a, &b]);
    assert_eq!((code, out.as_str()), (0, "3 1 rational\n1\n1\n1\n"));
    let s = write(dir.path(), "s.mat", "2 2 rational\n1 2\n2 4\n");
    assert_eq!(cli(&["invert", &s]).0, 1);
    assert_eq!(cli(&["det", &s]).1, "0\n");
    assert_eq!(cli(&["invert", "--multiplier", "nope", &a]).0, 2);
}

#[test]
fn help_and_version() {
    let (code, out, _) = cli(&["--help"]);
    assert_eq!(code, 0);
    for sub in ["multiply", "validate", "bench", "stpp", "exponent", "invert", "lu", "det", "solve"] {
        assert!(out.contains(sub), "{sub}");
    }
    assert_eq!(cli(&["--version"]).0, 0);
    assert_eq!(cli(&["frobnicate"]).0, 1);
}
