#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Determinant by cofactor expansion over plain integers.
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    match m.len() {
        0 => BigInt::from(1),
        1 => m[0][0].clone(),
        n => (0..n)
            .filter(|&j| !m[0][j].is_zero())
            .map(|j| {
                let minor: Vec<Vec<BigInt>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect()).collect();
                let t = &m[0][j] * det(&minor);
                if j % 2 == 0 { t } else { -t }
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut with_last: Vec<Vec<usize>> = subsets(n - 1, k - 1);
    for s in &mut with_last {
        s.push(n - 1);
    }
    let mut out = subsets(n - 1, k);
    out.extend(with_last);
    out
}

/// Invariant factors from determinant divisors: `d_k` is the gcd of all
/// `k x k` minors and `e_k = d_k / d_(k-1)`, zero once `d_k` vanishes.
pub fn invariant_factors(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    for k in 1..=rows.min(cols) {
        let mut d = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<BigInt>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect()).collect();
                d = d.gcd(&det(&minor));
            }
        }
        if d.is_zero() {
            out.push(BigInt::zero());
            prev = BigInt::zero();
            continue;
        }
        out.push((&d / &prev).abs());
        prev = d;
    }
    out
}

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn run_cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringdiag"))
        .args(args)
        .current_dir(crate_dir())
        .output()
        .expect("binary runs")
}

/// Golden transcripts: name and command line, run from the crate root.
pub const GOLDEN: &[(&str, &[&str])] = &[
    ("bezout_z", &["bezout", "--ring", "Z", "12", "18"]),
    ("bezout_gf5", &["bezout", "--json", "tests/fixtures/gf5_bezout.json"]),
    ("ssr1_z6", &["ssr1", "--ring", "Z/6", "2", "3"]),
    ("ssr1_z_negative", &["ssr1", "--ring", "Z", "3", "7"]),
    ("sr1_z6", &["sr1", "--ring", "Z/6", "4", "3"]),
    ("sr2_z", &["sr2", "--ring", "Z", "6", "10", "15"]),
    ("toeplitz_reduce_z6", &["toeplitz-reduce", "--ring", "Z/6", "2", "3"]),
    ("toeplitz_complete_z", &["toeplitz-complete", "--ring", "Z", "5", "2"]),
    ("toeplitz_snf_z6", &["toeplitz-snf", "--json", "tests/fixtures/z6_upper.json"]),
    ("snf_z", &["snf", "--ring", "Z", "--json", "tests/fixtures/z_2x2.json"]),
    ("snf_z_diag3", &["snf", "--json", "tests/fixtures/z_diag3.json"]),
    ("find_pq_z", &["find-pq", "--ring", "Z", "6", "10", "15"]),
    ("neat_z", &["neat", "--ring", "Z", "12", "3", "2"]),
    ("neat_shift_z", &["neat-shift", "--ring", "Z", "4", "3"]),
    ("clean_z", &["clean", "--ring", "Z", "4", "3", "3", "6"]),
    ("prop5_forward_z6", &["prop5-forward", "--ring", "Z/6", "2", "3", "5", "1", "2"]),
    ("prop5_backward_z6", &["prop5-backward", "--ring", "Z/6", "2", "3", "5", "2", "1", "1"]),
    ("classify_z6", &["classify", "--ring", "Z/6"]),
    ("verify_z4_prop5", &["verify", "--ring", "Z/4", "PROP5"]),
];

pub fn golden_path(name: &str) -> PathBuf {
    crate_dir().join("tests/golden").join(format!("{name}.json"))
}

/// Compares the command's stdout with the stored transcript. With
/// `UPDATE_GOLDEN=1` the transcript is rewritten instead.
pub fn check_golden(name: &str, args: &[&str]) -> Result<(), String> {
    let out = run_cli(args);
    if !out.status.success() {
        return Err(format!("{name}: exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stdout)));
    }
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &out.stdout).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let expected = std::fs::read(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected != out.stdout {
        return Err(format!("{name}: output differs from {}", path.display()));
    }
    let mut with_check: Vec<&str> = args.to_vec();
    with_check.push("--check");
    let checked = run_cli(&with_check);
    if !checked.status.success() || checked.stdout != expected {
        return Err(format!("{name}: --check failed: {}", String::from_utf8_lossy(&checked.stdout)));
    }
    Ok(())
}

