#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use rand::Rng;

const PRECISION: usize = 256;

/// `sum p_i ln(p_i / q_i)` evaluated in 256-bit binary floating point.
pub fn kl_oracle(p: &[f64], q: &[f64]) -> f64 {
    big_sum(p, q, |pi, qi, cc| {
        let ratio = pi.div(qi, PRECISION, RoundingMode::ToEven);
        pi.mul(&ratio.ln(PRECISION, RoundingMode::ToEven, cc), PRECISION, RoundingMode::ToEven)
    })
}

/// `sum p_i * -ln q_i` in 256-bit precision.
pub fn cross_entropy_oracle(p: &[f64], q: &[f64]) -> f64 {
    big_sum(p, q, |pi, qi, cc| {
        let l = qi.ln(PRECISION, RoundingMode::ToEven, cc);
        pi.mul(&l, PRECISION, RoundingMode::ToEven).neg()
    })
}

fn big_sum(p: &[f64], q: &[f64], term: impl Fn(&BigFloat, &BigFloat, &mut Consts) -> BigFloat) -> f64 {
    let mut cc = Consts::new().expect("constants cache");
    let mut acc = BigFloat::from_f64(0.0, PRECISION);
    for (&pi, &qi) in p.iter().zip(q) {
        if pi == 0.0 {
            continue;
        }
        let t = term(&BigFloat::from_f64(pi, PRECISION), &BigFloat::from_f64(qi, PRECISION), &mut cc);
        acc = acc.add(&t, PRECISION, RoundingMode::ToEven);
    }
    let text = acc.format(Radix::Dec, RoundingMode::ToEven, &mut cc).expect("format");
    text.parse().expect("decimal")
}

/// Strictly positive vector summing to 1, with entries spanning several
/// orders of magnitude.
pub fn random_distribution<R: Rng>(rng: &mut R, dim: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..dim).map(|_| 10f64.powf(rng.gen_range(-4.0..0.0))).collect();
    let total: f64 = w.iter().sum();
    w.into_iter().map(|x| x / total).collect()
}

/// Counts by linear scan of the edges, independent of `BinSpec::locate`.
pub fn scan_counts(values: &[f64], edges: &[f64]) -> Vec<u64> {
    let n = edges.len() - 1;
    let mut counts = vec![0; n];
    for &v in values {
        let mut bin = n - 1;
        for i in 0..n {
            if v < edges[i + 1] {
                bin = i;
                break;
            }
        }
        counts[bin] += 1;
    }
    counts
}

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn catbench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catbench")).args(args).output().expect("spawn catbench")
}

pub fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}
