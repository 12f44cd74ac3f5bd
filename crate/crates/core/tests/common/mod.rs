//! Test-only oracles, kept independent of the library's construction paths.
#![allow(dead_code)]

use std::f64::consts::PI;

use dctfactor::Rational;
use rand::Rng;

/// All roots of `f` in `[lo, hi]`, by sign-change scan and bisection.
pub fn bisect_roots(f: impl Fn(f64) -> f64, lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let mut roots = Vec::new();
    let h = (hi - lo) / steps as f64;
    for i in 0..steps {
        let (mut a, mut b) = (lo + h * i as f64, lo + h * (i + 1) as f64);
        let (mut fa, fb) = (f(a), f(b));
        if fa == 0.0 {
            roots.push(a);
            continue;
        }
        if fa * fb > 0.0 {
            continue;
        }
        if fb == 0.0 {
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            let fm = f(mid);
            if fm == 0.0 {
                a = mid;
                b = mid;
                break;
            }
            if fa * fm < 0.0 {
                b = mid;
            } else {
                a = mid;
                fa = fm;
            }
        }
        roots.push(0.5 * (a + b));
    }
    if f(hi) == 0.0 {
        roots.push(hi);
    }
    roots
}

/// A random dyadic skew parameter `num / 2^j` in (0, 1), `1 <= j <= max_exp`.
pub fn random_dyadic(rng: &mut impl Rng, max_exp: u32) -> Rational {
    let j = rng.random_range(1..=max_exp);
    let den = 1i64 << j;
    let num = 2 * rng.random_range(0..den / 2) + 1;
    Rational::skew(num, den).unwrap()
}

/// Skew zeros recomputed from scratch: all `θ = (2πj ± rπ)/n` reduced into
/// `(0, π)`, deduplicated and sorted.
pub fn brute_skew_angles(n: usize, r: f64) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for j in -(n as i64)..=(n as i64) {
        for sign in [1.0, -1.0] {
            let t = (2.0 * PI * j as f64 + sign * r * PI) / n as f64;
            if t > 0.0 && t < PI && !out.iter().any(|o| (o - t).abs() < 1e-12) {
                out.push(t);
            }
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

/// The output permutation obtained by sorting the union of the two halves'
/// zeros by angle (stable: first half wins ties).
pub fn zero_sorting_permutation(n: usize, r: f64) -> Vec<usize> {
    let first = brute_skew_angles(n, r / 2.0);
    let second = brute_skew_angles(n, 1.0 - r / 2.0);
    let mut tagged: Vec<(f64, usize)> = first.into_iter().chain(second).zip(0..).collect();
    tagged.sort_by(|a, b| a.0.total_cmp(&b.0));
    tagged.into_iter().map(|(_, i)| i).collect()
}

/// Textbook triple-loop product.
pub fn naive_matmul(a: &[f64], b: &[f64], n: usize, k: usize, m: usize) -> Vec<f64> {
    let mut c = vec![0.0; n * m];
    for i in 0..n {
        for j in 0..m {
            let mut s = 0.0;
            for l in 0..k {
                s += a[i * k + l] * b[l * m + j];
            }
            c[i * m + j] = s;
        }
    }
    c
}

pub fn max_abs(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

pub fn inf_norm(a: &[f64]) -> f64 {
    a.iter().map(|v| v.abs()).fold(0.0, f64::max)
}

/// DCT-2 by its definition sum.
pub fn dct2_sum(x: &[f64]) -> Vec<f64> {
    let n = x.len() as f64;
    (0..x.len())
        .map(|k| {
            x.iter()
                .enumerate()
                .map(|(l, v)| v * (k as f64 * (l as f64 + 0.5) * PI / n).cos())
                .sum()
        })
        .collect()
}
