//! The Chebyshev identities behind the factorization, checked numerically at
//! a handful of points.
//!
//! Run with: `cargo run -p dctfactor --example chebyshev`

use dctfactor::{cheb_eval, dct2_zeros, ChebKind, Rational};

use ChebKind::{First as T, Second as U, Third as V};

fn main() -> dctfactor::Result<()> {
    let xs = [-0.9, -0.31, 0.0, 0.42, 0.77];
    let n = 8;
    let r = Rational::skew(3, 8)?;

    let mut worst = [0.0f64; 4];
    for &x in &xs {
        // U_{2n-1} = U_{n-1} · 2T_n
        worst[0] = worst[0].max(
            (cheb_eval(U, 2 * n - 1, x) - cheb_eval(U, n - 1, x) * 2.0 * cheb_eval(T, n, x)).abs(),
        );
        // 2T_n = V_n + V_{n-1}
        worst[1] = worst[1]
            .max((2.0 * cheb_eval(T, n, x) - cheb_eval(V, n, x) - cheb_eval(V, n - 1, x)).abs());
        // V_n - V_{n-1} = 2(x - 1) U_{n-1}
        worst[2] = worst[2].max(
            (cheb_eval(V, n, x)
                - cheb_eval(V, n - 1, x)
                - 2.0 * (x - 1.0) * cheb_eval(U, n - 1, x))
            .abs(),
        );
        // 2T_2n - 2cos rπ = (2T_n - 2cos(rπ/2)) (2T_n - 2cos π(1 - r/2))
        let t = 2.0 * cheb_eval(T, n, x);
        worst[3] = worst[3].max(
            (2.0 * cheb_eval(T, 2 * n, x)
                - 2.0 * r.cos_pi()
                - (t - 2.0 * r.halved().cos_pi()) * (t - 2.0 * r.reflected_half().cos_pi()))
            .abs(),
        );
    }
    println!("U_2n-1 = U_n-1 2T_n          {:.2e}", worst[0]);
    println!("2T_n = V_n + V_n-1           {:.2e}", worst[1]);
    println!("V_n - V_n-1 = 2(x-1)U_n-1    {:.2e}", worst[2]);
    println!("skew product ({r})          {:.2e}", worst[3]);

    println!("\nV_(n+l) = V_(n-l-1) at the zeros of (x-1)U_(n-1), n = {n}:");
    for &a in dct2_zeros(n)?.values() {
        let d = (0..n)
            .map(|l| (cheb_eval(V, n + l, a) - cheb_eval(V, n - l - 1, a)).abs())
            .fold(0.0, f64::max);
        println!("  x = {a:+.6}  max |diff| = {d:.2e}");
    }
    Ok(())
}
