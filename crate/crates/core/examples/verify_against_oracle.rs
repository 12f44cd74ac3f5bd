//! Expands each factorization to a dense matrix and compares it with the
//! definition matrix, entry by entry.
//!
//! Run with: `cargo run -p dctfactor --example verify_against_oracle`

use dctfactor::{build_dct2, build_dct2_bar, build_dct4_bar, ref_matrix, Rational, RefKind};

fn main() -> dctfactor::Result<()> {
    println!(
        "{:>4} {:>12} {:>12} {:>12}",
        "n", "DCT2", "DCT2BAR", "DCT4BAR(3/8)"
    );
    let r = Rational::skew(3, 8)?;
    for k in 0..=6 {
        let n = 1 << k;
        let e2 = build_dct2(n)?
            .to_dense()?
            .max_abs_diff(&ref_matrix(RefKind::Dct2, n, None)?);
        let e2b =
            build_dct2_bar(n)?
                .to_dense()?
                .max_abs_diff(&ref_matrix(RefKind::Dct2Bar, n, None)?);
        let e4 = build_dct4_bar(n, r)?.to_dense()?.max_abs_diff(&ref_matrix(
            RefKind::Dct4Bar,
            n,
            Some(r),
        )?);
        println!("{n:>4} {e2:>12.3e} {e2b:>12.3e} {e4:>12.3e}");
    }
    Ok(())
}
