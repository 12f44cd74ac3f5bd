//! The skew DCT-4 recursion: zeros of the two half-size algebras, the
//! interleaving permutation that merges them, and the building block that
//! carries every nontrivial multiplication.
//!
//! Run with: `cargo run -p dctfactor --example skew_dct4`

use dctfactor::{bb_c4, build_dct4_bar, perm_p, ref_matrix, skew_zeros, Rational, RefKind};

fn degrees(angles: &[f64]) -> Vec<String> {
    angles
        .iter()
        .map(|t| format!("{:.2}", t.to_degrees()))
        .collect()
}

fn main() -> dctfactor::Result<()> {
    let r = Rational::skew(1, 4)?;
    let n = 8;
    println!("zeros of 2T_{n} - 2cos({r} pi), degrees:");
    println!("  {:?}", degrees(skew_zeros(n, r)?.angles()));
    println!(
        "split into r/2 = {} and 1 - r/2 = {}:",
        r.halved(),
        r.reflected_half()
    );
    println!("  {:?}", degrees(skew_zeros(n / 2, r.halved())?.angles()));
    println!(
        "  {:?}",
        degrees(skew_zeros(n / 2, r.reflected_half())?.angles())
    );
    println!("interleave map P{n}: {:?}", perm_p(n)?.map());

    let bb = bb_c4(n, r)?;
    println!("\nBB({n}, {r}) costs {}", bb.op_count());
    print!("{}", bb.to_dense()?);

    let node = build_dct4_bar(n, r)?;
    let err = node
        .to_dense()?
        .max_abs_diff(&ref_matrix(RefKind::Dct4Bar, n, Some(r))?);
    println!(
        "\nDCT4BAR({n}, {r}): {}, max deviation from definition {err:.2e}",
        node.op_count()
    );
    Ok(())
}
