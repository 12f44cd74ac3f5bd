//! The output scaling of the DCT-2 is a diagonal, so a codec can fold it
//! into its quantization table and run only the 17-multiplication core.
//! Quantizing `DCT2 x` with step `q_k` equals quantizing `DCT2BAR x` with
//! step `q_k / cos(kπ/2n)`.
//!
//! Run with: `cargo run -p dctfactor --example scaled_quantization`

use dctfactor::{build_dct2, build_dct2_bar, scaling_diag, ScalingKind};

fn main() -> dctfactor::Result<()> {
    let n = 16;
    let x: Vec<f64> = (0..n)
        .map(|i| 128.0 + 60.0 * (i as f64 * 0.7).sin() - 3.0 * i as f64)
        .collect();
    let steps: Vec<f64> = (0..n).map(|k| 8.0 + 2.0 * k as f64).collect();

    let full = build_dct2(n)?;
    let core = build_dct2_bar(n)?;
    println!(
        "full DCT-2: {}   core only: {}",
        full.op_count(),
        core.op_count()
    );

    let scale = scaling_diag(ScalingKind::C2, n);
    let folded: Vec<f64> = steps.iter().zip(&scale).map(|(q, s)| q / s).collect();

    let direct: Vec<i64> = full
        .apply(&x)?
        .iter()
        .zip(&steps)
        .map(|(y, q)| (y / q).round() as i64)
        .collect();
    let via_core: Vec<i64> = core
        .apply(&x)?
        .iter()
        .zip(&folded)
        .map(|(y, q)| (y / q).round() as i64)
        .collect();

    println!("quantized (scaled DCT):   {direct:?}");
    println!("quantized (folded steps): {via_core:?}");
    assert_eq!(direct, via_core);
    Ok(())
}
