//! Building a transform by hand from the IR primitives: a 4-point DCT-2
//! written out as stride permutation, direct sum and butterfly, then
//! evaluated, counted and lowered.
//!
//! Run with: `cargo run -p dctfactor --example custom_formula`

use dctfactor::{
    b_c2, build_dct4_bar, emit_listing, lower, ref_matrix, stride_perm, FormulaNode, Rational,
    RefKind, SparseEntry, SparseStep,
};

fn main() -> dctfactor::Result<()> {
    let butterfly2 = SparseStep::new(
        2,
        vec![
            vec![SparseEntry::one(0), SparseEntry::one(1)],
            vec![SparseEntry::one(0), SparseEntry::minus_one(1)],
        ],
    )?
    .with_label("F2");

    let dct4 = FormulaNode::Product(vec![
        stride_perm(2, 4)?.into(),
        FormulaNode::DirectSum(vec![butterfly2.into(), build_dct4_bar(2, Rational::HALF)?]),
        b_c2(4)?.into(),
    ]);

    let (rows, cols) = dct4.validate()?;
    println!("{rows}x{cols}, {}", dct4.op_count());
    print!("{}", dct4.to_dense()?);
    let err = dct4
        .to_dense()?
        .max_abs_diff(&ref_matrix(RefKind::Dct2Bar, 4, None)?);
    println!("max deviation from DCT2BAR(4): {err:.2e}\n");
    print!("{}", emit_listing(&lower(&dct4)?));
    Ok(())
}
