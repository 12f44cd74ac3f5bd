//! A recursive DCT-2 algorithm for power-of-two sizes, built as an explicit
//! product of sparse matrices.
//!
//! The unscaled 16-point transform needs 17 multiplications and 81
//! additions; the 15 output scalings bring the full DCT-2 to 32
//! multiplications. The crate provides:
//!
//! - [`oracle`]: Chebyshev polynomials, algebra zeros and the dense
//!   definition matrices used as ground truth,
//! - [`formula`]: the sparse-factor IR with evaluation and op counting,
//! - [`factor`]: the recursive DCT-2 / skew DCT-4 factorizations,
//! - [`flowgraph`]: lowering to straight-line code and DOT / listing output,
//! - [`cli`]: the `dctfactor` command-line driver.
//!
//! ```
//! use dctfactor::{build_dct2, build_dct2_bar, OpCount};
//!
//! assert_eq!(build_dct2(16).unwrap().op_count(), OpCount::new(32, 81));
//! assert_eq!(build_dct2_bar(16).unwrap().op_count(), OpCount::new(17, 81));
//! ```

pub mod cli;
pub mod dense;
mod error;
pub mod factor;
pub mod flowgraph;
pub mod formula;
pub mod oracle;

pub use dense::DenseMatrix;
pub use error::{Error, Result};
pub use factor::{
    b_c2, bb_c4, build_dct2, build_dct2_bar, build_dct4_bar, closed_form_adds,
    closed_form_core_mults, perm_p, stride_perm, CountRow, TransformKind, TransformSpec,
};
pub use flowgraph::{emit_dot, emit_listing, lower, lower_with, LowerOptions, StraightLineProgram};
pub use formula::{Diagonal, FormulaNode, OpCount, Permutation, SparseEntry, SparseStep};
pub use oracle::{
    cheb_eval, dct2_zeros, ref_matrix, scaling_diag, skew_zeros, ChebKind, Rational, RefKind,
    ScalingKind, ZeroList,
};
