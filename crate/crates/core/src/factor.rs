//! Recursive factorizations of DCT-2 and skew DCT-4 into [`FormulaNode`]s.
//!
//! Two splits drive everything:
//!
//! ```text
//! DCT2BAR(2n)    = L(n, 2n) · (DCT2BAR(n) ⊕ DCT4BAR(n, 1/2)) · B(2n)
//! DCT4BAR(2n, r) = P(2n)    · (DCT4BAR(n, r/2) ⊕ DCT4BAR(n, 1 - r/2)) · BB(2n, r)
//! ```
//!
//! `B(2n) = [[I, J], [I, -J]]` is multiplication free. `BB(2n, r)` is the
//! building block `[[I, I], [I, -I]] · [[I, -J], [0, 2cos(rπ/2) I]]` and is
//! the only place nontrivial multiplications appear. Both size-1 transforms
//! are the 1x1 identity.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::formula::{Diagonal, FormulaNode, OpCount, Permutation, SparseEntry, SparseStep};
use crate::oracle::{scaling_diag, Rational, ScalingKind};

/// Which transform a [`TransformSpec`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransformKind {
    Dct2,
    Dct2Bar,
    Dct4Bar(Rational),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TransformSpec {
    kind: TransformKind,
    n: usize,
}

impl TransformSpec {
    pub fn new(kind: TransformKind, n: usize) -> Result<Self> {
        check_pow2(n)?;
        if let TransformKind::Dct4Bar(r) = kind {
            r.check_skew()?;
        }
        Ok(Self { kind, n })
    }

    pub fn kind(&self) -> TransformKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn build(&self) -> Result<FormulaNode> {
        match self.kind {
            TransformKind::Dct2 => build_dct2(self.n),
            TransformKind::Dct2Bar => build_dct2_bar(self.n),
            TransformKind::Dct4Bar(r) => build_dct4_bar(self.n, r),
        }
    }
}

fn check_pow2(n: usize) -> Result<()> {
    if n.is_power_of_two() {
        Ok(())
    } else {
        Err(Error::NotPowerOfTwo(n))
    }
}

fn half_of_even(two_n: usize) -> Result<usize> {
    if two_n == 0 || !two_n.is_multiple_of(2) {
        Err(Error::OddSize(two_n))
    } else {
        Ok(two_n / 2)
    }
}

/// The multiplication-free change of basis `[[I_n, J_n], [I_n, -J_n]]`.
pub fn b_c2(two_n: usize) -> Result<SparseStep> {
    let n = half_of_even(two_n)?;
    let top = (0..n).map(|i| vec![SparseEntry::one(i), SparseEntry::one(two_n - 1 - i)]);
    let bottom = (0..n).map(|i| vec![SparseEntry::one(i), SparseEntry::minus_one(two_n - 1 - i)]);
    Ok(SparseStep::new(two_n, top.chain(bottom).collect())?.with_label(format!("B{two_n}")))
}

/// The skew change of basis as a product of two sparse steps,
/// `[[I, I], [I, -I]] · [[I, -J], [0, 2cos(rπ/2) I]]`, costing `m`
/// multiplications and `3m` additions at size `2m`.
pub fn bb_c4(two_n: usize, r: Rational) -> Result<FormulaNode> {
    let m = half_of_even(two_n)?;
    r.check_skew()?;
    let twice_cos = 2.0 * (PI * r.num() as f64 / (2 * r.den()) as f64).cos();
    let label = format!("BB(m={m}, r={r})");

    let butterfly = (0..m)
        .map(|i| vec![SparseEntry::one(i), SparseEntry::one(m + i)])
        .chain((0..m).map(|i| vec![SparseEntry::one(i), SparseEntry::minus_one(m + i)]))
        .collect();
    let twist = (0..m)
        .map(|i| vec![SparseEntry::one(i), SparseEntry::minus_one(two_n - 1 - i)])
        .chain((0..m).map(|i| vec![SparseEntry::scaled(m + i, twice_cos)]))
        .collect();

    Ok(FormulaNode::Product(vec![
        SparseStep::new(two_n, butterfly)?
            .with_label(label.clone())
            .into(),
        SparseStep::new(two_n, twist)?.with_label(label).into(),
    ]))
}

/// Interleaves the outputs of the two skew halves into ascending zero order:
/// `[0, n, n+1, 1, 2, n+2, n+3, 3, 4, ..., n-1]`. Identity at size 2.
pub fn perm_p(two_n: usize) -> Result<Permutation> {
    let n = half_of_even(two_n)?;
    check_pow2(n)?;
    if two_n == 2 {
        return Ok(Permutation::identity(2).with_label("P2"));
    }
    let mut map = Vec::with_capacity(two_n);
    map.push(0);
    for i in 1..two_n {
        let (pair, within) = ((i - 1) / 2, (i - 1) % 2);
        map.push(if pair % 2 == 0 {
            n + pair + within
        } else {
            pair + within
        });
    }
    Ok(Permutation::new(map)?.with_label(format!("P{two_n}")))
}

/// The stride permutation `L(m, n)`: `y[i2·(n/m) + i1] = x[i1·m + i2]`.
pub fn stride_perm(m: usize, n: usize) -> Result<Permutation> {
    if m == 0 || !n.is_multiple_of(m) {
        return Err(Error::Domain(format!("stride {m} does not divide {n}")));
    }
    let q = n / m;
    let mut map = vec![0; n];
    for i2 in 0..m {
        for i1 in 0..q {
            map[i2 * q + i1] = i1 * m + i2;
        }
    }
    Ok(Permutation::new(map)?.with_label(format!("L({m},{n})")))
}

/// Unscaled skew DCT-4 of size `n` with parameter `r`.
pub fn build_dct4_bar(n: usize, r: Rational) -> Result<FormulaNode> {
    check_pow2(n)?;
    r.check_skew()?;
    if n == 1 {
        return Ok(FormulaNode::Identity(1));
    }
    let half = n / 2;
    Ok(FormulaNode::Product(vec![
        perm_p(n)?.into(),
        FormulaNode::DirectSum(vec![
            build_dct4_bar(half, r.halved())?,
            build_dct4_bar(half, r.reflected_half())?,
        ]),
        bb_c4(n, r)?,
    ]))
}

/// Unscaled DCT-2 of size `n`, the polynomial transform whose rows are
/// DCT-2 rows divided by `cos kπ/2n`.
pub fn build_dct2_bar(n: usize) -> Result<FormulaNode> {
    check_pow2(n)?;
    if n == 1 {
        return Ok(FormulaNode::Identity(1));
    }
    let half = n / 2;
    Ok(FormulaNode::Product(vec![
        stride_perm(half, n)?.into(),
        FormulaNode::DirectSum(vec![
            build_dct2_bar(half)?,
            build_dct4_bar(half, Rational::HALF)?,
        ]),
        b_c2(n)?.into(),
    ]))
}

/// DCT-2 of size `n`: the scaling diagonal `cos kπ/2n` after the unscaled
/// factorization.
pub fn build_dct2(n: usize) -> Result<FormulaNode> {
    check_pow2(n)?;
    let scale = Diagonal::new(scaling_diag(ScalingKind::C2, n))?.with_label(format!("D{n}"));
    Ok(FormulaNode::Product(vec![scale.into(), build_dct2_bar(n)?]))
}

/// Core multiplications of the size `2^k` unscaled DCT-2:
/// `sum_{p=1}^{k-1} p · 2^(p-1)`.
pub fn closed_form_core_mults(k: u32) -> u64 {
    (1..k).map(|p| u64::from(p) << (p - 1)).sum()
}

/// Additions of the size `2^k` DCT-2 (scaled or not):
/// `sum_{p=1}^{k-1} 3p · 2^(p-1) + 2^(k+1) - 2`.
pub fn closed_form_adds(k: u32) -> u64 {
    3 * closed_form_core_mults(k) + (1u64 << (k + 1)) - 2
}

/// Core and scaling operation counts of the size `2^k` DCT-2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountRow {
    pub n: usize,
    pub core_mults: u64,
    pub scaling_mults: u64,
    pub total_mults: u64,
    pub adds: u64,
}

impl CountRow {
    /// Counts the built factorizations structurally.
    pub fn measure(n: usize) -> Result<Self> {
        let core = build_dct2_bar(n)?.op_count();
        let total: OpCount = build_dct2(n)?.op_count();
        Ok(Self {
            n,
            core_mults: core.mults,
            scaling_mults: total.mults - core.mults,
            total_mults: total.mults,
            adds: total.adds,
        })
    }
}
