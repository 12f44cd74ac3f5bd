//! A small IR for structured linear transforms.
//!
//! A [`FormulaNode`] is a tree of sparse matrix factors: identities,
//! permutations, diagonals, explicit sparse steps, direct sums and products.
//! It can be applied to a vector, expanded to a dense matrix, and counted.
//!
//! Counting is structural. An entry is a trivial `±1` only if it was built
//! with [`SparseEntry::one`] or [`SparseEntry::minus_one`]; a coefficient that
//! merely rounds to `1.0` still costs a multiplication.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign};

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};

/// One nonzero coefficient of a sparse row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SparseEntry {
    col: usize,
    coeff: f64,
    trivial: bool,
}

impl SparseEntry {
    pub fn one(col: usize) -> Self {
        Self {
            col,
            coeff: 1.0,
            trivial: true,
        }
    }

    pub fn minus_one(col: usize) -> Self {
        Self {
            col,
            coeff: -1.0,
            trivial: true,
        }
    }

    /// A general coefficient. Always counted as a multiplication.
    pub fn scaled(col: usize, coeff: f64) -> Self {
        Self {
            col,
            coeff,
            trivial: false,
        }
    }

    pub fn col(&self) -> usize {
        self.col
    }

    pub fn coeff(&self) -> f64 {
        self.coeff
    }

    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    #[inline]
    pub(crate) fn weigh(&self, x: f64) -> f64 {
        if self.trivial {
            if self.coeff > 0.0 {
                x
            } else {
                -x
            }
        } else {
            self.coeff * x
        }
    }
}

/// An explicit sparse matrix, stored by rows.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseStep {
    rows: usize,
    cols: usize,
    row_entries: Vec<Vec<SparseEntry>>,
    label: Option<String>,
}

impl SparseStep {
    pub fn new(cols: usize, row_entries: Vec<Vec<SparseEntry>>) -> Result<Self> {
        let step = Self {
            rows: row_entries.len(),
            cols,
            row_entries,
            label: None,
        };
        step.validate()?;
        Ok(step)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_entries(&self) -> &[Vec<SparseEntry>] {
        &self.row_entries
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    fn validate(&self) -> Result<()> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::Dimension(format!(
                "sparse step must be nonempty, got {}x{}",
                self.rows, self.cols
            )));
        }
        for (row, entries) in self.row_entries.iter().enumerate() {
            if entries.is_empty() {
                return Err(Error::EmptyRow { row });
            }
            for (i, e) in entries.iter().enumerate() {
                if e.col >= self.cols {
                    return Err(Error::BadEntry {
                        row,
                        reason: format!("column {} >= {}", e.col, self.cols),
                    });
                }
                if e.coeff == 0.0 || !e.coeff.is_finite() {
                    return Err(Error::BadEntry {
                        row,
                        reason: format!("coefficient {} at column {}", e.coeff, e.col),
                    });
                }
                if entries[..i].iter().any(|o| o.col == e.col) {
                    return Err(Error::BadEntry {
                        row,
                        reason: format!("duplicate column {}", e.col),
                    });
                }
            }
        }
        Ok(())
    }
}

/// A permutation `y[i] = x[map[i]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    map: Vec<usize>,
    label: Option<String>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let p = Self { map, label: None };
        p.validate()?;
        Ok(p)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            map: (0..n).collect(),
            label: None,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// The permutation applying `rhs` first, then `self`.
    pub fn compose(&self, rhs: &Permutation) -> Result<Permutation> {
        if self.len() != rhs.len() {
            return Err(Error::Dimension(format!(
                "cannot compose permutations of sizes {} and {}",
                self.len(),
                rhs.len()
            )));
        }
        Permutation::new(self.map.iter().map(|&i| rhs.map[i]).collect())
    }

    fn validate(&self) -> Result<()> {
        if self.map.is_empty() {
            return Err(Error::NotBijective("empty map".into()));
        }
        let mut seen = vec![false; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            if j >= seen.len() || seen[j] {
                return Err(Error::NotBijective(format!("output {i} reads input {j}")));
            }
            seen[j] = true;
        }
        Ok(())
    }
}

/// A diagonal scaling.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagonal {
    values: Vec<f64>,
    label: Option<String>,
}

impl Diagonal {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        let d = Self {
            values,
            label: None,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(Error::Dimension("empty diagonal".into()));
        }
        if let Some(v) = self.values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("non-finite diagonal entry {v}")));
        }
        Ok(())
    }
}

/// Whether a diagonal value costs a multiplication.
pub(crate) fn is_unit(v: f64) -> bool {
    v == 1.0 || v == -1.0
}

/// A linear transform as a composition of sparse factors.
#[derive(Debug, Clone, PartialEq)]
pub enum FormulaNode {
    Identity(usize),
    Permutation(Permutation),
    Diagonal(Diagonal),
    Sparse(SparseStep),
    /// Block-diagonal composition.
    DirectSum(Vec<FormulaNode>),
    /// Matrix product; children apply right to left.
    Product(Vec<FormulaNode>),
}

/// Nontrivial multiplications and additions; subtractions count as additions.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct OpCount {
    pub mults: u64,
    pub adds: u64,
}

impl OpCount {
    pub const ZERO: OpCount = OpCount { mults: 0, adds: 0 };

    pub fn new(mults: u64, adds: u64) -> Self {
        Self { mults, adds }
    }
}

impl Add for OpCount {
    type Output = OpCount;

    fn add(self, rhs: OpCount) -> OpCount {
        OpCount {
            mults: self.mults + rhs.mults,
            adds: self.adds + rhs.adds,
        }
    }
}

impl AddAssign for OpCount {
    fn add_assign(&mut self, rhs: OpCount) {
        *self = *self + rhs;
    }
}

impl Sum for OpCount {
    fn sum<I: Iterator<Item = OpCount>>(iter: I) -> Self {
        iter.fold(OpCount::ZERO, Add::add)
    }
}

impl fmt::Display for OpCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mults, {} adds", self.mults, self.adds)
    }
}

impl FormulaNode {
    pub fn identity(n: usize) -> Self {
        FormulaNode::Identity(n)
    }

    /// Checks the whole tree and returns `(rows, cols)`.
    pub fn validate(&self) -> Result<(usize, usize)> {
        match self {
            FormulaNode::Identity(n) => {
                if *n == 0 {
                    Err(Error::Dimension("identity of size 0".into()))
                } else {
                    Ok((*n, *n))
                }
            }
            FormulaNode::Permutation(p) => {
                p.validate()?;
                Ok((p.len(), p.len()))
            }
            FormulaNode::Diagonal(d) => {
                d.validate()?;
                Ok((d.values.len(), d.values.len()))
            }
            FormulaNode::Sparse(s) => {
                s.validate()?;
                Ok((s.rows, s.cols))
            }
            FormulaNode::DirectSum(children) => {
                if children.is_empty() {
                    return Err(Error::Dimension("empty direct sum".into()));
                }
                children.iter().try_fold((0, 0), |(r, c), child| {
                    let (cr, cc) = child.validate()?;
                    Ok((r + cr, c + cc))
                })
            }
            FormulaNode::Product(children) => {
                let (first, rest) = children
                    .split_first()
                    .ok_or_else(|| Error::Dimension("empty product".into()))?;
                let (rows, mut inner) = first.validate()?;
                for child in rest {
                    let (cr, cc) = child.validate()?;
                    if cr != inner {
                        return Err(Error::Dimension(format!(
                            "product factor has {inner} columns but next factor has {cr} rows: {inner} != {cr}"
                        )));
                    }
                    inner = cc;
                }
                Ok((rows, inner))
            }
        }
    }

    /// `(rows, cols)` of a node already known to be valid.
    pub(crate) fn dims(&self) -> (usize, usize) {
        match self {
            FormulaNode::Identity(n) => (*n, *n),
            FormulaNode::Permutation(p) => (p.len(), p.len()),
            FormulaNode::Diagonal(d) => (d.values.len(), d.values.len()),
            FormulaNode::Sparse(s) => (s.rows, s.cols),
            FormulaNode::DirectSum(children) => children
                .iter()
                .map(FormulaNode::dims)
                .fold((0, 0), |(r, c), (cr, cc)| (r + cr, c + cc)),
            FormulaNode::Product(children) => {
                let rows = children.first().map_or(0, |c| c.dims().0);
                let cols = children.last().map_or(0, |c| c.dims().1);
                (rows, cols)
            }
        }
    }

    /// Computes `y = T x`.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        let (_, cols) = self.validate()?;
        if x.len() != cols {
            return Err(Error::Length {
                expected: cols,
                got: x.len(),
            });
        }
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &[f64]) -> Vec<f64> {
        match self {
            FormulaNode::Identity(_) => x.to_vec(),
            FormulaNode::Permutation(p) => p.map.iter().map(|&j| x[j]).collect(),
            FormulaNode::Diagonal(d) => d.values.iter().zip(x).map(|(v, xi)| v * xi).collect(),
            FormulaNode::Sparse(s) => s
                .row_entries
                .iter()
                .map(|row| {
                    let mut it = row.iter();
                    let first = it.next().expect("validated row");
                    it.fold(first.weigh(x[first.col]), |acc, e| {
                        if e.trivial && e.coeff < 0.0 {
                            acc - x[e.col]
                        } else {
                            acc + e.weigh(x[e.col])
                        }
                    })
                })
                .collect(),
            FormulaNode::DirectSum(children) => {
                let mut out = Vec::with_capacity(x.len());
                let mut offset = 0;
                for child in children {
                    let cols = child.dims().1;
                    out.extend(child.apply_unchecked(&x[offset..offset + cols]));
                    offset += cols;
                }
                out
            }
            FormulaNode::Product(children) => children
                .iter()
                .rev()
                .fold(x.to_vec(), |v, child| child.apply_unchecked(&v)),
        }
    }

    /// Expands the transform column by column.
    pub fn to_dense(&self) -> Result<DenseMatrix> {
        let (rows, cols) = self.validate()?;
        let mut m = DenseMatrix::zeros(rows, cols);
        let mut e = vec![0.0; cols];
        for j in 0..cols {
            e[j] = 1.0;
            for (i, v) in self.apply_unchecked(&e).into_iter().enumerate() {
                m.set(i, j, v);
            }
            e[j] = 0.0;
        }
        Ok(m)
    }

    /// Counts nontrivial multiplications and additions.
    pub fn op_count(&self) -> OpCount {
        match self {
            FormulaNode::Identity(_) | FormulaNode::Permutation(_) => OpCount::ZERO,
            FormulaNode::Diagonal(d) => {
                OpCount::new(d.values.iter().filter(|&&v| !is_unit(v)).count() as u64, 0)
            }
            FormulaNode::Sparse(s) => s
                .row_entries
                .iter()
                .map(|row| {
                    OpCount::new(
                        row.iter().filter(|e| !e.trivial).count() as u64,
                        row.len() as u64 - 1,
                    )
                })
                .sum(),
            FormulaNode::DirectSum(children) | FormulaNode::Product(children) => {
                children.iter().map(FormulaNode::op_count).sum()
            }
        }
    }

    /// Whether `needle` occurs verbatim as a subtree (including `self`).
    pub fn contains_subtree(&self, needle: &FormulaNode) -> bool {
        if self == needle {
            return true;
        }
        match self {
            FormulaNode::DirectSum(children) | FormulaNode::Product(children) => {
                children.iter().any(|c| c.contains_subtree(needle))
            }
            _ => false,
        }
    }
}

impl From<SparseStep> for FormulaNode {
    fn from(s: SparseStep) -> Self {
        FormulaNode::Sparse(s)
    }
}

impl From<Permutation> for FormulaNode {
    fn from(p: Permutation) -> Self {
        FormulaNode::Permutation(p)
    }
}

impl From<Diagonal> for FormulaNode {
    fn from(d: Diagonal) -> Self {
        FormulaNode::Diagonal(d)
    }
}
