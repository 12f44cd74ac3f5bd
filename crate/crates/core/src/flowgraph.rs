//! Lowering of a [`FormulaNode`] to a straight-line program of weighted sums,
//! plus DOT and plain-text renderings of the resulting flow graph.
//!
//! Permutations and identities lower to renaming only. Every sparse row with
//! more than two terms is split into binary sums, left to right, so each
//! instruction holds one or two terms and the instruction count matches the
//! operation count of the node exactly.

use std::fmt::{self, Write as _};

use crate::error::Result;
use crate::formula::{is_unit, FormulaNode, OpCount, SparseEntry};

/// A value in the program: an input or the result of an instruction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Operand {
    Input(usize),
    Temp(usize),
}

impl fmt::Display for Operand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operand::Input(i) => write!(f, "x{i}"),
            Operand::Temp(t) => write!(f, "t{t}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub src: Operand,
    pub coeff: f64,
    pub trivial: bool,
}

impl Term {
    fn unit(src: Operand) -> Self {
        Self {
            src,
            coeff: 1.0,
            trivial: true,
        }
    }

    fn from_entry(src: Operand, e: &SparseEntry) -> Self {
        Self {
            src,
            coeff: e.coeff(),
            trivial: e.is_trivial(),
        }
    }

    fn is_subtraction(&self) -> bool {
        self.trivial && self.coeff < 0.0
    }
}

/// `t<dst> = sum of terms`.
#[derive(Debug, Clone, PartialEq)]
pub struct Instruction {
    pub dst: usize,
    pub terms: Vec<Term>,
}

/// A contiguous range of instructions produced by one labeled factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage {
    pub label: String,
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StraightLineProgram {
    n_inputs: usize,
    instructions: Vec<Instruction>,
    outputs: Vec<Operand>,
    stages: Vec<Stage>,
}

/// Lowering switches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LowerOptions {
    /// When false, diagonal factors lower to renaming, which drops the
    /// output scaling stage of a DCT-2.
    pub include_scaling: bool,
}

impl Default for LowerOptions {
    fn default() -> Self {
        Self {
            include_scaling: true,
        }
    }
}

pub fn lower(node: &FormulaNode) -> Result<StraightLineProgram> {
    lower_with(node, LowerOptions::default())
}

pub fn lower_with(node: &FormulaNode, opts: LowerOptions) -> Result<StraightLineProgram> {
    let (_, cols) = node.validate()?;
    let mut b = Builder {
        opts,
        instructions: Vec::new(),
        stages: Vec::new(),
    };
    let inputs: Vec<Operand> = (0..cols).map(Operand::Input).collect();
    let outputs = b.lower(node, &inputs);
    Ok(StraightLineProgram {
        n_inputs: cols,
        instructions: b.instructions,
        outputs,
        stages: b.stages,
    })
}

struct Builder {
    opts: LowerOptions,
    instructions: Vec<Instruction>,
    stages: Vec<Stage>,
}

impl Builder {
    fn emit(&mut self, terms: Vec<Term>) -> Operand {
        let dst = self.instructions.len();
        self.instructions.push(Instruction { dst, terms });
        Operand::Temp(dst)
    }

    fn mark_stage(&mut self, label: Option<&str>, start: usize) {
        let end = self.instructions.len();
        let Some(label) = label else { return };
        if start == end {
            return;
        }
        if let Some(last) = self.stages.last_mut() {
            if last.label == label && last.end == start {
                last.end = end;
                return;
            }
        }
        self.stages.push(Stage {
            label: label.to_string(),
            start,
            end,
        });
    }

    fn lower(&mut self, node: &FormulaNode, x: &[Operand]) -> Vec<Operand> {
        match node {
            FormulaNode::Identity(_) => x.to_vec(),
            FormulaNode::Permutation(p) => p.map().iter().map(|&j| x[j]).collect(),
            FormulaNode::Diagonal(d) => {
                if !self.opts.include_scaling {
                    return x.to_vec();
                }
                let start = self.instructions.len();
                let out = d
                    .values()
                    .iter()
                    .zip(x)
                    .map(|(&v, &src)| {
                        if v == 1.0 {
                            src
                        } else {
                            self.emit(vec![Term {
                                src,
                                coeff: v,
                                trivial: is_unit(v),
                            }])
                        }
                    })
                    .collect();
                self.mark_stage(d.label(), start);
                out
            }
            FormulaNode::Sparse(s) => {
                let start = self.instructions.len();
                let out = s
                    .row_entries()
                    .iter()
                    .map(|row| self.lower_row(row, x))
                    .collect();
                self.mark_stage(s.label(), start);
                out
            }
            FormulaNode::DirectSum(children) => {
                let mut out = Vec::with_capacity(x.len());
                let mut offset = 0;
                for child in children {
                    let cols = child.dims().1;
                    out.extend(self.lower(child, &x[offset..offset + cols]));
                    offset += cols;
                }
                out
            }
            FormulaNode::Product(children) => children
                .iter()
                .rev()
                .fold(x.to_vec(), |v, child| self.lower(child, &v)),
        }
    }

    fn lower_row(&mut self, row: &[SparseEntry], x: &[Operand]) -> Operand {
        let terms: Vec<Term> = row
            .iter()
            .map(|e| Term::from_entry(x[e.col()], e))
            .collect();
        if let [only] = terms.as_slice() {
            if only.trivial && only.coeff > 0.0 {
                return only.src;
            }
            return self.emit(terms);
        }
        let mut acc = self.emit(terms[..2].to_vec());
        for t in &terms[2..] {
            acc = self.emit(vec![Term::unit(acc), *t]);
        }
        acc
    }
}

impl StraightLineProgram {
    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.instructions
    }

    pub fn outputs(&self) -> &[Operand] {
        &self.outputs
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    /// Runs the program. Panics if `x` has the wrong length.
    pub fn execute(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n_inputs, "input length");
        let mut temps = Vec::with_capacity(self.instructions.len());
        let read = |temps: &[f64], op: Operand| match op {
            Operand::Input(i) => x[i],
            Operand::Temp(t) => temps[t],
        };
        for ins in &self.instructions {
            let (first, rest) = ins.terms.split_first().expect("nonempty instruction");
            let mut acc = weigh(first, read(&temps, first.src));
            for t in rest {
                let v = read(&temps, t.src);
                if t.is_subtraction() {
                    acc -= v;
                } else {
                    acc += weigh(t, v);
                }
            }
            temps.push(acc);
        }
        self.outputs.iter().map(|&op| read(&temps, op)).collect()
    }

    /// Operation count read off the instructions: one multiplication per
    /// nontrivial term, `terms - 1` additions per instruction.
    pub fn op_count(&self) -> OpCount {
        self.instructions
            .iter()
            .map(|ins| {
                OpCount::new(
                    ins.terms.iter().filter(|t| !t.trivial).count() as u64,
                    ins.terms.len() as u64 - 1,
                )
            })
            .sum()
    }

    fn stage_of(&self) -> Vec<Option<usize>> {
        let mut owner = vec![None; self.instructions.len()];
        for (s, stage) in self.stages.iter().enumerate() {
            for slot in &mut owner[stage.start..stage.end] {
                *slot = Some(s);
            }
        }
        owner
    }
}

fn weigh(t: &Term, v: f64) -> f64 {
    if t.trivial {
        if t.coeff > 0.0 {
            v
        } else {
            -v
        }
    } else {
        t.coeff * v
    }
}

/// Six significant digits, trailing zeros trimmed.
fn sig6(v: f64) -> String {
    let s = format!("{v:.5e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        let fixed = format!("{v:.decimals$}");
        if fixed.contains('.') {
            fixed
                .trim_end_matches('0')
                .trim_end_matches('.')
                .to_string()
        } else {
            fixed
        }
    } else {
        let mantissa = if mantissa.contains('.') {
            mantissa.trim_end_matches('0').trim_end_matches('.')
        } else {
            mantissa
        };
        format!("{mantissa}e{exp}")
    }
}

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Renders the program as a Graphviz digraph. Inputs, instructions and
/// outputs each get one node; edges carrying a nontrivial coefficient are
/// labeled with it, subtractions are dashed, output taps are dotted.
pub fn emit_dot(prog: &StraightLineProgram) -> String {
    let mut s = String::new();
    let w = &mut s;
    writeln!(w, "digraph flowgraph {{").unwrap();
    writeln!(w, "  rankdir=LR;").unwrap();
    writeln!(w, "  node [shape=circle, fontsize=10];").unwrap();

    writeln!(w, "  subgraph cluster_inputs {{").unwrap();
    writeln!(w, "    label=\"inputs\";").unwrap();
    for i in 0..prog.n_inputs {
        writeln!(w, "    x{i} [shape=box, label=\"x{i}\"];").unwrap();
    }
    writeln!(w, "  }}").unwrap();

    let owner = prog.stage_of();
    let node_line = |ins: &Instruction| {
        let op = if ins.terms.len() > 1 { "+" } else { "*" };
        format!("t{} [label=\"{op}\"];", ins.dst)
    };
    for (s_idx, stage) in prog.stages.iter().enumerate() {
        writeln!(w, "  subgraph cluster_{s_idx} {{").unwrap();
        writeln!(w, "    label=\"{}\";", escape(&stage.label)).unwrap();
        for ins in &prog.instructions[stage.start..stage.end] {
            writeln!(w, "    {}", node_line(ins)).unwrap();
        }
        writeln!(w, "  }}").unwrap();
    }
    for (ins, o) in prog.instructions.iter().zip(&owner) {
        if o.is_none() {
            writeln!(w, "  {}", node_line(ins)).unwrap();
        }
    }

    writeln!(w, "  subgraph cluster_outputs {{").unwrap();
    writeln!(w, "    label=\"outputs\";").unwrap();
    for k in 0..prog.outputs.len() {
        writeln!(w, "    y{k} [shape=box, label=\"y{k}\"];").unwrap();
    }
    writeln!(w, "  }}").unwrap();

    for ins in &prog.instructions {
        for t in &ins.terms {
            let attrs = if !t.trivial {
                format!(" [label=\"{}\"]", sig6(t.coeff))
            } else if t.coeff < 0.0 {
                " [style=dashed]".to_string()
            } else {
                String::new()
            };
            writeln!(w, "  {} -> t{}{attrs};", t.src, ins.dst).unwrap();
        }
    }
    for (k, src) in prog.outputs.iter().enumerate() {
        writeln!(w, "  {src} -> y{k} [style=dotted, arrowhead=none];").unwrap();
    }
    writeln!(w, "}}").unwrap();
    s
}

/// One line per instruction, `t<k> = <terms>`, followed by one
/// `y<k> = <value>` line per output. Coefficients are printed in shortest
/// round-trip form.
pub fn emit_listing(prog: &StraightLineProgram) -> String {
    let mut s = String::new();
    for ins in &prog.instructions {
        write!(s, "t{} =", ins.dst).unwrap();
        for (i, t) in ins.terms.iter().enumerate() {
            let neg = t.coeff < 0.0;
            let sign = match (i, neg) {
                (0, false) => " ",
                (0, true) => " -",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            s.push_str(sign);
            if !t.trivial {
                write!(s, "{}*", t.coeff.abs()).unwrap();
            }
            write!(s, "{}", t.src).unwrap();
        }
        s.push('\n');
    }
    for (k, src) in prog.outputs.iter().enumerate() {
        writeln!(s, "y{k} = {src}").unwrap();
    }
    s
}

impl fmt::Display for StraightLineProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&emit_listing(self))
    }
}
