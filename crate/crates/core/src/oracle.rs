//! From-scratch reference evaluation for checking the engine.
//!
//! [`SpecGraph`] mirrors a sheet's definitions with no caching at all;
//! [`oracle_eval`] recomputes a cell by walking formulas recursively.
//! [`random_trace`] produces acyclic command sequences and
//! [`check_trace`] replays one against both a [`Sheet`] and the oracle.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::sheet::{BinOp, Command, Formula, Sheet};
use crate::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub enum Definition<N> {
    Const(N),
    Expr(Formula<N>),
}

#[derive(Debug, Clone)]
pub struct SpecGraph<N> {
    cells: BTreeMap<String, Definition<N>>,
}

impl<N: Scalar> Default for SpecGraph<N> {
    fn default() -> Self {
        Self::new()
    }
}

impl<N: Scalar> SpecGraph<N> {
    pub fn new() -> Self {
        SpecGraph {
            cells: BTreeMap::new(),
        }
    }

    pub fn define(&mut self, name: &str, formula: Formula<N>) {
        let def = match formula {
            Formula::Num(n) => Definition::Const(n),
            other => Definition::Expr(other),
        };
        self.cells.insert(name.to_owned(), def);
    }

    pub fn apply(&mut self, cmd: &Command<N>) {
        if let Command::Set(name, formula) = cmd {
            self.define(name, formula.clone());
        }
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.cells.keys().map(String::as_str)
    }
}

/// Evaluates `name` from scratch.
pub fn oracle_eval<N: Scalar>(graph: &SpecGraph<N>, name: &str) -> Result<N> {
    let mut visiting = BTreeSet::new();
    eval_cell(graph, name, &mut visiting)
}

fn eval_cell<N: Scalar>(
    graph: &SpecGraph<N>,
    name: &str,
    visiting: &mut BTreeSet<String>,
) -> Result<N> {
    let def = graph
        .cells
        .get(name)
        .ok_or_else(|| Error::UnknownCell(name.to_owned()))?;
    if !visiting.insert(name.to_owned()) {
        return Err(Error::CellCycle(name.to_owned()));
    }
    let out = match def {
        Definition::Const(n) => Ok(n.clone()),
        Definition::Expr(f) => eval_formula(graph, f, visiting),
    };
    visiting.remove(name);
    out
}

fn eval_formula<N: Scalar>(
    graph: &SpecGraph<N>,
    f: &Formula<N>,
    visiting: &mut BTreeSet<String>,
) -> Result<N> {
    match f {
        Formula::Num(n) => Ok(n.clone()),
        Formula::Cell(name) => eval_cell(graph, name, visiting),
        Formula::Neg(inner) => Ok(N::zero() - eval_formula(graph, inner, visiting)?),
        Formula::Binary(op, l, r) => {
            let a = eval_formula(graph, l, visiting)?;
            let b = eval_formula(graph, r, visiting)?;
            match op {
                BinOp::Add => Ok(a + b),
                BinOp::Sub => Ok(a - b),
                BinOp::Mul => Ok(a * b),
                BinOp::Div if b.is_zero() => Err(Error::DivisionByZero),
                BinOp::Div => Ok(a / b),
            }
        }
    }
}

pub fn cell_name(index: usize) -> String {
    format!("c{index}")
}

fn random_constant<N: Scalar>(rng: &mut ChaCha8Rng) -> Formula<N> {
    Formula::Num(N::from_u32(rng.gen_range(0..10)).expect("small integers are representable"))
}

fn random_operand<N: Scalar>(rng: &mut ChaCha8Rng, below: usize) -> Formula<N> {
    if below > 0 && rng.gen_bool(0.7) {
        Formula::Cell(cell_name(rng.gen_range(0..below)))
    } else {
        random_constant(rng)
    }
}

fn random_formula<N: Scalar>(rng: &mut ChaCha8Rng, index: usize) -> Formula<N> {
    if index == 0 || rng.gen_bool(0.25) {
        return random_constant(rng);
    }
    let op = match rng.gen_range(0..8) {
        0..=2 => BinOp::Add,
        3..=4 => BinOp::Sub,
        5..=6 => BinOp::Mul,
        _ => BinOp::Div,
    };
    let lhs = random_operand(rng, index);
    let rhs = random_operand(rng, index);
    let f = Formula::binary(op, lhs, rhs);
    if rng.gen_bool(0.1) {
        Formula::Neg(Box::new(f))
    } else {
        f
    }
}

/// A seeded sequence of `set`/`get` commands over cells `c0..c{n_cells-1}`.
///
/// Cells are first defined in index order, and a formula for cell `i`
/// only mentions cells below `i`, so every trace is acyclic and never
/// reads an undefined cell.
pub fn random_trace<N: Scalar>(seed: u64, n_cells: usize, n_ops: usize) -> Vec<Command<N>> {
    assert!(n_cells >= 1, "a trace needs at least one cell");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut defined = 0;
    let mut trace = Vec::with_capacity(n_ops);
    for _ in 0..n_ops {
        let cmd = if defined < n_cells && (defined == 0 || rng.gen_bool(0.5)) {
            defined += 1;
            Command::Set(
                cell_name(defined - 1),
                random_formula(&mut rng, defined - 1),
            )
        } else if rng.gen_bool(0.45) {
            let i = rng.gen_range(0..defined);
            Command::Set(cell_name(i), random_formula(&mut rng, i))
        } else {
            Command::Get(cell_name(rng.gen_range(0..defined)))
        };
        trace.push(cmd);
    }
    trace
}

/// A `get` whose engine and oracle answers differ.
#[derive(Debug, Clone, PartialEq)]
pub struct Divergence<N> {
    pub step: usize,
    pub cell: String,
    pub engine: Result<N>,
    pub oracle: Result<N>,
}

fn same<N: Scalar>(a: &Result<N>, b: &Result<N>) -> bool {
    match (a, b) {
        (Ok(x), Ok(y)) => x.key_eq(y),
        (Err(x), Err(y)) => x == y,
        _ => false,
    }
}

/// Replays `trace` on a fresh sheet and on the oracle, comparing every
/// `get`. Returns the number of gets checked.
pub fn check_trace<N: Scalar>(
    trace: &[Command<N>],
) -> std::result::Result<usize, Box<Divergence<N>>> {
    let mut sheet = Sheet::new();
    let mut graph = SpecGraph::new();
    let mut gets = 0;
    for (step, cmd) in trace.iter().enumerate() {
        match cmd {
            Command::Set(name, formula) => {
                sheet.set(name, formula.clone());
                graph.apply(cmd);
            }
            Command::Get(name) => {
                gets += 1;
                let engine = sheet.get(name);
                let oracle = oracle_eval(&graph, name);
                if !same(&engine, &oracle) {
                    return Err(Box::new(Divergence {
                        step,
                        cell: name.clone(),
                        engine,
                        oracle,
                    }));
                }
            }
            Command::Cells | Command::Stats | Command::Quit => {}
        }
    }
    Ok(gets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sheet::parse_formula;

    fn graph(defs: &[(&str, &str)]) -> SpecGraph<f64> {
        let mut g = SpecGraph::new();
        for (name, text) in defs {
            g.define(name, parse_formula(text).unwrap());
        }
        g
    }

    #[test]
    fn constants_and_sums() {
        let g = graph(&[
            ("n1", "1"),
            ("n2", "2"),
            ("n3", "3"),
            ("p1", "n1 + n2"),
            ("p2", "p1 + n3"),
        ]);
        assert_eq!(oracle_eval(&g, "n3").unwrap(), 3.0);
        assert_eq!(oracle_eval(&g, "p2").unwrap(), 6.0);
    }

    #[test]
    fn oracle_errors() {
        let g = graph(&[("a", "b + 1"), ("c", "c"), ("d", "1 / (2 - 2)")]);
        assert_eq!(oracle_eval(&g, "a"), Err(Error::UnknownCell("b".into())));
        assert_eq!(oracle_eval(&g, "c"), Err(Error::CellCycle("c".into())));
        assert_eq!(oracle_eval(&g, "d"), Err(Error::DivisionByZero));
    }

    #[test]
    fn hand_computed_three_cells() {
        let defs = [("x", "4"), ("y", "x * x - 1"), ("z", "(y + x) / 2")];
        let g = graph(&defs);
        let mut s: Sheet<f64> = Sheet::new();
        for (name, text) in defs {
            s.set_text(name, text).unwrap();
        }
        assert_eq!(oracle_eval(&g, "z").unwrap(), 9.5);
        assert_eq!(s.get("z").unwrap(), 9.5);
        assert_eq!(oracle_eval(&g, "y").unwrap(), s.get("y").unwrap());
    }

    #[test]
    fn traces_are_deterministic_and_acyclic() {
        let a: Vec<Command<f64>> = random_trace(7, 5, 200);
        let b: Vec<Command<f64>> = random_trace(7, 5, 200);
        assert_eq!(a, b);
        let mut defined = BTreeSet::new();
        for cmd in &a {
            match cmd {
                Command::Set(name, f) => {
                    let idx: usize = name[1..].parse().unwrap();
                    for r in f.references() {
                        let j: usize = r[1..].parse().unwrap();
                        assert!(j < idx, "{cmd}");
                        assert!(defined.contains(r), "{cmd}");
                    }
                    defined.insert(name.clone());
                }
                Command::Get(name) => assert!(defined.contains(name)),
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn a_long_trace_matches() {
        let trace: Vec<Command<f64>> = random_trace(11, 20, 1000);
        let gets = check_trace(&trace).unwrap();
        assert!(gets > 100);
    }
}
