//! An incremental spreadsheet: every cell is an [`AVar`] holding its
//! compiled formula, so reading a cell recomputes only what changed.

mod formula;
mod repl;

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::rc::Rc;

pub use formula::{is_cell_name, parse_formula, BinOp, Formula};
pub use repl::{repl, Command, ReplMode};

use crate::error::{Error, Result};
use crate::{AVar, Engine, Scalar, Value};

type CellMap = Rc<RefCell<BTreeMap<String, AVar>>>;

pub struct Sheet<N> {
    engine: Engine<N>,
    cells: CellMap,
    baseline: u64,
}

impl<N: Scalar> Default for Sheet<N> {
    fn default() -> Self {
        Self::new()
    }
}

fn eval<N: Scalar>(engine: &mut Engine<N>, cells: &CellMap, f: &Formula<N>) -> Result<N> {
    match f {
        Formula::Num(n) => Ok(n.clone()),
        Formula::Cell(name) => {
            let var = cells.borrow().get(name).copied();
            let var = var.ok_or_else(|| Error::UnknownCell(name.clone()))?;
            var.get(engine)?.as_num()
        }
        Formula::Neg(inner) => Ok(N::zero() - eval(engine, cells, inner)?),
        Formula::Binary(op, l, r) => {
            let l = eval(engine, cells, l)?;
            let r = eval(engine, cells, r)?;
            op.apply(l, r)
        }
    }
}

impl<N: Scalar> Sheet<N> {
    pub fn new() -> Self {
        Sheet {
            engine: Engine::new(),
            cells: Rc::default(),
            baseline: 0,
        }
    }

    pub fn engine(&self) -> &Engine<N> {
        &self.engine
    }

    /// Defines or redefines a cell. Names are resolved when the cell is
    /// read, so forward references are fine.
    pub fn set(&mut self, name: &str, formula: Formula<N>) {
        let formula = Rc::new(formula);
        let cells = self.cells.clone();
        let expr = move |e: &mut Engine<N>| eval(e, &cells, &formula).map(Value::Num);
        let existing = self.cells.borrow().get(name).copied();
        match existing {
            Some(var) => var
                .set(&mut self.engine, expr)
                .expect("sheet cells are refs and are set outside computations"),
            None => {
                let var = AVar::new(&mut self.engine, expr);
                self.cells.borrow_mut().insert(name.to_owned(), var);
            }
        }
    }

    /// Parses `text` and defines the cell with it.
    pub fn set_text(&mut self, name: &str, text: &str) -> Result<()> {
        let formula = parse_formula(text)?;
        self.set(name, formula);
        Ok(())
    }

    pub fn get(&mut self, name: &str) -> Result<N> {
        let var = self.cells.borrow().get(name).copied();
        let var = var.ok_or_else(|| Error::UnknownCell(name.to_owned()))?;
        var.get(&mut self.engine)
            .and_then(|v| v.as_num())
            .map_err(|err| self.name_cycle(err))
    }

    fn name_cycle(&self, err: Error) -> Error {
        let Error::Cycle(id) = err else {
            return err;
        };
        self.cells
            .borrow()
            .iter()
            .find(|(_, var)| matches!(self.engine.peek(var.node()), Ok(Some(Value::NodeRef(t))) if t == id))
            .map_or(err, |(name, _)| Error::CellCycle(name.clone()))
    }

    /// Every cell with its cached value, or `None` if it would have to be
    /// recomputed. Runs nothing.
    pub fn cells(&self) -> Vec<(String, Option<N>)> {
        self.cells
            .borrow()
            .iter()
            .map(|(name, var)| {
                let cached = match var.peek(&self.engine) {
                    Ok(Some(Value::Num(n))) => Some(n),
                    _ => None,
                };
                (name.clone(), cached)
            })
            .collect()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.cells.borrow().contains_key(name)
    }

    /// Thunk executions since the previous call.
    pub fn take_recomputes(&mut self) -> u64 {
        let now = self.engine.recompute_count();
        let delta = now - self.baseline;
        self.baseline = now;
        delta
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sheet(defs: &[(&str, &str)]) -> Sheet<f64> {
        let mut s = Sheet::new();
        for (name, text) in defs {
            s.set_text(name, text).unwrap();
        }
        s
    }

    #[test]
    fn appendix_style_session() {
        let mut s = sheet(&[
            ("n1", "1"),
            ("n2", "2"),
            ("n3", "3"),
            ("p1", "n1 + n2"),
            ("p2", "p1 + n3"),
        ]);
        assert_eq!(s.get("p1").unwrap(), 3.0);
        assert_eq!(s.get("p2").unwrap(), 6.0);
        s.set_text("n1", "5").unwrap();
        assert_eq!(s.get("p1").unwrap(), 7.0);
        s.set_text("p2", "n3 + p1").unwrap();
        assert_eq!(s.get("p2").unwrap(), 10.0);
        s.set_text("p1", "4").unwrap();
        assert_eq!(s.get("p2").unwrap(), 7.0);
        s.set_text("p1", "n1 + n2").unwrap();
        assert_eq!(s.get("p2").unwrap(), 10.0);
        s.set_text("p1", "n1 * n2").unwrap();
        assert_eq!(s.get("p1").unwrap(), 10.0);
        assert_eq!(s.get("p2").unwrap(), 13.0);
    }

    #[test]
    fn recompute_counts_follow_the_change() {
        let mut s = sheet(&[
            ("n1", "1"),
            ("n2", "2"),
            ("n3", "3"),
            ("p1", "n1 + n2"),
            ("p2", "p1 + n3"),
        ]);
        s.get("p1").unwrap();
        s.get("p2").unwrap();
        s.take_recomputes();
        s.set_text("n1", "5").unwrap();
        assert_eq!(s.get("p1").unwrap(), 7.0);
        // p1's formula and n1's fresh constant
        assert_eq!(s.take_recomputes(), 2);
    }

    #[test]
    fn errors_surface_at_get() {
        let mut s = sheet(&[("a", "b + 1"), ("z", "1 / 0")]);
        assert_eq!(s.get("a"), Err(Error::UnknownCell("b".into())));
        assert_eq!(s.get("z"), Err(Error::DivisionByZero));
        assert_eq!(s.get("nope"), Err(Error::UnknownCell("nope".into())));
        s.set_text("b", "41").unwrap();
        assert_eq!(s.get("a").unwrap(), 42.0);
    }

    #[test]
    fn cycles_are_named_and_recoverable() {
        let mut s = sheet(&[("a", "a + 1"), ("b", "2")]);
        assert_eq!(s.get("a"), Err(Error::CellCycle("a".into())));
        assert_eq!(s.get("b").unwrap(), 2.0);
        assert!(!s.engine().is_computing());
        s.set_text("a", "b * 3").unwrap();
        assert_eq!(s.get("a").unwrap(), 6.0);
    }

    #[test]
    fn cells_lists_clean_values_only() {
        let mut s = sheet(&[("x", "1"), ("y", "x + 1")]);
        assert_eq!(s.cells(), vec![("x".into(), None), ("y".into(), None)]);
        s.get("y").unwrap();
        assert_eq!(
            s.cells(),
            vec![("x".into(), Some(1.0)), ("y".into(), Some(2.0))]
        );
        s.set_text("x", "5").unwrap();
        assert_eq!(s.cells(), vec![("x".into(), None), ("y".into(), None)]);
    }

    #[test]
    fn exact_arithmetic() {
        use num_rational::BigRational;
        let mut s: Sheet<BigRational> = Sheet::new();
        s.set_text("a", "1 / 3").unwrap();
        s.set_text("b", "a * 3").unwrap();
        assert_eq!(s.get("b").unwrap(), BigRational::from_integer(1.into()));
    }
}
