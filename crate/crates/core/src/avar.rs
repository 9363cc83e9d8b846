//! Variables that stand for expressions rather than values.
//!
//! An [`AVar`] is a ref whose content is a suspended expression. Reading
//! it evaluates the current expression; assigning it swaps the expression,
//! so anything computed from the variable follows the new definition.

use crate::error::{Error, Result};
use crate::{Engine, NodeId, Scalar, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AVar {
    cell: NodeId,
}

impl AVar {
    pub fn new<N, F>(engine: &mut Engine<N>, expr: F) -> AVar
    where
        N: Scalar,
        F: Fn(&mut Engine<N>) -> Result<Value<N>> + 'static,
    {
        let thunk = engine.suspend(expr);
        AVar {
            cell: engine.make_ref(thunk.into()),
        }
    }

    /// The underlying ref. Use it as a `Value::NodeRef` to embed the
    /// variable in data.
    pub fn node(self) -> NodeId {
        self.cell
    }

    /// The cached value, if both the ref and its current expression are
    /// clean. Runs nothing.
    pub fn peek<N: Scalar>(self, engine: &Engine<N>) -> Result<Option<Value<N>>> {
        match engine.peek(self.cell)? {
            Some(Value::NodeRef(thunk)) => engine.peek(thunk),
            Some(_) => Err(Error::NotAnAVar(self.cell)),
            None => Ok(None),
        }
    }

    /// Evaluates the current expression: force the ref to find the thunk,
    /// then force the thunk.
    pub fn get<N: Scalar>(self, engine: &mut Engine<N>) -> Result<Value<N>> {
        match engine.force(self.cell)? {
            Value::NodeRef(thunk) => engine.force(thunk),
            _ => Err(Error::NotAnAVar(self.cell)),
        }
    }

    /// Replaces the expression. Nothing is evaluated until the next read.
    pub fn set<N, F>(self, engine: &mut Engine<N>, expr: F) -> Result<()>
    where
        N: Scalar,
        F: Fn(&mut Engine<N>) -> Result<Value<N>> + 'static,
    {
        let thunk = engine.suspend(expr);
        engine.ref_set(self.cell, thunk.into())
    }
}

impl<N> From<AVar> for Value<N> {
    fn from(v: AVar) -> Self {
        Value::NodeRef(v.cell)
    }
}
