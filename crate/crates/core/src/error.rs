use thiserror::Error;

use crate::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown node {0}")]
    UnknownNode(NodeId),

    #[error("node {0} is a thunk, only refs can be set")]
    NotARef(NodeId),

    #[error("cycle: node {0} was demanded while it was being computed")]
    Cycle(NodeId),

    #[error("node {0} cannot be set while a computation is running")]
    SetDuringComputation(NodeId),

    #[error("node {0} does not hold a suspended expression")]
    NotAnAVar(NodeId),

    #[error("memo table belongs to a different engine")]
    EngineMismatch,

    #[error("expected {expected}, found {found}")]
    Type {
        expected: &'static str,
        found: String,
    },

    #[error("unknown cell `{0}`")]
    UnknownCell(String),

    #[error("cycle: cell `{0}` depends on itself")]
    CellCycle(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },

    /// Raised by user computations.
    #[error("{0}")]
    Eval(String),
}
