//! Dynamic values flowing through computations.

use std::cell::RefCell;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::{NodeId, Scalar};

/// A tagged dynamic value.
///
/// Pairs are shared, mutable cells in the style of Lisp conses: cloning a
/// `Value::Pair` aliases the same cell, and [`Pair::set_car`] /
/// [`Pair::set_cdr`] are visible through every alias. Mutating a pair
/// bypasses the engine entirely, so nothing depending on it is dirtied.
#[derive(Clone)]
pub enum Value<N> {
    Num(N),
    Bool(bool),
    Sym(Rc<str>),
    Pair(Pair<N>),
    Nil,
    NodeRef(NodeId),
}

#[derive(Clone)]
pub struct Pair<N>(Rc<RefCell<(Value<N>, Value<N>)>>);

impl<N: Scalar> Pair<N> {
    pub fn new(car: Value<N>, cdr: Value<N>) -> Self {
        Pair(Rc::new(RefCell::new((car, cdr))))
    }

    pub fn car(&self) -> Value<N> {
        self.0.borrow().0.clone()
    }

    pub fn cdr(&self) -> Value<N> {
        self.0.borrow().1.clone()
    }

    pub fn set_car(&self, v: Value<N>) {
        self.0.borrow_mut().0 = v;
    }

    pub fn set_cdr(&self, v: Value<N>) {
        self.0.borrow_mut().1 = v;
    }

    /// Whether both handles alias the same cell.
    pub fn ptr_eq(&self, other: &Pair<N>) -> bool {
        Rc::ptr_eq(&self.0, &other.0)
    }
}

impl<N: Scalar> Value<N> {
    pub fn num(n: N) -> Self {
        Value::Num(n)
    }

    pub fn sym(name: &str) -> Self {
        Value::Sym(Rc::from(name))
    }

    pub fn cons(car: Value<N>, cdr: Value<N>) -> Self {
        Value::Pair(Pair::new(car, cdr))
    }

    /// Builds a proper list terminated by `Nil`.
    pub fn list<I>(items: I) -> Self
    where
        I: IntoIterator<Item = Value<N>>,
        I::IntoIter: DoubleEndedIterator,
    {
        items
            .into_iter()
            .rev()
            .fold(Value::Nil, |tail, head| Value::cons(head, tail))
    }

    pub fn is_pair(&self) -> bool {
        matches!(self, Value::Pair(_))
    }

    pub fn as_num(&self) -> Result<N> {
        match self {
            Value::Num(n) => Ok(n.clone()),
            other => Err(other.type_error("a number")),
        }
    }

    pub fn as_node(&self) -> Option<NodeId> {
        match self {
            Value::NodeRef(id) => Some(*id),
            _ => None,
        }
    }

    pub fn as_pair(&self) -> Option<&Pair<N>> {
        match self {
            Value::Pair(p) => Some(p),
            _ => None,
        }
    }

    pub fn car(&self) -> Result<Value<N>> {
        self.as_pair()
            .map(Pair::car)
            .ok_or_else(|| self.type_error("a pair"))
    }

    pub fn cdr(&self) -> Result<Value<N>> {
        self.as_pair()
            .map(Pair::cdr)
            .ok_or_else(|| self.type_error("a pair"))
    }

    pub fn type_error(&self, expected: &'static str) -> Error {
        Error::Type {
            expected,
            found: self.to_string(),
        }
    }
}

impl<N> From<NodeId> for Value<N> {
    fn from(id: NodeId) -> Self {
        Value::NodeRef(id)
    }
}

impl<N> From<bool> for Value<N> {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

/// Structural equality over numbers, booleans, symbols, pairs and nil;
/// identity over node references. Numbers compare with [`Scalar::key_eq`].
impl<N: Scalar> PartialEq for Value<N> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Value::Num(a), Value::Num(b)) => a.key_eq(b),
            (Value::Bool(a), Value::Bool(b)) => a == b,
            (Value::Sym(a), Value::Sym(b)) => a == b,
            (Value::Nil, Value::Nil) => true,
            (Value::NodeRef(a), Value::NodeRef(b)) => a == b,
            (Value::Pair(a), Value::Pair(b)) => {
                if a.ptr_eq(b) {
                    return true;
                }
                let (a, b) = (a.0.borrow(), b.0.borrow());
                a.0 == b.0 && a.1 == b.1
            }
            _ => false,
        }
    }
}

impl<N: Scalar> Eq for Value<N> {}

/// Pairs hash by tag only. Their contents may change in place, so hashing
/// them would strand table entries whose key was later mutated.
impl<N: Scalar> Hash for Value<N> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        std::mem::discriminant(self).hash(state);
        match self {
            Value::Num(n) => n.key_hash(state),
            Value::Bool(b) => b.hash(state),
            Value::Sym(s) => s.hash(state),
            Value::NodeRef(id) => id.hash(state),
            Value::Pair(_) | Value::Nil => {}
        }
    }
}

impl<N: Scalar> fmt::Display for Value<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Num(n) => write!(f, "{}", n.clone().canonical()),
            Value::Bool(true) => f.write_str("#t"),
            Value::Bool(false) => f.write_str("#f"),
            Value::Sym(s) => f.write_str(s),
            Value::Nil => f.write_str("()"),
            Value::NodeRef(id) => write!(f, "#<node {id}>"),
            Value::Pair(p) => {
                write!(f, "({}", p.car())?;
                let mut tail = p.cdr();
                loop {
                    match tail {
                        Value::Nil => break,
                        Value::Pair(next) => {
                            write!(f, " {}", next.car())?;
                            tail = next.cdr();
                        }
                        other => {
                            write!(f, " . {other}")?;
                            break;
                        }
                    }
                }
                f.write_str(")")
            }
        }
    }
}

impl<N: Scalar> fmt::Debug for Value<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
