//! Memoization: plain function caching, and engine-aware caching that
//! hands out shared thunks.
//!
//! Plain [`Memo`] is unsound when its arguments change behind its back;
//! [`AMemo`] pairs every cached call with a thunk in an [`Engine`], so
//! mutations made through refs reach the cached result.

use std::cell::{Cell, RefCell};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::rc::Rc;

use indexmap::IndexMap;

use crate::error::{Error, Result};
use crate::{Engine, NodeId, Scalar, Value};

/// The arguments of one call, compared structurally (node references by
/// identity).
#[derive(Clone)]
pub struct ArgKey<N>(Vec<Value<N>>);

impl<N: Scalar> ArgKey<N> {
    pub fn new(args: &[Value<N>]) -> Self {
        ArgKey(args.to_vec())
    }

    pub fn args(&self) -> &[Value<N>] {
        &self.0
    }
}

impl<N: Scalar> PartialEq for ArgKey<N> {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl<N: Scalar> Eq for ArgKey<N> {}

impl<N: Scalar> Hash for ArgKey<N> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl<N: Scalar> fmt::Debug for ArgKey<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

/// Insertion-ordered, unbounded store from [`ArgKey`] to outputs.
/// Adding a key that is already present replaces its binding.
pub struct MemoTable<N, V> {
    entries: IndexMap<ArgKey<N>, V>,
}

impl<N: Scalar, V> Default for MemoTable<N, V> {
    fn default() -> Self {
        Self::new()
    }
}

impl<N: Scalar, V> MemoTable<N, V> {
    pub fn new() -> Self {
        MemoTable {
            entries: IndexMap::new(),
        }
    }

    pub fn add(&mut self, key: ArgKey<N>, value: V) {
        self.entries.insert(key, value);
    }

    pub fn lookup(&self, key: &ArgKey<N>) -> Option<&V> {
        self.entries.get(key)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

type MemoBody<N> = dyn Fn(&Memo<N>, &[Value<N>]) -> Result<Value<N>>;

/// A memoized function. Recursive calls go through the handle passed to
/// the body so they hit the same table.
pub struct Memo<N>(Rc<MemoInner<N>>);

struct MemoInner<N> {
    table: RefCell<MemoTable<N, Value<N>>>,
    body: Box<MemoBody<N>>,
}

impl<N> Clone for Memo<N> {
    fn clone(&self) -> Self {
        Memo(self.0.clone())
    }
}

/// Caches `body` by its arguments. Errors are returned, not cached.
pub fn memoize<N, F>(body: F) -> Memo<N>
where
    N: Scalar,
    F: Fn(&Memo<N>, &[Value<N>]) -> Result<Value<N>> + 'static,
{
    Memo(Rc::new(MemoInner {
        table: RefCell::new(MemoTable::new()),
        body: Box::new(body),
    }))
}

impl<N: Scalar> Memo<N> {
    pub fn call(&self, args: &[Value<N>]) -> Result<Value<N>> {
        let key = ArgKey::new(args);
        if let Some(hit) = self.0.table.borrow().lookup(&key) {
            return Ok(hit.clone());
        }
        let value = (self.0.body)(self, args)?;
        self.0.table.borrow_mut().add(key, value.clone());
        Ok(value)
    }

    pub fn len(&self) -> usize {
        self.0.table.borrow().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

type AMemoBody<N> = dyn Fn(&mut Engine<N>, &AMemo<N>, &[Value<N>]) -> Result<Value<N>>;

/// A memoized function whose calls are thunks in an engine.
///
/// Equal arguments always map to the same thunk, so repeated or
/// re-demanded calls share one node and its cached result. A table is
/// bound to the first engine it is used with.
pub struct AMemo<N>(Rc<AMemoInner<N>>);

struct AMemoInner<N> {
    table: RefCell<MemoTable<N, NodeId>>,
    body: Box<AMemoBody<N>>,
    owner: Cell<Option<u32>>,
}

impl<N> Clone for AMemo<N> {
    fn clone(&self) -> Self {
        AMemo(self.0.clone())
    }
}

pub fn amemo<N, F>(body: F) -> AMemo<N>
where
    N: Scalar,
    F: Fn(&mut Engine<N>, &AMemo<N>, &[Value<N>]) -> Result<Value<N>> + 'static,
{
    AMemo(Rc::new(AMemoInner {
        table: RefCell::new(MemoTable::new()),
        body: Box::new(body),
        owner: Cell::new(None),
    }))
}

impl<N: Scalar> AMemo<N> {
    /// The shared thunk for `args`, created unforced on first request.
    pub fn thunk(&self, engine: &mut Engine<N>, args: &[Value<N>]) -> Result<NodeId> {
        match self.0.owner.get() {
            None => self.0.owner.set(Some(engine.tag())),
            Some(tag) if tag != engine.tag() => return Err(Error::EngineMismatch),
            Some(_) => {}
        }
        let key = ArgKey::new(args);
        if let Some(&id) = self.0.table.borrow().lookup(&key) {
            return Ok(id);
        }
        let me = self.clone();
        let owned: Rc<[Value<N>]> = args.into();
        let id = engine.suspend(move |e| (me.0.body)(e, &me, &owned));
        self.0.table.borrow_mut().add(key, id);
        Ok(id)
    }

    /// Forces the shared thunk for `args`.
    pub fn call(&self, engine: &mut Engine<N>, args: &[Value<N>]) -> Result<Value<N>> {
        let id = self.thunk(engine, args)?;
        engine.force(id)
    }

    pub fn len(&self) -> usize {
        self.0.table.borrow().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
