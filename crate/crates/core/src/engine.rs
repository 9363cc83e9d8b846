//! The node substrate: thunks and refs, explicit edge maintenance,
//! demand-driven computation and dirtying.
//!
//! Nothing here records dependencies automatically. A computation run by
//! [`Engine::compute`] must add its own edges with [`Engine::add_edge`];
//! [`Engine::force`](crate::Engine::force) does that bookkeeping and is
//! what higher layers use.

use std::fmt;
use std::rc::Rc;
use std::sync::atomic::{AtomicU32, Ordering};

use crate::error::{Error, Result};
use crate::{IdSet, Scalar, Value};

static NEXT_ENGINE: AtomicU32 = AtomicU32::new(0);

/// Identity of a node. Ids are never reused within an engine and carry the
/// owning engine's tag, so an id presented to the wrong engine is rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId {
    engine: u32,
    index: u32,
}

impl NodeId {
    pub fn index(self) -> usize {
        self.index as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.index)
    }
}

/// A suspended, engine-aware computation.
///
/// It must be deterministic in the refs it reads, and it must not call
/// [`Engine::ref_set`].
pub type Computation<N> = Rc<dyn Fn(&mut Engine<N>) -> Result<Value<N>>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Thunk,
    Ref,
}

struct Node<N> {
    /// `None` for refs, whose computation just reads back `result`.
    comp: Option<Computation<N>>,
    result: Option<Value<N>>,
    sub: IdSet,
    sup: IdSet,
    clean: bool,
    recomputes: u64,
    dirtied: u64,
}

impl<N> Node<N> {
    fn kind(&self) -> NodeKind {
        if self.comp.is_some() {
            NodeKind::Thunk
        } else {
            NodeKind::Ref
        }
    }
}

/// Owner of every node plus the observation context used by `force`.
pub struct Engine<N> {
    tag: u32,
    nodes: Vec<Node<N>>,
    pub(crate) adapting: Option<NodeId>,
    in_progress: IdSet,
    recomputes: u64,
    dirty_flips: u64,
}

impl<N: Scalar> Default for Engine<N> {
    fn default() -> Self {
        Self::new()
    }
}

impl<N: Scalar> fmt::Debug for Engine<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Engine")
            .field("nodes", &self.nodes.len())
            .field("adapting", &self.adapting)
            .field("recomputes", &self.recomputes)
            .finish()
    }
}

impl<N: Scalar> Engine<N> {
    pub fn new() -> Self {
        Engine {
            tag: NEXT_ENGINE.fetch_add(1, Ordering::Relaxed),
            nodes: Vec::new(),
            adapting: None,
            in_progress: IdSet::new(),
            recomputes: 0,
            dirty_flips: 0,
        }
    }

    fn push(&mut self, node: Node<N>) -> NodeId {
        let index = u32::try_from(self.nodes.len()).expect("node arena exhausted");
        self.nodes.push(node);
        NodeId {
            engine: self.tag,
            index,
        }
    }

    /// Creates a dirty thunk with no result yet and no edges.
    pub fn make_thunk<F>(&mut self, comp: F) -> NodeId
    where
        F: Fn(&mut Engine<N>) -> Result<Value<N>> + 'static,
    {
        self.make_thunk_rc(Rc::new(comp))
    }

    /// Like [`make_thunk`](Self::make_thunk), but hands the builder the id
    /// the new thunk will get, for computations that refer to themselves.
    pub fn make_thunk_with<B, F>(&mut self, build: B) -> NodeId
    where
        B: FnOnce(NodeId) -> F,
        F: Fn(&mut Engine<N>) -> Result<Value<N>> + 'static,
    {
        let next = NodeId {
            engine: self.tag,
            index: self.nodes.len() as u32,
        };
        let id = self.make_thunk(build(next));
        debug_assert_eq!(id, next);
        id
    }

    pub fn make_thunk_rc(&mut self, comp: Computation<N>) -> NodeId {
        self.push(Node {
            comp: Some(comp),
            result: None,
            sub: IdSet::new(),
            sup: IdSet::new(),
            clean: false,
            recomputes: 0,
            dirtied: 0,
        })
    }

    /// Creates a clean ref cell holding `value`.
    pub fn make_ref(&mut self, value: Value<N>) -> NodeId {
        self.push(Node {
            comp: None,
            result: Some(value),
            sub: IdSet::new(),
            sup: IdSet::new(),
            clean: true,
            recomputes: 0,
            dirtied: 0,
        })
    }

    pub(crate) fn tag(&self) -> u32 {
        self.tag
    }

    pub fn contains(&self, id: NodeId) -> bool {
        id.engine == self.tag && id.index() < self.nodes.len()
    }

    fn check(&self, id: NodeId) -> Result<()> {
        if self.contains(id) {
            Ok(())
        } else {
            Err(Error::UnknownNode(id))
        }
    }

    fn node(&self, id: NodeId) -> Result<&Node<N>> {
        self.check(id)?;
        Ok(&self.nodes[id.index()])
    }

    fn node_mut(&mut self, id: NodeId) -> &mut Node<N> {
        &mut self.nodes[id.index()]
    }

    pub fn add_edge(&mut self, sup: NodeId, sub: NodeId) -> Result<()> {
        self.check(sup)?;
        self.check(sub)?;
        self.node_mut(sup).sub.insert(sub);
        self.node_mut(sub).sup.insert(sup);
        Ok(())
    }

    pub fn del_edge(&mut self, sup: NodeId, sub: NodeId) -> Result<()> {
        self.check(sup)?;
        self.check(sub)?;
        self.node_mut(sup).sub.remove(sub);
        self.node_mut(sub).sup.remove(sup);
        Ok(())
    }

    /// Returns the node's value, running its computation if it is dirty.
    ///
    /// A dirty node first drops all of its sub edges, is marked clean, and
    /// then runs; if it was dirtied again while running, it runs again.
    /// If the computation fails the node is left dirty and the error is
    /// returned without caching anything.
    pub fn compute(&mut self, id: NodeId) -> Result<Value<N>> {
        self.check(id)?;
        loop {
            if self.in_progress.contains(id) {
                return Err(Error::Cycle(id));
            }
            let node = &self.nodes[id.index()];
            if node.clean {
                return Ok(node
                    .result
                    .clone()
                    .expect("clean node always holds a result"));
            }

            for sub in self.node_mut(id).sub.take().iter() {
                self.node_mut(sub).sup.remove(id);
            }
            self.node_mut(id).clean = true;

            let Some(comp) = self.nodes[id.index()].comp.clone() else {
                // A ref heals by reading back its own slot.
                continue;
            };
            self.recomputes += 1;
            self.node_mut(id).recomputes += 1;
            self.in_progress.insert(id);
            let outcome = comp(self);
            self.in_progress.remove(id);
            match outcome {
                Ok(value) => self.node_mut(id).result = Some(value),
                Err(err) => {
                    self.node_mut(id).clean = false;
                    return Err(err);
                }
            }
        }
    }

    /// Marks `id` and every clean node above it dirty. Traversal stops at
    /// nodes that are already dirty, so one wave flips each bit at most once.
    pub fn dirty(&mut self, id: NodeId) -> Result<()> {
        self.check(id)?;
        let mut stack = vec![id];
        while let Some(next) = stack.pop() {
            let node = self.node_mut(next);
            if node.clean {
                node.clean = false;
                node.dirtied += 1;
                stack.extend(node.sup.iter());
                self.dirty_flips += 1;
            }
        }
        Ok(())
    }

    /// Stores `value` in a ref and dirties everything that observed it.
    /// This is the only mutation the engine offers.
    pub fn ref_set(&mut self, id: NodeId, value: Value<N>) -> Result<()> {
        let node = self.node(id)?;
        if node.kind() != NodeKind::Ref {
            return Err(Error::NotARef(id));
        }
        if !self.in_progress.is_empty() {
            return Err(Error::SetDuringComputation(id));
        }
        self.node_mut(id).result = Some(value);
        self.dirty(id)
    }

    pub fn kind(&self, id: NodeId) -> Result<NodeKind> {
        Ok(self.node(id)?.kind())
    }

    pub fn is_clean(&self, id: NodeId) -> Result<bool> {
        Ok(self.node(id)?.clean)
    }

    /// The cached result, if the node is clean. Never runs anything.
    pub fn peek(&self, id: NodeId) -> Result<Option<Value<N>>> {
        let node = self.node(id)?;
        Ok(if node.clean {
            node.result.clone()
        } else {
            None
        })
    }

    pub fn subs(&self, id: NodeId) -> Result<&IdSet> {
        Ok(&self.node(id)?.sub)
    }

    pub fn supers(&self, id: NodeId) -> Result<&IdSet> {
        Ok(&self.node(id)?.sup)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len() as u32).map(|index| NodeId {
            engine: self.tag,
            index,
        })
    }

    /// The node currently being observed by `force`, if any.
    pub fn adapting(&self) -> Option<NodeId> {
        self.adapting
    }

    /// Whether some computation is running right now.
    pub fn is_computing(&self) -> bool {
        !self.in_progress.is_empty()
    }

    /// Total thunk-body executions over the engine's lifetime.
    pub fn recompute_count(&self) -> u64 {
        self.recomputes
    }

    pub fn node_recomputes(&self, id: NodeId) -> Result<u64> {
        Ok(self.node(id)?.recomputes)
    }

    /// Total clean-to-dirty transitions over the engine's lifetime.
    pub fn dirty_flips(&self) -> u64 {
        self.dirty_flips
    }

    pub fn node_dirtied(&self, id: NodeId) -> Result<u64> {
        Ok(self.node(id)?.dirtied)
    }
}
