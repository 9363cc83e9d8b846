//! Observation with automatic dependency recording.

use crate::error::{Error, Result};
use crate::{Engine, IdSet, NodeId, Scalar, Value};

impl<N: Scalar> Engine<N> {
    /// Computes `id` while recording it as a subcomputation of whichever
    /// node is currently being forced.
    ///
    /// The observation context is restored before returning, also when the
    /// computation fails. The dependency edge is recorded on failure as
    /// well: the enclosing computation did demand `id`, and if it recovers
    /// from the error its result still depends on `id`.
    pub fn force(&mut self, id: NodeId) -> Result<Value<N>> {
        if !self.contains(id) {
            return Err(Error::UnknownNode(id));
        }
        let prev = self.adapting.replace(id);
        let result = self.compute(id);
        self.adapting = prev;
        if let Some(sup) = prev {
            self.add_edge(sup, id)?;
        }
        result
    }

    /// Suspends an expression as a fresh thunk.
    pub fn suspend<F>(&mut self, comp: F) -> NodeId
    where
        F: Fn(&mut Engine<N>) -> Result<Value<N>> + 'static,
    {
        self.make_thunk(comp)
    }

    /// Deep copy of `value` with every node reference replaced by the
    /// (recursively stripped) value it forces to.
    ///
    /// A node whose value leads back to itself is reported as a cycle.
    /// Cyclic pair structure is not detected.
    pub fn remove_adapton(&mut self, value: &Value<N>) -> Result<Value<N>> {
        let mut path = IdSet::new();
        self.strip(value, &mut path)
    }

    fn strip(&mut self, value: &Value<N>, path: &mut IdSet) -> Result<Value<N>> {
        match value {
            Value::Pair(p) => {
                let car = self.strip(&p.car(), path)?;
                let cdr = self.strip(&p.cdr(), path)?;
                Ok(Value::cons(car, cdr))
            }
            Value::NodeRef(id) => {
                if !path.insert(*id) {
                    return Err(Error::Cycle(*id));
                }
                let forced = self.force(*id)?;
                let out = self.strip(&forced, path);
                path.remove(*id);
                out
            }
            other => Ok(other.clone()),
        }
    }
}
