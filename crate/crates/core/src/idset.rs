//! Identity-keyed node sets, used for the sub/super edges of every node.

use indexmap::IndexSet;

use crate::NodeId;

/// A duplicate-free set of [`NodeId`]s.
///
/// Iteration order is deterministic for a given sequence of operations,
/// which keeps dirtying and edge maintenance reproducible.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IdSet {
    members: IndexSet<NodeId>,
}

impl IdSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, id: NodeId) -> bool {
        self.members.contains(&id)
    }

    /// Adds `id`; returns `false` if it was already a member.
    pub fn insert(&mut self, id: NodeId) -> bool {
        self.members.insert(id)
    }

    /// Removes `id`; removing a non-member is a no-op returning `false`.
    pub fn remove(&mut self, id: NodeId) -> bool {
        self.members.swap_remove(&id)
    }

    pub fn union(&self, other: &IdSet) -> IdSet {
        let mut out = self.clone();
        out.members.extend(other.iter());
        out
    }

    pub fn intersection(&self, other: &IdSet) -> IdSet {
        self.iter().filter(|id| other.contains(*id)).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.members.iter().copied()
    }

    pub fn for_each(&self, f: impl FnMut(NodeId)) {
        self.iter().for_each(f)
    }

    pub fn to_vec(&self) -> Vec<NodeId> {
        self.iter().collect()
    }

    pub(crate) fn take(&mut self) -> IdSet {
        std::mem::take(self)
    }
}

impl FromIterator<NodeId> for IdSet {
    fn from_iter<I: IntoIterator<Item = NodeId>>(iter: I) -> Self {
        IdSet {
            members: iter.into_iter().collect(),
        }
    }
}

impl Extend<NodeId> for IdSet {
    fn extend<I: IntoIterator<Item = NodeId>>(&mut self, iter: I) {
        self.members.extend(iter)
    }
}

impl<'a> IntoIterator for &'a IdSet {
    type Item = NodeId;
    type IntoIter = std::iter::Copied<indexmap::set::Iter<'a, NodeId>>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Engine64;
    use crate::Value;

    fn ids(n: usize) -> Vec<NodeId> {
        let mut engine = Engine64::new();
        (0..n).map(|_| engine.make_ref(Value::Nil)).collect()
    }

    #[test]
    fn empty_has_no_members() {
        let a = ids(1)[0];
        assert!(!IdSet::new().contains(a));
        assert!(IdSet::new().is_empty());
    }

    #[test]
    fn insert_is_idempotent() {
        let a = ids(1)[0];
        let mut s = IdSet::new();
        assert!(s.insert(a));
        assert!(!s.insert(a));
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn remove_non_member_is_noop() {
        let v = ids(2);
        let mut s: IdSet = [v[0]].into_iter().collect();
        assert!(!s.remove(v[1]));
        assert_eq!(s.to_vec(), vec![v[0]]);
    }

    #[test]
    fn intersect_and_union() {
        let v = ids(3);
        let ab: IdSet = [v[0], v[1]].into_iter().collect();
        let bc: IdSet = [v[1], v[2]].into_iter().collect();
        assert_eq!(ab.intersection(&bc).to_vec(), vec![v[1]]);
        let u = ab.union(&bc);
        assert_eq!(u.len(), 3);
        let mut seen = Vec::new();
        u.for_each(|id| seen.push(id));
        assert_eq!(seen, vec![v[0], v[1], v[2]]);
    }
}
