#![allow(dead_code)]

use miniadapton::{amemo, memoize, AMemo, Engine, Memo, Result, Value};

pub type V = Value<i64>;

pub fn num(n: i64) -> V {
    Value::Num(n)
}

pub fn path(steps: &[&str]) -> V {
    Value::list(steps.iter().map(|s| V::sym(s)))
}

/// Largest leaf and the path to it, via engine-aware memoization. Node
/// references in the tree are forced on the way down.
pub struct TreeFns {
    pub max_tree: AMemo<i64>,
    pub max_tree_path: AMemo<i64>,
}

pub fn tree_fns() -> TreeFns {
    let max_tree = amemo(
        |e: &mut Engine<i64>, me: &AMemo<i64>, args: &[V]| match &args[0] {
            Value::NodeRef(id) => {
                let inner = e.force(*id)?;
                me.call(e, &[inner])
            }
            Value::Pair(p) => {
                let l = me.call(e, &[p.car()])?.as_num()?;
                let r = me.call(e, &[p.cdr()])?.as_num()?;
                Ok(num(l.max(r)))
            }
            leaf => Ok(leaf.clone()),
        },
    );
    let mt = max_tree.clone();
    let max_tree_path = amemo(
        move |e: &mut Engine<i64>, me: &AMemo<i64>, args: &[V]| match &args[0] {
            Value::NodeRef(id) => {
                let inner = e.force(*id)?;
                me.call(e, &[inner])
            }
            Value::Pair(p) => {
                let l = mt.call(e, &[p.car()])?.as_num()?;
                let r = mt.call(e, &[p.cdr()])?.as_num()?;
                if l > r {
                    Ok(V::cons(V::sym("left"), me.call(e, &[p.car()])?))
                } else {
                    Ok(V::cons(V::sym("right"), me.call(e, &[p.cdr()])?))
                }
            }
            _ => Ok(Value::Nil),
        },
    );
    TreeFns {
        max_tree,
        max_tree_path,
    }
}

impl TreeFns {
    pub fn max(&self, e: &mut Engine<i64>, t: V) -> Result<V> {
        self.max_tree.call(e, &[t])
    }

    pub fn path(&self, e: &mut Engine<i64>, t: V) -> Result<V> {
        self.max_tree_path.call(e, &[t])
    }
}

/// The same two functions with plain memoization.
pub struct PlainTreeFns {
    pub max_tree: Memo<i64>,
    pub max_tree_path: Memo<i64>,
}

pub fn plain_tree_fns() -> PlainTreeFns {
    let max_tree = memoize(|me: &Memo<i64>, args: &[V]| match &args[0] {
        Value::Pair(p) => {
            let l = me.call(&[p.car()])?.as_num()?;
            let r = me.call(&[p.cdr()])?.as_num()?;
            Ok(num(l.max(r)))
        }
        leaf => Ok(leaf.clone()),
    });
    let mt = max_tree.clone();
    let max_tree_path = memoize(move |me: &Memo<i64>, args: &[V]| match &args[0] {
        Value::Pair(p) => {
            let l = mt.call(&[p.car()])?.as_num()?;
            let r = mt.call(&[p.cdr()])?.as_num()?;
            if l > r {
                Ok(V::cons(V::sym("left"), me.call(&[p.car()])?))
            } else {
                Ok(V::cons(V::sym("right"), me.call(&[p.cdr()])?))
            }
        }
        _ => Ok(Value::Nil),
    });
    PlainTreeFns {
        max_tree,
        max_tree_path,
    }
}

/// Direct recursive maximum, no caching.
pub fn tree_max_oracle(t: &V) -> i64 {
    match t {
        Value::Pair(p) => tree_max_oracle(&p.car()).max(tree_max_oracle(&p.cdr())),
        Value::Num(n) => *n,
        other => panic!("not a number tree: {other}"),
    }
}

pub fn tree_path_oracle(t: &V) -> V {
    match t {
        Value::Pair(p) => {
            let (l, r) = (p.car(), p.cdr());
            if tree_max_oracle(&l) > tree_max_oracle(&r) {
                V::cons(V::sym("left"), tree_path_oracle(&l))
            } else {
                V::cons(V::sym("right"), tree_path_oracle(&r))
            }
        }
        _ => Value::Nil,
    }
}

pub const SPREADSHEET_SCRIPT: &str = include_str!("../data/spreadsheet.sheet");
pub const SPREADSHEET_EXPECTED: &str = include_str!("../data/spreadsheet.expected");
