//! A small incremental-computation engine.
//!
//! Computations are nodes in a *demanded computation graph*: thunks cache
//! their results and remember which nodes they demanded, refs are the
//! mutable leaves. Setting a ref lazily dirties everything above it, and
//! the next demand reruns only dirty nodes, so every forced result equals
//! what a cache-free evaluation would produce.
//!
//! The layers, bottom up:
//!
//! - [`Engine`]: nodes, explicit edges, [`compute`](Engine::compute),
//!   [`dirty`](Engine::dirty) and [`ref_set`](Engine::ref_set).
//! - [`Engine::force`], [`Engine::suspend`]: observation that records
//!   edges automatically.
//! - [`memo`]: plain memoization and [`AMemo`], which shares one thunk per
//!   distinct argument list.
//! - [`AVar`]: refs holding expressions instead of values.
//! - [`sheet`]: an incremental spreadsheet and its REPL.
//! - [`oracle`]: from-scratch evaluation used to check all of the above.
//!
//! Everything is generic over the number type through [`Scalar`].
//!
//! ```
//! use miniadapton::{Engine64, Value};
//!
//! let mut engine = Engine64::new();
//! let r = engine.make_ref(Value::Num(5.0));
//! let a = engine.suspend(move |e| Ok(Value::Num(e.force(r)?.as_num()? + 3.0)));
//! assert_eq!(engine.force(a)?, Value::Num(8.0));
//! engine.ref_set(r, Value::Num(2.0))?;
//! assert_eq!(engine.force(a)?, Value::Num(5.0));
//! # Ok::<(), miniadapton::Error>(())
//! ```

mod avar;
mod engine;
mod error;
mod idset;
pub mod memo;
mod observe;
pub mod oracle;
mod scalar;
pub mod sheet;
mod value;

pub use avar::AVar;
pub use engine::{Computation, Engine, NodeId, NodeKind};
pub use error::{Error, Result};
pub use idset::IdSet;
pub use memo::{amemo, memoize, AMemo, ArgKey, Memo, MemoTable};
pub use scalar::Scalar;
pub use value::{Pair, Value};

use num_rational::BigRational;

pub type Engine64 = Engine<f64>;
pub type Engine32 = Engine<f32>;
pub type EngineInt = Engine<i64>;
pub type ExactEngine = Engine<BigRational>;

pub type Value64 = Value<f64>;
pub type ExactValue = Value<BigRational>;

pub type Sheet64 = sheet::Sheet<f64>;
pub type ExactSheet = sheet::Sheet<BigRational>;
