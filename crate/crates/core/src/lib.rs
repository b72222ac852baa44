//! Sum-distinguishing vertex labelings of hypergraphs.
//!
//! A labeling `f: V -> {1, 2, ...}` is distinguishing when every hyperedge
//! gets its own label sum. The crate computes the smallest possible maximum
//! label exactly on small instances, builds labelings with randomized
//! (verify-and-retry) and deterministic constructions, generates random
//! instances, and evaluates the exact uniform-sum distributions the
//! randomized bounds rest on.

mod clock;
pub mod construct;
pub mod error;
pub mod exact;
pub mod format;
pub mod genx;
pub mod hypercore;
pub mod prob;
pub mod randlabel;

pub use error::{Error, Result};
pub use hypercore::{Graph, Hypergraph, Labeling};
