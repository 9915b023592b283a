//! Defensive domination on finite simple graphs.
//!
//! A defense (a multiset of vertices) counters an attack (a set of vertices)
//! when every attacked vertex can be matched to a distinct defender placed on
//! it or on a neighbor. This crate provides:
//!
//! * [`graph`]: graphs, vertex sets and multisets, clique search, generators
//!   and the line-based file formats;
//! * [`matching`]: bipartite maximum matching and the matching form of
//!   "counters";
//! * [`defense`]: Hall-deficiency checks and violating-attack search;
//! * [`solvers`]: exact brute-force minimum defenses;
//! * [`interval`]: interval representations and the greedy multiset defense,
//!   generic over the endpoint scalar;
//! * [`reductions`]: the clique-node-deletion and two-level 3-CNF hardness
//!   constructions together with their certificate transformers.

pub mod defense;
pub mod error;
pub mod graph;
pub mod interval;
pub mod matching;
pub mod reductions;
pub mod solvers;

pub use defense::{find_violator, good_defense, hall_deficiency, hall_set, Strategy, Violator};
pub use error::{Error, Result};
pub use graph::{Graph, GraphBuilder, Vertex, VertexMultiset, VertexSet};
pub use interval::{Interval, IntervalInstance, Rational};
pub use matching::{counters, BipartiteInstance, Matching};
pub use solvers::SolveResult;

/// Interval instances with exact rational endpoints.
pub type RationalIntervals = IntervalInstance<Rational>;
/// Interval instances with integer endpoints.
pub type IntegerIntervals = IntervalInstance<i64>;
