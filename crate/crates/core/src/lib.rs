//! Exact induced forests, induced linear forests and induced paths in small
//! graphs, together with the greedy linear-forest partition for regular
//! graphs, closed-form bounds, extremal constructions and the batch
//! surveys built on them.
//!
//! Graphs have at most 128 vertices and store each adjacency row as a
//! single `u128`. Bound values are exact rationals; the bound functions are
//! generic over the integer type and [`Rational`] (big integers) is the
//! default everywhere else.

pub mod bounds;
pub mod cubic;
pub mod enumerate;
pub mod extremal;
pub mod graph;
pub mod greedy;
pub mod io;
pub mod scalar;
pub mod solve;
pub mod survey;
pub mod vertex_set;

pub use graph::{Graph, GraphError, GraphFamily, Shape};
pub use scalar::ExactInt;
pub use solve::{SearchBudget, SolveError, SolveResult};
pub use vertex_set::{VertexSet, MAX_ORDER};

/// Exact rational over arbitrary-precision integers.
pub type Rational = num_rational::Ratio<num_bigint::BigInt>;

/// Exact rational over `i64`, for callers that know their values are small.
pub type Rational64 = num_rational::Ratio<i64>;
