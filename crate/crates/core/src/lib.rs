//! Exact computations on simplicial topological fans: the ring R, fan
//! validation and equivalence, chart combinatorics, cohomological
//! invariants, and integer-labeling realizability searches.

#![allow(clippy::needless_range_loop)]

pub mod charts;
pub mod complex;
pub mod cone;
pub mod equivalence;
pub mod fan;
pub mod fixtures;
pub mod invariants;
pub mod io;
pub mod linalg;
pub mod random;
pub mod rational;
pub mod realize;
pub mod ring;

pub use complex::{ComplexError, FVector, SimplicialComplex};
pub use fan::{FanError, Ray, TopologicalFan};
pub use rational::Rat;
pub use ring::{pairing, DualBasis, RElem, RVec, RingError};
