//! Fat graphs, their canonical forms and the bigraded graph complex.

mod canonical;
mod complex;
mod enumerate;
mod fatgraph;
mod local;

pub use canonical::{automorphism_generators, canonical, Canonical};
pub use complex::{DiagonalHomology, GraphComplex, TotalHomology};
pub use enumerate::{classes_by_edges, enumerate, select, Enumeration, GraphOptions};
pub use fatgraph::{Color, FatGraph, GraphExchange};
pub use local::{local_system, LocalSystem};
