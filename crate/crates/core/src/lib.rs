//! Exact-arithmetic engine for cyclic-word Lie bialgebras, their
//! Poisson/BV exterior algebras, master equations, stringy categories and
//! the fat-graph bicomplex.

pub mod algebras;
pub mod bv;
pub mod cyclic_oracle;
pub mod error;
pub mod graph;
pub mod graded;
pub mod lincomb;
pub mod linalg;
pub mod master;
pub mod necklace;
pub mod random;
pub mod report;
pub mod scalar;
pub mod stringy;
pub mod suites;
pub mod wedge;

pub use error::{Error, Result};
pub use lincomb::LinComb;
pub use linalg::SparseExactMatrix;
pub use scalar::Q;
pub use graded::{AInfinityStructure, FrobeniusAlgebra, GradedSpace, InnerProduct};
pub use necklace::{CyclicWord, NecklaceElement, NecklaceSpace};
pub use report::{Report, Status};
pub use wedge::{LieBialgebra, NecklaceBialgebra, Series, TabularBialgebra, WedgeAlgebra, WedgeElement};
