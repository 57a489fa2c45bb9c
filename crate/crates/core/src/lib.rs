//! Finite-dimensional Fredholm modules over categories with finitely many
//! simple objects, their Chern characters in cyclic cohomology, and numerical
//! certificates for the cocycle, periodicity and homotopy properties.

pub mod algebra;
pub mod category;
pub mod cli;
pub mod cyclic;
pub mod error;
pub mod fixtures;
pub mod fredholm;
pub mod homotopy;
pub mod linalg;
pub mod omega;
pub mod par;
pub mod scenario;

pub use algebra::{AlgebraElement, FiniteAlgebra};
pub use category::{CatMorphism, CategoryContext, HilbObject};
pub use cyclic::CyclicCochain;
pub use error::{Error, Result};
pub use fredholm::{FredholmModule, GradedHilbObject, GradedOperator, Parity};
pub use linalg::{c64, ComplexMatrix, C64};
