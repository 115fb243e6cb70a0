//! Representations of bound quivers, finite-dimensional algebras, and the
//! homological algebra needed downstream (Hom, Ext, syzygies, summands).

pub mod algebra;
pub mod decompose;
pub mod path_algebra;
pub mod representation;

pub use algebra::{is_local, isomorphic_indecomposables, multiplicity, ExtResult, FiniteAlgebra, Module, Presentation};
pub use decompose::{decompose, Decomposition};
pub use path_algebra::{build_algebra, PathAlgebraTable};
pub use representation::{hom_space_quiver, LoewyDiagram, Morphism, Representation};
