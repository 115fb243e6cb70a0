//! Mesh algebras of Dynkin type, their γ-equivariant cluster tilting
//! modules, and the folded exchange-matrix combinatorics.

pub mod algebra_engine;
pub mod dynkin_core;
pub mod error;
pub mod field;
pub mod linalg;
pub mod matrix_mutation;
pub mod mesh_calculus;
pub mod par;
pub mod poly;
pub mod quiver;
pub mod tilting_lab;
pub mod translation_quiver;

pub use error::{MeshError, Result};
pub use field::{Field, Fp, Q};
