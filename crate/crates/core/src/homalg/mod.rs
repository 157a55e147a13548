//! Finitely presented graded modules, bounded complexes, Hom and tensor, homology.

pub mod complex;
pub mod module;
pub mod strand;

pub use complex::{
    boundary_basis, free_resolution, hom_complex, hom_map, identity_map, tensor, tensor_complex, tensor_map, ChainComplex, ChainMap,
    Homology,
};
pub use module::{column_degree, ColumnDegree, FPModule, FreeModule, Matrix, ModuleMap};
