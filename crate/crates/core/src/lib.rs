//! Exact computation of first cohomology H^1(G, V) for finite matrix groups
//! G <= GL_n(q) acting on V = F_q^k, with certified reduction steps.

pub mod catalog;
pub mod cohomology;
pub mod corpus;
pub mod gf;
pub mod gmodule;
pub mod group;
pub mod linalg;

pub use cohomology::{
    h1_full_table, h1_presentation, h1_with_reductions, inflation_restriction_dims, tensor_split, CohomologyError,
    H1Dims, H1Report, Reduction, Solver,
};
pub use gf::{field_new, Element, Felt, FieldCtx, FieldSpec, GfError};
pub use gmodule::{induced_module, tensor_module, twisted_tensor_module, GModule, ModuleError, Provenance};
pub use group::{elaborate, is_normal, is_subgroup, intersect, GroupError, GroupSpec, MatrixGroup};
pub use linalg::{LinalgError, MatrixFq, Subspace};
