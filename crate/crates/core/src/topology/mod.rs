//! Finite simplicial models and the group-action instances built on them.

pub mod instances;
pub mod simplicial;

pub use instances::{
    build_sequence, build_table_sequence, catalog, find_instance, gysin_transfer, verify_instance,
    verify_tables, ActionClass, ActionInstance, Group, ModelDims, SequenceKind, TableInstance,
};
pub use simplicial::{
    anti_invariants, betti_numbers, pullback, relative_pair, simplicial_cochain_complex,
    SimplicialComplex, SimplicialInvolution,
};
