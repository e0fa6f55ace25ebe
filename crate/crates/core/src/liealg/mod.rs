//! Point symmetries of the heat equation: generators, brackets, prolongation.

mod field;
mod prolong;
mod table;

pub use field::{
    check_free_symmetry, commutator, free_generator, generator, generators, printed_x5,
    PointVectorField,
};
pub use prolong::{
    act, evolutionary_characteristic, prolong, symmetry_defect, Affine, Prolongation,
};
pub use table::{
    expand, printed_bracket, printed_table, verify_table, verify_table_with, CommutatorTableEntry,
    Expansion, TableReport,
};
