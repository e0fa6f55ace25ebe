//! Recursion operators, operator words and the span they generate from `U`.

mod basis;
mod counting;
mod recursion;
mod relation;
mod words;

pub use basis::{
    basis, in_span, independent_count, rank_mod_p, rank_of, BasisEntry, IndependentCount,
};
pub use counting::{
    binomial, dependency_total, deps_cross_order, deps_same_order, formula_n, rank_by_subtraction,
    words_of_length,
};
pub use recursion::{apply_recursion, RecursionOperator};
pub use relation::{
    load_fixture, shipped_fixture, verify_fixture, verify_relation, FixtureEntry, FixtureVerdict,
    RelationVerdict, WordCombination, WordRelation, SHIPPED_RELATIONS,
};
pub use words::{apply_word, characteristics, enumerate_words, OperatorWord, WordMode};
